"""Bitmask combinatorics shared by the antisymmetric algebras.

Basis tensors of an antisymmetric algebra over n generators are indexed by
subsets of {0, ..., n-1}, stored as bitmasks.  Bit k of a mask corresponds to
generator k; amplitudes are kept in arrays of length 2**n ordered by mask
value.  All sign bookkeeping reduces to the inversion count

    tau(A, B) = #{(a, b) in A x B : a > b},

which gives the reordering sign e_A ^ e_B = (-1)^tau(A,B) e_{A u B} for
disjoint masks A, B.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def tau(a: int, b: int) -> int:
    """Inversion count between the bitmasks a and b."""
    count = 0
    bits = a
    while bits:
        low = bits & -bits
        count += int(b & (low - 1)).bit_count()
        bits ^= low
    return count


@lru_cache(maxsize=None)
def popcounts(nbits: int) -> np.ndarray:
    """Array of bit counts for all masks 0 .. 2**nbits - 1."""
    masks = np.arange(1 << nbits, dtype=np.uint64)
    return np.bitwise_count(masks).astype(np.int64)


@lru_cache(maxsize=None)
def reversal_signs(nbits: int) -> np.ndarray:
    """Signs (-1)^(p(p-1)/2) per mask, p = |mask|; the order-reversal sign."""
    p = popcounts(nbits)
    return np.where((p * (p - 1) // 2) % 2 == 0, 1.0, -1.0)


@lru_cache(maxsize=None)
def factorials(n: int) -> np.ndarray:
    """[0!, 1!, ..., n!] as float64."""
    out = np.ones(n + 1)
    for k in range(1, n + 1):
        out[k] = out[k - 1] * k
    return out


@lru_cache(maxsize=None)
def wedge_table(nbits: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """COO multiplication table of the antisymmetric product.

    Returns (left, right, out, sign) index arrays of length 3**nbits: for
    every ordered pair of disjoint masks (a, b), out = a | b and
    sign = (-1)^tau(a, b).
    """
    full = (1 << nbits) - 1
    size = 3**nbits
    left = np.empty(size, dtype=np.int64)
    right = np.empty(size, dtype=np.int64)
    sign = np.empty(size, dtype=np.float64)
    pos = 0
    for a in range(1 << nbits):
        comp = full ^ a
        b = comp
        while True:
            left[pos] = a
            right[pos] = b
            sign[pos] = -1.0 if tau(a, b) & 1 else 1.0
            pos += 1
            if b == 0:
                break
            b = (b - 1) & comp
    assert pos == size
    return left, right, left | right, sign


def antisymmetric_product(f: np.ndarray, g: np.ndarray, nbits: int) -> np.ndarray:
    """Graded product of two amplitude arrays over the subset basis."""
    left, right, out, sign = wedge_table(nbits)
    result = np.zeros(1 << nbits, dtype=complex)
    np.add.at(result, out, sign * f[left] * g[right])
    return result


@lru_cache(maxsize=None)
def submask_lists(nbits: int) -> tuple[tuple[int, ...], ...]:
    """For every mask, the tuple of its submasks (ascending)."""
    result = []
    for m in range(1 << nbits):
        subs = []
        s = m
        while True:
            subs.append(s)
            if s == 0:
                break
            s = (s - 1) & m
        result.append(tuple(sorted(subs)))
    return tuple(result)


def mask_indices(mask: int) -> list[int]:
    """Ascending list of set bit positions."""
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def indices_mask(indices) -> int:
    """Bitmask from an iterable of bit positions."""
    m = 0
    for k in indices:
        m |= 1 << k
    return m
