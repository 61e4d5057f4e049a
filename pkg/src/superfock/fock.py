"""Finite-dimensional antisymmetric Fock space over d modes.

The Fock space over a d-dimensional one-particle space H has the 2**d basis
tensors e_A = e_{a1} ^ ... ^ e_{an}, A = {a1 < ... < an} a subset of mode
indices.  A ``FockVector`` stores the amplitude of every e_A, indexed by
bitmask.  Operators on the Fock space are plain dense (2**d, 2**d) complex
matrices acting on amplitude vectors.

Conventions fixed here and used throughout the package:

* the one-particle involution is componentwise conjugation, e_k* = e_k;
* consequently star(e_A) = (-1)^(|A|(|A|-1)/2) e_A (product-order reversal)
  and the bilinear pairing <<F, G>> = (star(F) | G) is symmetric;
* basis subsets are enumerated by increasing bitmask value.
"""

from __future__ import annotations

import numpy as np

from ._tables import (
    antisymmetric_product,
    mask_indices,
    popcounts,
    reversal_signs,
    tau,
)

__all__ = [
    "FockVector",
    "wedge",
    "star",
    "inner",
    "bilinear",
    "create",
    "annihilate",
    "delta",
    "gamma",
    "apply_operator",
    "tau",
]


class FockVector:
    """Element of the antisymmetric Fock space over ``modes`` modes.

    Amplitudes are stored densely over the subset basis; instances are
    immutable (the amplitude array is marked read-only).
    """

    __slots__ = ("modes", "amp")

    def __init__(self, modes: int, amplitudes: np.ndarray):
        if modes < 0:
            raise ValueError("mode count must be nonnegative")
        amp = np.asarray(amplitudes, dtype=complex)
        if amp.shape != (1 << modes,):
            raise ValueError(
                f"expected {1 << modes} amplitudes for {modes} modes, got {amp.shape}"
            )
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "amp", amp)

    def __setattr__(self, name, value):
        raise AttributeError("FockVector is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, modes: int) -> "FockVector":
        return cls(modes, np.zeros(1 << modes, dtype=complex))

    @classmethod
    def vacuum(cls, modes: int) -> "FockVector":
        amp = np.zeros(1 << modes, dtype=complex)
        amp[0] = 1.0
        return cls(modes, amp)

    @classmethod
    def basis(cls, modes: int, mask: int) -> "FockVector":
        """Basis tensor e_A for the subset bitmask A."""
        if not 0 <= mask < (1 << modes):
            raise ValueError(f"mask {mask} out of range for {modes} modes")
        amp = np.zeros(1 << modes, dtype=complex)
        amp[mask] = 1.0
        return cls(modes, amp)

    @classmethod
    def from_vector(cls, f: np.ndarray) -> "FockVector":
        """Embed a one-particle vector as a degree-1 tensor."""
        f = np.asarray(f, dtype=complex)
        d = f.shape[0]
        amp = np.zeros(1 << d, dtype=complex)
        amp[1 << np.arange(d)] = f
        return cls(d, amp)

    @classmethod
    def wedge_of(cls, vectors) -> "FockVector":
        """Exterior product f_1 ^ ... ^ f_n of one-particle vectors."""
        vectors = [np.asarray(v, dtype=complex) for v in vectors]
        if not vectors:
            raise ValueError("need at least one vector (use vacuum() for none)")
        d = vectors[0].shape[0]
        out = cls.vacuum(d)
        for v in vectors:
            out = wedge(out, cls.from_vector(v))
        return out

    # -- structure ---------------------------------------------------------

    def degree(self, n: int) -> "FockVector":
        """Projection onto the degree-n component."""
        keep = popcounts(self.modes) == n
        return FockVector(self.modes, np.where(keep, self.amp, 0.0))

    def degrees(self) -> np.ndarray:
        """Sorted degrees that carry nonzero amplitude."""
        p = popcounts(self.modes)
        return np.unique(p[self.amp != 0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_same(other)
        return FockVector(self.modes, self.amp + other.amp)

    def __sub__(self, other: "FockVector") -> "FockVector":
        self._check_same(other)
        return FockVector(self.modes, self.amp - other.amp)

    def __mul__(self, scalar) -> "FockVector":
        return FockVector(self.modes, self.amp * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "FockVector":
        return FockVector(self.modes, -self.amp)

    def _check_same(self, other: "FockVector") -> None:
        if not isinstance(other, FockVector):
            raise TypeError("expected a FockVector")
        if self.modes != other.modes:
            raise ValueError(f"mode counts differ: {self.modes} != {other.modes}")

    def __repr__(self) -> str:
        terms = np.count_nonzero(self.amp)
        return f"FockVector(modes={self.modes}, nonzero={terms}, norm={self.norm():.6g})"


def wedge(f: FockVector, g: FockVector) -> FockVector:
    """Exterior product; e_A ^ e_B = (-1)^tau(A,B) e_{A u B} on disjoint subsets."""
    f._check_same(g)
    return FockVector(f.modes, antisymmetric_product(f.amp, g.amp, f.modes))


def star(f: FockVector) -> FockVector:
    """Antiunitary involution with e_k* = e_k and (F ^ G)* = G* ^ F*."""
    return FockVector(f.modes, reversal_signs(f.modes) * np.conj(f.amp))


def inner(f: FockVector, g: FockVector) -> complex:
    """Hermitian inner product (F | G), antilinear in the first argument."""
    f._check_same(g)
    return complex(np.vdot(f.amp, g.amp))


def bilinear(f: FockVector, g: FockVector) -> complex:
    """Symmetric bilinear form <<F, G>> = (star(F) | G)."""
    f._check_same(g)
    return complex(np.sum(reversal_signs(f.modes) * f.amp * g.amp))


def _raising_matrix(d: int, k: int) -> np.ndarray:
    """Matrix of the elementary creation operator for mode k."""
    dim = 1 << d
    masks = np.arange(dim)
    free = (masks >> k) & 1 == 0
    cols = masks[free]
    rows = cols | (1 << k)
    signs = np.where(popcounts(d)[cols & ((1 << k) - 1)] % 2 == 0, 1.0, -1.0)
    op = np.zeros((dim, dim), dtype=complex)
    op[rows, cols] = signs
    return op


def create(f: np.ndarray) -> np.ndarray:
    """Creation operator a+(f), acting as F -> f ^ F.  Linear in f."""
    f = np.asarray(f, dtype=complex)
    d = f.shape[0]
    op = np.zeros((1 << d, 1 << d), dtype=complex)
    for k in range(d):
        if f[k] != 0:
            op += f[k] * _raising_matrix(d, k)
    return op


def annihilate(f: np.ndarray) -> np.ndarray:
    """Annihilation operator a-(f) = a+(f)^dagger.  Antilinear in f."""
    return create(f).conj().T


def delta(f: np.ndarray) -> np.ndarray:
    """Antihermitean field difference a+(f) - a-(f)."""
    cr = create(f)
    return cr - cr.conj().T


def gamma(b: np.ndarray) -> np.ndarray:
    """Multiplicative second quantization of a one-particle operator.

    Maps the vacuum to itself and f_1 ^ ... ^ f_n to (b f_1) ^ ... ^ (b f_n);
    the matrix element between e_A and e_B with |A| = |B| = p is the minor
    det b[A, B].
    """
    b = np.asarray(b, dtype=complex)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError("gamma expects a square matrix")
    d = b.shape[0]
    dim = 1 << d
    p = popcounts(d)
    op = np.zeros((dim, dim), dtype=complex)
    op[0, 0] = 1.0
    masks = np.arange(dim)
    for size in range(1, d + 1):
        sel = masks[p == size]
        idx = np.array([mask_indices(m) for m in sel])  # (n, size)
        sub = b[idx[:, None, :, None], idx[None, :, None, :]]  # (n, n, size, size)
        op[np.ix_(sel, sel)] = np.linalg.det(sub)
    return op


def apply_operator(op: np.ndarray, f: FockVector) -> FockVector:
    """Apply a dense Fock-space operator to a vector."""
    return FockVector(f.modes, op @ f.amp)
