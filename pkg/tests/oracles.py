"""Independent brute-force oracles used only by the tests.

Each oracle reaches the same quantity as the library along a different
route: Pfaffians by explicit perfect-matching sums, Gaussian exponentials by
the wedge power series, invertible-chart implementers by exponentiating a
quadratic generator, coherent amplitudes by minors of the coefficient
matrix.
"""

import numpy as np
import scipy.linalg

from superfock.fock import FockVector, create, wedge
from superfock.gaussian import omega, skew_canonical


def permutation_sign(perm) -> int:
    """Sign of a permutation given as a sequence of distinct integers."""
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def pfaffian_matchings(m: np.ndarray) -> complex:
    """Pfaffian as the signed sum over perfect matchings."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if n % 2:
        return 0.0 + 0.0j
    if n == 0:
        return 1.0 + 0.0j

    def rec(items):
        if not items:
            yield [], []
            return
        first, rest = items[0], items[1:]
        for k, second in enumerate(rest):
            for pairs, flat in rec(rest[:k] + rest[k + 1:]):
                yield [(first, second)] + pairs, [first, second] + flat

    total = 0.0 + 0.0j
    for pairs, flat in rec(list(range(n))):
        term = permutation_sign(flat)
        for i, j in pairs:
            term = term * m[i, j]
        total += term
    return total


def exp_omega_series(x: np.ndarray) -> FockVector:
    """Gaussian exponential computed purely by the wedge power series."""
    d = x.shape[0]
    om = omega(x)
    result = FockVector.vacuum(d)
    term = FockVector.vacuum(d)
    for p in range(1, d // 2 + 1):
        term = wedge(term, om) * (1.0 / p)
        result = result + term
    return result


def quadratic_generator_implementer(x: np.ndarray) -> np.ndarray:
    """Implementer of lift(X) as the matrix exponential of the quadratic
    generator -1/2 sum B_ij a+_i a+_j - 1/2 sum conj(B_ij) a-_i a-_j, with
    B the skew matrix carrying arctan of the canonical pair values of X.

    The one-parameter path exp(t B f*) passes through lift(X) at t = 1, and
    matching on the vacuum (positive overlap on both sides) fixes the phase,
    so the result must equal the column construction on the whole matrix.
    """
    d = x.shape[0]
    cf = skew_canonical(x)
    b = np.zeros((d, d), dtype=complex)
    for z, ep, em in zip(cf.z, cf.e_plus.T, cf.e_minus.T):
        b += np.arctan(z) * (np.outer(ep, em) - np.outer(em, ep))
    raising = [create(np.eye(d)[k]) for k in range(d)]
    lowering = [a.conj().T for a in raising]
    q = np.zeros((1 << d, 1 << d), dtype=complex)
    for i in range(d):
        for j in range(d):
            if b[i, j] != 0:
                q += -0.5 * b[i, j] * raising[i] @ raising[j]
                q += -0.5 * np.conj(b[i, j]) * lowering[i] @ lowering[j]
    return scipy.linalg.expm(q)


def coherent_amplitudes_batch(coeffs: np.ndarray) -> np.ndarray:
    """Coherent-vector amplitudes by minors: amp[P, K] = det C[P, K].

    ``coeffs`` has shape (N, G, d); the result (N, 2**G, 2**d).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n, g, d = coeffs.shape
    amps = np.zeros((n, 1 << g, 1 << d), dtype=complex)
    amps[:, 0, 0] = 1.0
    for pmask in range(1, 1 << g):
        rows = [i for i in range(g) if pmask >> i & 1]
        for kmask in range(1, 1 << d):
            cols = [i for i in range(d) if kmask >> i & 1]
            if len(rows) != len(cols):
                continue
            sub = coeffs[:, rows][:, :, cols]
            if len(rows) == 1:
                amps[:, pmask, kmask] = sub[:, 0, 0]
            elif len(rows) == 2:
                amps[:, pmask, kmask] = (
                    sub[:, 0, 0] * sub[:, 1, 1] - sub[:, 0, 1] * sub[:, 1, 0]
                )
            else:
                amps[:, pmask, kmask] = np.linalg.det(sub)
    return amps
