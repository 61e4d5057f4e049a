"""Unitary Fock-space implementers of orthogonal transformations.

For R(U, V) with invertible U the implementer is built column by column from
the pullback of the coherent-vector ansatz: with X = V conj(U)^-1,
Y = conj(U)^-1 conj(V) (both skew) and c_X = det(I + X^dag X)^(-1/4),

    T(R) e_M = c_X  sum_{K u L = M, disjoint}  (-1)^tau(K, L)
               Pf(Y_K) (U^{dag -1} e)_L ^ exp Omega(X),

where Pf(Y_K) vanishes for odd |K| and is 1 for K = {}.  When ker U is
nontrivial the construction splits along H = F0 + F1 = H0 + H1: a signed
particle-hole block T0 maps the kernel factor A(F0) onto A(H0) while the
invertible-chart construction handles A(F1), and

    T(R)(F0 ^ F1) = (T0 F0) ^ (T1 Gamma((-1)^n Q1) F1),  n = dim ker U.

Products of implementers reproduce the group only up to the cocycle phase
chi(R2, R1) with |chi| = 1, extracted here numerically.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._tables import antisymmetric_product, popcounts, tau
from .errors import ChartError
from .fock import FockVector, create, delta, gamma
from .gaussian import as_skew, exp_omega, pfaffian_all_subsets
from .orthogroup import (
    KernelDecomposition,
    OrthogonalTransform,
    compose,
    kernel_decomposition,
)
from .supermodule import RegularOperator, regular_from_fock

__all__ = [
    "Implementer",
    "c_norm",
    "implement_invertible",
    "T0Block",
    "t0_duality",
    "RestrictedImplementer",
    "implement_restricted",
    "implement_general",
    "intertwining_residual",
    "module_lift",
    "cocycle",
    "VacuumOrbit",
    "vacuum_orbit",
    "orbit_transform",
]


@dataclass(frozen=True)
class Implementer:
    """Unitary matrix implementing a canonical transformation.

    ``kernel_dim`` is dim ker U of the source transform; for a nonzero
    kernel, ``h0_basis`` records the deterministic basis whose ordered wedge
    fixes the phase of the particle-hole block.
    """

    matrix: np.ndarray
    transform: OrthogonalTransform
    kernel_dim: int
    h0_basis: np.ndarray | None = None

    @property
    def modes(self) -> int:
        return self.transform.d

    def unitarity_residual(self) -> float:
        dim = self.matrix.shape[0]
        return float(
            np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(dim)))
        )


def c_norm(x: np.ndarray, rtol: float = 1e-10) -> float:
    """Normalization constant det(I + X^dag X)^(-1/4); equals c_{X^dag}."""
    x = as_skew(x, rtol=rtol)
    evals = np.linalg.eigvalsh(np.eye(x.shape[0]) + x.conj().T @ x)
    return float(np.prod(evals) ** (-0.25))


def implement_invertible(
    r: OrthogonalTransform, cond_warn: float = 1e8
) -> Implementer:
    """Implementer for the invertible-U chart via the pullback columns."""
    d = r.d
    u, v = r.u, r.v
    cond = float(np.linalg.cond(u))
    if not np.isfinite(cond) or 1.0 / cond < 1e-12:
        raise ValueError("U is singular; use implement_general")
    if cond > cond_warn:
        warnings.warn(
            f"U is ill-conditioned (cond = {cond:.2e}); implementer accuracy degrades",
            stacklevel=2,
        )
    rtol = max(1e-10, 64 * np.finfo(float).eps * cond)
    u_inv = np.linalg.inv(u)
    x = as_skew(v @ np.conj(u_inv), rtol=rtol)
    y = as_skew(np.conj(u_inv) @ np.conj(v), rtol=rtol)
    a = u_inv.conj().T  # U^{dag -1}
    cx = c_norm(x, rtol=rtol)

    pf_y = pfaffian_all_subsets(y)
    gauss = exp_omega(x, rtol=rtol).amp

    # wedge chains of the transformed basis columns, then times the Gaussian
    dim = 1 << d
    chains = np.empty((dim, dim), dtype=complex)
    chains[0] = FockVector.vacuum(d).amp
    raising = [create(a[:, k]) for k in range(d)]
    for mask in range(1, dim):
        low = (mask & -mask).bit_length() - 1
        chains[mask] = raising[low] @ chains[mask ^ (1 << low)]
    columns = np.empty((dim, dim), dtype=complex)
    for mask in range(dim):
        columns[mask] = antisymmetric_product(chains[mask], gauss, d)

    even = popcounts(d) % 2 == 0
    t = np.zeros((dim, dim), dtype=complex)
    for m in range(dim):
        col = np.zeros(dim, dtype=complex)
        k = m
        while True:
            if even[k]:
                l = m ^ k
                sign = -1.0 if tau(k, l) & 1 else 1.0
                col += sign * pf_y[k] * columns[l]
            if k == 0:
                break
            k = (k - 1) & m
        t[:, m] = cx * col
    return Implementer(matrix=t, transform=r, kernel_dim=0)


@dataclass(frozen=True)
class T0Block:
    """Signed particle-hole block between the kernel factors.

    Maps the ordered wedges f_K of the ker-U basis onto complementary wedges
    of the ker-U^dag basis: f_K -> (-1)^tau(K, M) e_{M \\ K} with M the full
    kernel index set.  ``matrix`` is the Fock-space materialization, zero on
    the orthogonal complement of A(F0); the image of the kernel vacuum is
    the ordered wedge of ``e_basis`` (the phase convention).
    """

    e_basis: np.ndarray   # (d, n) basis of ker U^dag
    f_basis: np.ndarray   # (d, n) basis of ker U, f_m = -J^T e_m*
    block: np.ndarray     # (2^n, 2^n) signed complement permutation
    matrix: np.ndarray    # (2^d, 2^d)


def t0_duality(j: np.ndarray, e_basis: np.ndarray, tol: float = 1e-9) -> T0Block:
    """Particle-hole duality block from the isometry J: F0* -> H0.

    Preconditions J J^dag = P0 (projector onto the span of ``e_basis``) and
    J^dag J = conj(Q0) are verified.  The induced ker-U basis is
    f_m = -J^T e_m*; the block then acts by signed complementation and its
    parity behavior flips exactly when n is odd.
    """
    j = np.asarray(j, dtype=complex)
    e_basis = np.asarray(e_basis, dtype=complex)
    d, n = e_basis.shape
    p0 = e_basis @ e_basis.conj().T
    if np.max(np.abs(j @ j.conj().T - p0)) > tol:
        raise ValueError("J J^dag does not match the projector onto the e-basis span")
    f_basis = -(j.T @ np.conj(e_basis))
    q0 = f_basis @ f_basis.conj().T
    if np.max(np.abs(j.conj().T @ j - np.conj(q0))) > tol:
        raise ValueError("J^dag J does not match conj(Q0)")

    full = (1 << n) - 1
    block = np.zeros((1 << n, 1 << n), dtype=complex)
    in_cols = np.empty((1 << d, 1 << n), dtype=complex)
    out_cols = np.empty((1 << d, 1 << n), dtype=complex)
    f_vecs = [FockVector.from_vector(f_basis[:, m]) for m in range(n)]
    e_vecs = [FockVector.from_vector(e_basis[:, m]) for m in range(n)]
    for mask in range(1 << n):
        comp = full ^ mask
        # tau(K, M) over the full set M reduces to the sum of bit positions
        sign = -1.0 if (sum(i for i in range(n) if mask >> i & 1) % 2) else 1.0
        block[comp, mask] = sign
        in_vec = FockVector.vacuum(d)
        for m in range(n):
            if mask >> m & 1:
                in_vec = _wedge_right(in_vec, f_vecs[m])
        out_vec = FockVector.vacuum(d)
        for m in range(n):
            if comp >> m & 1:
                out_vec = _wedge_right(out_vec, e_vecs[m])
        in_cols[:, mask] = in_vec.amp
        out_cols[:, mask] = sign * out_vec.amp
    matrix = out_cols @ in_cols.conj().T
    return T0Block(e_basis=e_basis, f_basis=f_basis, block=block, matrix=matrix)


def _wedge_right(acc: FockVector, vec: FockVector) -> FockVector:
    from .fock import wedge

    return wedge(acc, vec)


@dataclass(frozen=True)
class RestrictedImplementer:
    """Isometry A(F1) -> A(H1) for the invertible part of a singular R.

    ``extended`` is the full implementer of R(U + U0, P1 V) with U0 the
    partial isometry F0 -> H0 built from the kernel bases; ``matrix``
    restricts it to A(F1) (zero on the complement).
    """

    matrix: np.ndarray
    extended: Implementer
    u0: np.ndarray
    f1_projector: np.ndarray  # Gamma(Q1), the projector onto A(F1)


def implement_restricted(r: OrthogonalTransform) -> RestrictedImplementer:
    """Isometric implementer of the invertible block R(U, P1 V)."""
    kd = r.kernel
    t0 = t0_duality(kd.p0 @ r.v, kd.h0)
    u0 = kd.h0 @ t0.f_basis.conj().T
    r_ext = OrthogonalTransform(r.u + u0, kd.p1 @ r.v)
    ext = implement_invertible(r_ext)
    gamma_q1 = gamma(kd.q1)
    return RestrictedImplementer(
        matrix=ext.matrix @ gamma_q1,
        extended=ext,
        u0=u0,
        f1_projector=gamma_q1,
    )


def implement_general(r: OrthogonalTransform) -> Implementer:
    """Implementer for arbitrary valid R, dispatching on dim ker U."""
    kd = r.kernel
    if kd.n == 0:
        return implement_invertible(r)
    return _implement_singular(r, kd)


def _implement_singular(r: OrthogonalTransform, kd: KernelDecomposition) -> Implementer:
    d, n = r.d, kd.n
    t0 = t0_duality(kd.p0 @ r.v, kd.h0)
    u0 = kd.h0 @ t0.f_basis.conj().T
    r_ext = OrthogonalTransform(r.u + u0, kd.p1 @ r.v)
    t_ext = implement_invertible(r_ext).matrix

    # combined unitary basis: kernel factors first, then the F1 basis
    c = np.hstack([t0.f_basis, kd.f1])
    gamma_c = gamma(c)

    m_low = (1 << n) - 1
    dim = 1 << d
    # images of the F1-basis wedges under T1 Gamma((-1)^n Q1)
    g_cols = np.zeros((dim, 1 << (d - n)), dtype=complex)
    for lmask in range(1 << (d - n)):
        g_cols[:, lmask] = gamma_c[:, lmask << n]
    t1_cols = t_ext @ g_cols
    if n % 2 == 1:
        signs = np.where(popcounts(d - n) % 2 == 0, 1.0, -1.0)
        t1_cols = t1_cols * signs[None, :]

    # images of the kernel wedges under T0 (signed complement wedges)
    e_vecs = [FockVector.from_vector(t0.e_basis[:, m]) for m in range(n)]
    t0_cols = np.zeros((dim, 1 << n), dtype=complex)
    for kmask in range(1 << n):
        comp = m_low ^ kmask
        sign = -1.0 if (sum(i for i in range(n) if kmask >> i & 1) % 2) else 1.0
        vec = FockVector.vacuum(d)
        for m in range(n):
            if comp >> m & 1:
                vec = _wedge_right(vec, e_vecs[m])
        t0_cols[:, kmask] = sign * vec.amp

    combined = np.empty((dim, dim), dtype=complex)
    for mask in range(dim):
        kmask = mask & m_low
        lmask = mask >> n
        combined[:, mask] = antisymmetric_product(
            t0_cols[:, kmask], t1_cols[:, lmask], d
        )
    t = combined @ gamma_c.conj().T
    return Implementer(matrix=t, transform=r, kernel_dim=n, h0_basis=kd.h0)


def intertwining_residual(r: OrthogonalTransform, t: np.ndarray) -> float:
    """max over real basis directions f of |T Delta(f) T^dag - Delta(Rf)|."""
    t = np.asarray(t, dtype=complex)
    d = r.d
    worst = 0.0
    for k in range(d):
        for f in (np.eye(d)[k], 1j * np.eye(d)[k]):
            lhs = t @ delta(f) @ t.conj().T
            rhs = delta(r.act(f))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def module_lift(t: np.ndarray, generators: int) -> RegularOperator:
    """Module extension k_0 (x) T of a Fock implementer."""
    return regular_from_fock(generators, t)


def cocycle(
    r2: OrthogonalTransform, r1: OrthogonalTransform, tol: float = 1e-8
) -> complex:
    """Ray-representation multiplier chi in T(R2) T(R1) = chi T(R2 R1).

    Extracted at the largest-magnitude entry of T(R2 R1) and verified over
    the full matrix; a residual above tol (relative to the matrix scale)
    signals that the product is not a scalar multiple, i.e. a bug.
    """
    t2 = implement_general(r2).matrix
    t1 = implement_general(r1).matrix
    t12 = implement_general(compose(r2, r1)).matrix
    prod = t2 @ t1
    idx = np.unravel_index(np.argmax(np.abs(t12)), t12.shape)
    chi = complex(prod[idx] / t12[idx])
    resid = float(np.max(np.abs(prod - chi * t12)))
    if resid > tol * max(1.0, float(np.max(np.abs(prod)))):
        raise ArithmeticError(
            f"product is not a scalar multiple of the composed implementer "
            f"(residual {resid:.3e})"
        )
    return chi


@dataclass(frozen=True)
class VacuumOrbit:
    """Image of the Fock vacuum under an implementer.

    For n = 0 this is det(I + X^dag X)^(-1/4) exp Omega(X); for n > 0 the
    ordered wedge of the kernel basis multiplies the Gaussian and the state
    is orthogonal to the vacuum.
    """

    vector: FockVector
    x: np.ndarray
    kernel_dim: int
    h0_basis: np.ndarray
    overlap: float

    def norm(self) -> float:
        return self.vector.norm()


def vacuum_orbit(r: OrthogonalTransform) -> VacuumOrbit:
    """Vacuum orbit vector of R, phase-fixed by the kernel-basis wedge."""
    from .orthogroup import coset_coordinate

    kd = r.kernel
    cp = coset_coordinate(r)
    theta = c_norm(cp.x) * exp_omega(cp.x)
    if kd.n == 0:
        vec = theta
        overlap = float(np.real(vec.amp[0]))
    else:
        head = FockVector.vacuum(r.d)
        for m in range(kd.n):
            head = _wedge_right(head, FockVector.from_vector(kd.h0[:, m]))
        from .fock import wedge

        vec = wedge(head, theta)
        overlap = 0.0
    return VacuumOrbit(
        vector=vec, x=cp.x, kernel_dim=kd.n, h0_basis=kd.h0, overlap=overlap
    )


def orbit_transform(
    r2: OrthogonalTransform, x1: np.ndarray, tol: float = 1e-8
) -> tuple[complex, np.ndarray]:
    """Moebius action on vacuum-orbit coordinates:

        X3 = (U2 X1 + V2)(conj(U2) + conj(V2) X1)^(-1),

    together with the phase chi in T(R2) Theta(X1) = chi Theta(X3).  Raises
    ``ChartError`` when the denominator is singular, i.e. the transformed
    vacuum leaves the invertible-U chart.
    """
    x1 = as_skew(x1)
    denom = np.conj(r2.u) + np.conj(r2.v) @ x1
    s = np.linalg.svd(denom, compute_uv=False)
    if s[-1] < 1e-10 * max(s[0], 1.0):
        raise ChartError(
            "conj(U2) + conj(V2) X1 is singular: the transformed vacuum has "
            "no overlap with the reference vacuum (kernel appears)"
        )
    x3 = as_skew((r2.u @ x1 + r2.v) @ np.linalg.inv(denom), rtol=1e-8)
    theta1 = c_norm(x1) * exp_omega(x1)
    theta3 = c_norm(x3) * exp_omega(x3)
    lhs = implement_general(r2).matrix @ theta1.amp
    idx = int(np.argmax(np.abs(theta3.amp)))
    chi = complex(lhs[idx] / theta3.amp[idx])
    resid = float(np.max(np.abs(lhs - chi * theta3.amp)))
    if resid > tol:
        raise ArithmeticError(
            f"transformed Gaussian does not match the Moebius image "
            f"(residual {resid:.3e})"
        )
    return chi, x3
