"""Grassmann-module extension of the Fock space.

The module Fock space over G generators and d modes has basis tensors
k_P (x) e_A indexed by a generator subset P and a mode subset A; amplitudes
are stored as a (2**G, 2**d) array.  It carries

* the graded product (k_P (x) e_A) o (k_Q (x) e_B) combining both subset
  algebras with their reordering signs,
* a Grassmann-valued inner product (k_P (x) e_A | k_Q (x) e_B)
  = k_P* k_Q (e_A | e_B),
* supervectors xi = sum_mk C[m,k] k_m (x) e_k, their coherent vectors
  exp xi = sum_p xi^p / p!, and ultracoherent vectors
  Psi(X, xi) = exp(xi) o (k_0 (x) exp Omega(X)),
* regular operators sum_j mu_j (x) T_j with their superadjoint
  sum_j mu_j* (x) T_j^dag.

The module norm weights the generator index with the graded Grassmann norm:
|Xi|^2 = sum_{P,A} (|P|!)^-2 |Xi[P,A]|^2.
"""

from __future__ import annotations

import numpy as np

from ._tables import factorials, popcounts, reversal_signs, wedge_table
from .fock import FockVector
from .gaussian import exp_omega
from .grassmann import GrassmannElement, gstar

__all__ = [
    "ModuleTensor",
    "SuperVector",
    "RegularOperator",
    "mproduct",
    "lambda_inner",
    "gmul",
    "coherent",
    "ultracoherent",
    "b_plus",
    "b_minus",
    "superadjoint",
    "weighted_norm",
    "regular_from_fock",
    "coherent_family_coefficients",
]


class ModuleTensor:
    """Element of the module Fock space on (generators, modes)."""

    __slots__ = ("generators", "modes", "amp")

    def __init__(self, generators: int, modes: int, amplitudes: np.ndarray):
        amp = np.asarray(amplitudes, dtype=complex)
        if amp.shape != (1 << generators, 1 << modes):
            raise ValueError(
                f"expected shape {(1 << generators, 1 << modes)}, got {amp.shape}"
            )
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "amp", amp)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleTensor is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, generators: int, modes: int) -> "ModuleTensor":
        return cls(generators, modes, np.zeros((1 << generators, 1 << modes)))

    @classmethod
    def unit(cls, generators: int, modes: int) -> "ModuleTensor":
        """k_0 (x) 1_vac, the unit of the module algebra."""
        amp = np.zeros((1 << generators, 1 << modes), dtype=complex)
        amp[0, 0] = 1.0
        return cls(generators, modes, amp)

    @classmethod
    def outer(cls, lam: GrassmannElement, f: FockVector) -> "ModuleTensor":
        """Product tensor lam (x) F."""
        return cls(lam.generators, f.modes, np.outer(lam.amp, f.amp))

    @classmethod
    def embed_fock(cls, generators: int, f: FockVector) -> "ModuleTensor":
        """k_0 (x) F."""
        amp = np.zeros((1 << generators, 1 << f.modes), dtype=complex)
        amp[0, :] = f.amp
        return cls(generators, f.modes, amp)

    @classmethod
    def embed_grassmann(cls, lam: GrassmannElement, modes: int) -> "ModuleTensor":
        """lam (x) 1_vac."""
        amp = np.zeros((1 << lam.generators, 1 << modes), dtype=complex)
        amp[:, 0] = lam.amp
        return cls(lam.generators, modes, amp)

    # -- structure -----------------------------------------------------------

    def parity(self) -> str:
        """'even'/'odd'/'mixed' by the total degree p + n of the support."""
        p = popcounts(self.generators)[:, None] + popcounts(self.modes)[None, :]
        nz = self.amp != 0
        has_even = bool(np.any(nz & (p % 2 == 0)))
        has_odd = bool(np.any(nz & (p % 2 == 1)))
        if has_even and has_odd:
            return "mixed"
        return "odd" if has_odd else "even"

    def fock_degree(self, n: int) -> "ModuleTensor":
        keep = popcounts(self.modes) == n
        return ModuleTensor(self.generators, self.modes, self.amp * keep[None, :])

    def norm(self) -> float:
        """Module norm, graded on the generator index."""
        w = 1.0 / factorials(self.generators)[popcounts(self.generators)]
        return float(np.linalg.norm(w[:, None] * self.amp))

    def star(self) -> "ModuleTensor":
        """(lam (x) F)* = lam* (x) F*."""
        signs = (
            reversal_signs(self.generators)[:, None]
            * reversal_signs(self.modes)[None, :]
        )
        return ModuleTensor(self.generators, self.modes, signs * np.conj(self.amp))

    def apply_fock(self, op: np.ndarray) -> "ModuleTensor":
        """Action of k_0 (x) T."""
        return ModuleTensor(self.generators, self.modes, self.amp @ op.T)

    def flatten(self) -> np.ndarray:
        """Amplitudes as a vector, generator index major (matches kron order)."""
        return self.amp.reshape(-1)

    @classmethod
    def from_flat(cls, generators: int, modes: int, vec: np.ndarray) -> "ModuleTensor":
        return cls(generators, modes, vec.reshape(1 << generators, 1 << modes))

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "ModuleTensor") -> "ModuleTensor":
        self._check_same(other)
        return ModuleTensor(self.generators, self.modes, self.amp + other.amp)

    def __sub__(self, other: "ModuleTensor") -> "ModuleTensor":
        self._check_same(other)
        return ModuleTensor(self.generators, self.modes, self.amp - other.amp)

    def __mul__(self, scalar) -> "ModuleTensor":
        return ModuleTensor(self.generators, self.modes, self.amp * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "ModuleTensor":
        return ModuleTensor(self.generators, self.modes, -self.amp)

    def _check_same(self, other: "ModuleTensor") -> None:
        if not isinstance(other, ModuleTensor):
            raise TypeError("expected a ModuleTensor")
        if (self.generators, self.modes) != (other.generators, other.modes):
            raise ValueError("tensor shapes differ")

    def __repr__(self) -> str:
        return (
            f"ModuleTensor(generators={self.generators}, modes={self.modes}, "
            f"norm={self.norm():.6g})"
        )


def mproduct(theta: ModuleTensor, xi: ModuleTensor) -> ModuleTensor:
    """Module product, bilinear over both tensor factors.

    On bidegrees (p1, n1) and (p2, n2) the exchange sign is
    (-1)^(p1 p2 + n1 n2); for supervectors and the even coherent-vector
    calculus this coincides with the total-parity sign (-1)^(pi(theta) pi(xi)).
    In particular xi o Theta = (-1)^pi(Theta) Theta o xi for any supervector
    xi and parity-homogeneous Theta.
    """
    theta._check_same(xi)
    gl, gr, go, gs = wedge_table(theta.generators)
    fl, fr, fo, fs = wedge_table(theta.modes)
    contrib = (
        (gs[:, None] * fs[None, :])
        * theta.amp[gl[:, None], fl[None, :]]
        * xi.amp[gr[:, None], fr[None, :]]
    )
    out = np.zeros((1 << theta.generators, 1 << theta.modes), dtype=complex)
    np.add.at(out, (go[:, None], fo[None, :]), contrib)
    return ModuleTensor(theta.generators, theta.modes, out)


def lambda_inner(theta: ModuleTensor, xi: ModuleTensor) -> GrassmannElement:
    """Grassmann-valued inner product with (theta | xi)* = (xi | theta)."""
    theta._check_same(xi)
    pairings = np.conj(theta.amp) @ xi.amp.T  # [P, Q] = sum_A conj(Th[P,A]) Xi[Q,A]
    gl, gr, go, gs = wedge_table(theta.generators)
    rev = reversal_signs(theta.generators)
    out = np.zeros(1 << theta.generators, dtype=complex)
    np.add.at(out, go, gs * rev[gl] * pairings[gl, gr])
    return GrassmannElement(theta.generators, out)


def gmul(lam: GrassmannElement, xi: ModuleTensor) -> ModuleTensor:
    """Left multiplication by a Grassmann element: lam o xi."""
    if lam.generators != xi.generators:
        raise ValueError("generator counts differ")
    gl, gr, go, gs = wedge_table(xi.generators)
    out = np.zeros_like(xi.amp)
    np.add.at(out, go, (gs * lam.amp[gl])[:, None] * xi.amp[gr, :])
    return ModuleTensor(xi.generators, xi.modes, out)


def weighted_norm(xi: ModuleTensor, alpha: float) -> float:
    """Family of norms |Xi|_(alpha)^2 = sum_n (n!)^alpha |Xi_n|^2 over
    Fock-degree slices; alpha = 0 recovers the module norm."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    wg = 1.0 / factorials(xi.generators)[popcounts(xi.generators)]
    wf = factorials(xi.modes)[popcounts(xi.modes)] ** (alpha / 2.0)
    return float(np.linalg.norm(wg[:, None] * wf[None, :] * xi.amp))


class SuperVector:
    """Supervector sum_mk C[m,k] k_m (x) e_k in the restricted superspace."""

    __slots__ = ("generators", "modes", "coeff")

    def __init__(self, coeff: np.ndarray):
        coeff = np.asarray(coeff, dtype=complex)
        if coeff.ndim != 2:
            raise ValueError("coefficient array must be (generators, modes)")
        coeff = coeff.copy()
        coeff.setflags(write=False)
        object.__setattr__(self, "generators", coeff.shape[0])
        object.__setattr__(self, "modes", coeff.shape[1])
        object.__setattr__(self, "coeff", coeff)

    def __setattr__(self, name, value):
        raise AttributeError("SuperVector is immutable")

    @classmethod
    def zero(cls, generators: int, modes: int) -> "SuperVector":
        return cls(np.zeros((generators, modes), dtype=complex))

    @classmethod
    def basis(cls, generators: int, modes: int, m: int, k: int) -> "SuperVector":
        c = np.zeros((generators, modes), dtype=complex)
        c[m, k] = 1.0
        return cls(c)

    def to_module(self) -> ModuleTensor:
        amp = np.zeros((1 << self.generators, 1 << self.modes), dtype=complex)
        rows = 1 << np.arange(self.generators)
        cols = 1 << np.arange(self.modes)
        amp[np.ix_(rows, cols)] = self.coeff
        return ModuleTensor(self.generators, self.modes, amp)

    def star(self) -> "SuperVector":
        """xi* (real generators, e_k* = e_k): conjugate coefficients."""
        return SuperVector(np.conj(self.coeff))

    def apply(self, op: np.ndarray) -> "SuperVector":
        """Action of k_0 (x) A on the mode index."""
        return SuperVector(self.coeff @ np.asarray(op, dtype=complex).T)

    def rotate(self, u: np.ndarray, v: np.ndarray) -> "SuperVector":
        """R(U, V) xi = (k_0 (x) U) xi + (k_0 (x) V) xi*, the R-linear
        extension of f -> U f + V f* to supervectors."""
        return SuperVector(self.coeff @ u.T + np.conj(self.coeff) @ v.T)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeff))

    def __add__(self, other: "SuperVector") -> "SuperVector":
        self._check_same(other)
        return SuperVector(self.coeff + other.coeff)

    def __sub__(self, other: "SuperVector") -> "SuperVector":
        self._check_same(other)
        return SuperVector(self.coeff - other.coeff)

    def __mul__(self, scalar) -> "SuperVector":
        return SuperVector(self.coeff * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "SuperVector":
        return SuperVector(-self.coeff)

    def _check_same(self, other: "SuperVector") -> None:
        if (self.generators, self.modes) != (other.generators, other.modes):
            raise ValueError("supervector shapes differ")

    def __repr__(self) -> str:
        return (
            f"SuperVector(generators={self.generators}, modes={self.modes}, "
            f"norm={self.norm():.6g})"
        )


def super_inner(xi: SuperVector, eta: SuperVector) -> GrassmannElement:
    """(xi | eta) as a degree-2 Grassmann element; (xi|eta)* = (eta|xi)."""
    xi._check_same(eta)
    g = xi.generators
    pair = np.conj(xi.coeff) @ eta.coeff.T  # [m, m'] over generators
    anti = pair - pair.T
    amp = np.zeros(1 << g, dtype=complex)
    for a in range(g):
        for b in range(a + 1, g):
            amp[(1 << a) | (1 << b)] = anti[a, b]
    return GrassmannElement(g, amp)


def super_pairing(xi: SuperVector, op: np.ndarray, eta: SuperVector) -> GrassmannElement:
    """Bilinear pairing <<xi, T eta>> = (xi* | T eta) in Lambda_2; symmetric
    in xi, eta when T is skew."""
    return super_inner(xi.star(), eta.apply(op))


def coherent(xi: SuperVector) -> ModuleTensor:
    """Coherent vector exp xi = sum_p xi^p / p! (ends at p = min(G, d))."""
    result = ModuleTensor.unit(xi.generators, xi.modes)
    term = result
    base = xi.to_module()
    for p in range(1, min(xi.generators, xi.modes) + 1):
        term = mproduct(base, term) * (1.0 / p)
        result = result + term
    return result


def ultracoherent(x: np.ndarray, xi: SuperVector, rtol: float = 1e-10) -> ModuleTensor:
    """Ultracoherent vector Psi(X, xi) = exp(xi) o (k_0 (x) exp Omega(X))."""
    gauss = ModuleTensor.embed_fock(xi.generators, exp_omega(x, rtol=rtol))
    return mproduct(coherent(xi), gauss)


class RegularOperator:
    """Operator sum_j mu_j (x) T_j on the module space.

    Terms act as (mu (x) T)(lam (x) F) = mu lam (x) T F.  The list form
    mirrors the defining decomposition; ``materialize`` produces the dense
    matrix for oracle comparisons.
    """

    __slots__ = ("generators", "modes", "terms")

    def __init__(self, generators: int, modes: int, terms):
        clean = []
        for mu, op in terms:
            if mu.generators != generators:
                raise ValueError("term Grassmann factor has wrong generator count")
            op = np.asarray(op, dtype=complex)
            if op.shape != (1 << modes, 1 << modes):
                raise ValueError("term Fock factor has wrong shape")
            if np.any(mu.amp != 0) and np.any(op != 0):
                clean.append((mu, op))
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "terms", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("RegularOperator is immutable")

    @classmethod
    def identity(cls, generators: int, modes: int) -> "RegularOperator":
        return cls(
            generators,
            modes,
            [(GrassmannElement.unit(generators), np.eye(1 << modes, dtype=complex))],
        )

    def apply(self, xi: ModuleTensor) -> ModuleTensor:
        if (xi.generators, xi.modes) != (self.generators, self.modes):
            raise ValueError("tensor shape does not match operator")
        out = ModuleTensor.zero(self.generators, self.modes)
        for mu, op in self.terms:
            out = out + gmul(mu, xi.apply_fock(op))
        return out

    def materialize(self) -> np.ndarray:
        """Dense matrix on flattened amplitudes (generator index major)."""
        dim = (1 << self.generators) * (1 << self.modes)
        out = np.zeros((dim, dim), dtype=complex)
        for mu, op in self.terms:
            out += np.kron(_left_mult_matrix(mu), op)
        return out

    def superadjoint(self) -> "RegularOperator":
        """sum mu_j (x) T_j -> sum mu_j* (x) T_j^dag; the adjoint for the
        Grassmann-valued inner product."""
        return RegularOperator(
            self.generators,
            self.modes,
            [(gstar(mu), op.conj().T) for mu, op in self.terms],
        )

    def compose(self, other: "RegularOperator") -> "RegularOperator":
        """Operator product self o other (term-wise bilinear)."""
        if (self.generators, self.modes) != (other.generators, other.modes):
            raise ValueError("operator shapes differ")
        from .grassmann import gproduct

        terms = []
        for mu, op in self.terms:
            for nu, oq in other.terms:
                terms.append((gproduct(mu, nu), op @ oq))
        return RegularOperator(self.generators, self.modes, terms)

    def left_gmul(self, lam: GrassmannElement) -> "RegularOperator":
        from .grassmann import gproduct

        return RegularOperator(
            self.generators,
            self.modes,
            [(gproduct(lam, mu), op) for mu, op in self.terms],
        )

    def __add__(self, other: "RegularOperator") -> "RegularOperator":
        if (self.generators, self.modes) != (other.generators, other.modes):
            raise ValueError("operator shapes differ")
        return RegularOperator(
            self.generators, self.modes, list(self.terms) + list(other.terms)
        )

    def __sub__(self, other: "RegularOperator") -> "RegularOperator":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "RegularOperator":
        s = complex(scalar)
        return RegularOperator(
            self.generators, self.modes, [(mu * s, op) for mu, op in self.terms]
        )

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return (
            f"RegularOperator(generators={self.generators}, modes={self.modes}, "
            f"terms={len(self.terms)})"
        )


def _left_mult_matrix(mu: GrassmannElement) -> np.ndarray:
    """Matrix of lam -> mu lam on Grassmann amplitudes."""
    gl, gr, go, gs = wedge_table(mu.generators)
    out = np.zeros((1 << mu.generators, 1 << mu.generators), dtype=complex)
    np.add.at(out, (go, gr), gs * mu.amp[gl])
    return out


def regular_from_fock(generators: int, op: np.ndarray) -> RegularOperator:
    """Lift a Fock operator to k_0 (x) T."""
    op = np.asarray(op, dtype=complex)
    modes = op.shape[0].bit_length() - 1
    return RegularOperator(
        generators, modes, [(GrassmannElement.unit(generators), op)]
    )


def b_plus(eta: SuperVector) -> RegularOperator:
    """Module creation operator b+(eta) Xi = eta o Xi."""
    from .fock import create

    terms = []
    for m in range(eta.generators):
        row = eta.coeff[m]
        if np.any(row != 0):
            terms.append(
                (GrassmannElement.generator(eta.generators, m), create(row))
            )
    return RegularOperator(eta.generators, eta.modes, terms)


def b_minus(eta: SuperVector) -> RegularOperator:
    """Module annihilation operator, the superadjoint of b+(eta)."""
    return b_plus(eta).superadjoint()


def superadjoint(op: RegularOperator) -> RegularOperator:
    """Superadjoint of a regular operator (module-level convenience)."""
    return op.superadjoint()


def coherent_family_coefficients(generators: int, modes: int) -> np.ndarray:
    """Deterministic separating family: all coefficient arrays with entries
    in {0, 1, i}, enumerated base-3 over the flattened (row-major) positions.

    Returns an array of shape (3**(G*d), G, d).
    """
    n = generators * modes
    count = 3**n
    digits = np.zeros((count, n), dtype=np.int64)
    idx = np.arange(count)
    for pos in range(n - 1, -1, -1):
        digits[:, pos] = idx % 3
        idx = idx // 3
    values = np.array([0.0, 1.0, 1j])
    return values[digits].reshape(count, generators, modes)
