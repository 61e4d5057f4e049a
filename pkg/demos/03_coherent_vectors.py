"""Coherent and ultracoherent vectors in the Grassmann-module Fock space.

Supervectors xi = sum C[m,k] k_m (x) e_k exponentiate to coherent vectors
whose Grassmann-valued inner products obey (exp xi | exp eta) = exp (xi|eta);
multiplying by a Gaussian factor gives the ultracoherent family with its
closed-form pairings.
"""

import numpy as np

from superfock import (
    GrassmannElement,
    SuperVector,
    b_minus,
    b_plus,
    coherent,
    gexp,
    gmul,
    gnorm,
    lambda_inner,
    mproduct,
    random_skew,
    super_inner,
    ultracoherent,
)

rng = np.random.default_rng(2)
G = d = 3


def rand_sv(scale=0.8):
    return SuperVector(scale * (rng.standard_normal((G, d))
                                + 1j * rng.standard_normal((G, d))))


xi, eta = rand_sv(), rand_sv()

print("== coherent vectors ==")
ce = coherent(xi)
print("parity:", ce.parity(), "  vacuum amplitude:", ce.amp[0, 0])
print("factorization exp(xi) o exp(eta) = exp(xi + eta):",
      np.max(np.abs(mproduct(ce, coherent(eta)).amp - coherent(xi + eta).amp)))

print("\n== Grassmann-valued inner product ==")
ip = super_inner(xi, eta)
print("(xi | eta) is a degree-2 element with norm", gnorm(ip))
lhs = lambda_inner(ce, coherent(eta))
rhs = gexp(ip)
print("(exp xi | exp eta) - exp (xi|eta):", np.max(np.abs(lhs.amp - rhs.amp)))

print("\n== module creation and annihilation ==")
print("b-(eta) exp xi = (eta|xi) exp xi:",
      np.max(np.abs(b_minus(eta).apply(ce).amp
                    - gmul(super_inner(eta, xi), ce).amp)))
print("b+(eta) norm bound |b+(eta) Xi| <= |eta| |Xi| holds:",
      b_plus(eta).apply(ce).norm() <= eta.norm() * ce.norm() * (1 + 1e-12))

print("\n== ultracoherent vectors ==")
X = random_skew(d, rng)
psi = ultracoherent(X, eta)
pair = lambda_inner(ce, psi)
closed = gexp(super_inner(xi, eta + 0.5 * xi.star().apply(X)))
print("(exp xi | Psi(X, eta)) closed form residual:",
      np.max(np.abs(pair.amp - closed.amp)))

unit = GrassmannElement.unit(G)
self_pair = lambda_inner(psi, psi)
print("(Psi | Psi) scalar part:", self_pair.amp[0].real,
      "  sqrt det(I + X^dag X):",
      np.sqrt(np.linalg.det(np.eye(d) + X.conj().T @ X).real))
