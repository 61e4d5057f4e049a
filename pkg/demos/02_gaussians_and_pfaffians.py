"""Fermionic Gaussian vectors from skew matrices.

A skew matrix X defines the degree-2 tensor Omega(X); its exponential has
subset-Pfaffian amplitudes, squared overlaps reproduce determinants, and the
canonical pair form of X exposes the elementary rotations behind it all.
"""

import numpy as np

from superfock import (
    exp_omega,
    gaussian_norm,
    inner,
    omega,
    overlap_det,
    pfaffian,
    random_skew,
    skew_canonical,
)

rng = np.random.default_rng(7)
d = 6
X = random_skew(d, rng)
Y = random_skew(d, rng)

print("== Pfaffian ==")
print("Pf(X)^2 - det(X):", abs(pfaffian(X) ** 2 - np.linalg.det(X)))

print("\n== the degree-2 tensor and its exponential ==")
om = omega(X)
print("norm^2 of Omega(X) vs |X|_HS^2 / 2:",
      om.norm() ** 2, "vs", 0.5 * np.linalg.norm(X, "fro") ** 2)
ex = exp_omega(X)
print("exp Omega(X) vacuum amplitude:", ex.amp[0])
print("squared norm vs sqrt det(I + X^dag X):",
      ex.norm() ** 2, "vs", gaussian_norm(X))

print("\n== overlap determinant identity ==")
val = overlap_det(X, Y)
det = np.linalg.det(np.eye(d) + X.conj().T @ Y)
print("(exp Omega(X) | exp Omega(Y)) =", val)
print("value^2 - det(I + X^dag Y):", abs(val**2 - det))
print("subset sum equals the direct inner product:",
      abs(val - inner(exp_omega(X), exp_omega(Y))))

print("\n== canonical pair form ==")
cf = skew_canonical(X)
print("pair values z:", np.round(cf.z, 6))
print("reconstruction residual:", np.max(np.abs(cf.reconstruct() - X)))
print("product of (1 + z^2) equals the Gaussian norm:",
      float(np.prod(1 + cf.z**2)), "vs", gaussian_norm(X))
