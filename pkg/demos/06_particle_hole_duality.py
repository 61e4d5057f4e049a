"""Transformations with a singular U block: the particle-hole sector.

When ker U is nontrivial the implementer splits: a signed complementation
block maps the kernel factor A(ker U) onto A(ker U^dag) while the invertible
remainder is handled as before.  The kernel dimension mod 2 decides the
connected component of the group and whether the implementer preserves or
flips fermion parity.
"""

import numpy as np

from superfock import (
    OrthogonalTransform,
    component,
    delta,
    gamma,
    haar_unitary,
    implement_general,
    intertwining_residual,
    kernel_decomposition,
    random_transform,
    t0_duality,
    vacuum_orbit,
)

print("== the one-mode particle-hole swap ==")
swap = OrthogonalTransform(np.zeros((1, 1)), np.eye(1))
impl = implement_general(swap)
print("T =\n", impl.matrix.real)
print("component:", component(swap))
print("vacuum orbit:", vacuum_orbit(swap).vector.amp.real,
      " (orthogonal to the vacuum)")

print("\n== an engineered d = 4 transform with a 2-dim kernel ==")
rng = np.random.default_rng(3)
R = random_transform(4, rng, kernel_dim=2)
kd = kernel_decomposition(R)
print("dim ker U =", kd.n, "  component:", component(R))

impl = implement_general(R)
print("unitarity residual:", impl.unitarity_residual())
print("intertwining residual:", intertwining_residual(R, impl.matrix))

parity_op = gamma(-np.eye(4))
comm = impl.matrix @ parity_op - parity_op @ impl.matrix
print("even kernel: T commutes with the parity operator:", np.max(np.abs(comm)))

print("\n== the duality block by itself ==")
j = kd.p0 @ R.v
t0 = t0_duality(j, kd.h0)
print("signed-complement block on the kernel wedges:\n", t0.block.real)
h = t0.f_basis[:, 0]
resid = np.max(np.abs(t0.matrix @ delta(h) - delta(j @ np.conj(h)) @ t0.matrix))
print("intertwines field differences from ker U:", resid)

print("\n== odd kernels flip parity ==")
R1 = random_transform(3, rng, kernel_dim=1)
T1 = implement_general(R1).matrix
p3 = gamma(-np.eye(3))
print("component:", component(R1))
print("T Gamma(-I) + Gamma(-I) T:", np.max(np.abs(T1 @ p3 + p3 @ T1)))

print("\n== gauge covariance with the fixed phase convention ==")
s = haar_unitary(4, rng)
RS = OrthogonalTransform(R.u @ s, R.v @ np.conj(s))
lhs = implement_general(R).matrix @ gamma(s)
rhs = implement_general(RS).matrix
print("T[U S, V conj(S)] - T[U, V] Gamma(S):", np.max(np.abs(lhs - rhs)))
