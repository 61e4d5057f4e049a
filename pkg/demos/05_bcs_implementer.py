"""Implementing a two-mode pairing (BCS-type) rotation on Fock space.

R(theta) = R(cos t I, sin t J) rotates the field operators; its unitary
implementer T satisfies T Delta(f) T^dag = Delta(R f), maps the vacuum to a
normalized Gaussian with overlap cos(theta), and the vacuum-orbit coordinate
transforms by the tangent addition law.
"""

import numpy as np

from superfock import (
    bcs,
    compose,
    cocycle,
    coset_coordinate,
    delta,
    implement_general,
    intertwining_residual,
    orbit_transform,
    vacuum_orbit,
)

theta = np.pi / 4
R = bcs(theta)
print("== the transformation ==")
print("U =\n", R.u, "\nV =\n", R.v)
cp = coset_coordinate(R)
print("coset coordinate X = tan(theta) J:\n", cp.x)

print("\n== the implementer ==")
impl = implement_general(R)
T = impl.matrix
print("T =\n", np.round(T.real, 6))
print("unitarity residual:", impl.unitarity_residual())
print("intertwining residual:", intertwining_residual(R, T))
f = np.eye(2)[0]
print("R e1 =", np.round(R.act(f), 6))
print("T Delta(e1) T^dag - Delta(R e1):",
      np.max(np.abs(T @ delta(f) @ T.conj().T - delta(R.act(f)))))

print("\n== vacuum orbit ==")
vo = vacuum_orbit(R)
print("T |vac> amplitudes:", np.round(vo.vector.amp.real, 6))
print("overlap with the vacuum:", vo.overlap, " = cos(theta):", np.cos(theta))

print("\n== group composition and ray phase ==")
t1, t2 = np.pi / 6, np.pi / 5
R12 = compose(bcs(t2), bcs(t1))
print("compose(R(t2), R(t1)) = R(t1 + t2):",
      np.max(np.abs(R12.u - bcs(t1 + t2).u)))
print("cocycle chi inside the chart:", cocycle(bcs(t2), bcs(t1)))
print("cocycle chi across the chart boundary (t1 + t2 > pi/2):",
      cocycle(bcs(1.2), bcs(1.0)))

print("\n== Moebius action on orbit coordinates ==")
J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
chi, X3 = orbit_transform(bcs(t2), np.tan(t1) * J2)
print("X3 - tan(t1 + t2) J:", np.max(np.abs(X3 - np.tan(t1 + t2) * J2)),
      "  phase:", chi)
