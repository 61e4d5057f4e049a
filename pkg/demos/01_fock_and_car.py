"""Tour of the antisymmetric Fock space over a few modes.

Basis tensors are indexed by subsets of modes (bitmasks); the wedge product
carries the subset-reordering sign, the involution fixes e_k* = e_k, and the
creation/annihilation operators satisfy the canonical anticommutation
relations to machine precision.
"""

import numpy as np

from superfock import (
    FockVector,
    annihilate,
    bilinear,
    create,
    delta,
    gamma,
    inner,
    star,
    wedge,
)

d = 3
e1 = FockVector.basis(d, 0b001)
e2 = FockVector.basis(d, 0b010)
e3 = FockVector.basis(d, 0b100)

print("== wedge algebra ==")
e12 = wedge(e1, e2)
print("e1 ^ e2 amplitude on {1,2}:", e12.amp[0b011])
print("e2 ^ e1 amplitude on {1,2}:", wedge(e2, e1).amp[0b011])
print("e1 ^ e1 norm:", wedge(e1, e1).norm())

print("\n== involution and bilinear form ==")
print("star(e1 ^ e2) = -(e1 ^ e2):", star(e12).amp[0b011])
print("<<e1, e1>> =", bilinear(e1, e1), "   (i e1 | e1) pairs bilinearly:",
      bilinear(1j * e1, e1))
print("(e1 | e2) =", inner(e1, e2))

print("\n== creation / annihilation ==")
rng = np.random.default_rng(0)
f = rng.standard_normal(d) + 1j * rng.standard_normal(d)
g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
anti = annihilate(f) @ create(g) + create(g) @ annihilate(f)
print("{a-(f), a+(g)} - (f|g) I residual:",
      np.max(np.abs(anti - np.vdot(f, g) * np.eye(1 << d))))

df, dg = delta(f), delta(g)
car = df @ dg + dg @ df + 2 * np.real(np.vdot(f, g)) * np.eye(1 << d)
print("field-difference anticommutator residual:", np.max(np.abs(car)))

print("\n== second quantization ==")
z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
s, _ = np.linalg.qr(z)
gs = gamma(s)
print("Gamma(S) unitary residual:",
      np.max(np.abs(gs.conj().T @ gs - np.eye(1 << d))))
print("Gamma(S) e1 ^ e2 equals (S e1) ^ (S e2):",
      np.max(np.abs(gs @ e12.amp - FockVector.wedge_of([s[:, 0], s[:, 1]]).amp)))
