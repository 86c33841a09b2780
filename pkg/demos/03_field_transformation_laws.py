"""Passive vs active transformation laws on sampled wave packets.

The passive law relabels components at a fixed point; the active law
moves the evaluation point with the forward map and acts with the
transposed matrix.  Their fingerprints differ: a translation shifts the
packet in opposite directions.  The smearing pairing ties the two sides
together: transforming the field one way equals transforming the test
function the other way.

Run:  python demos/03_field_transformation_laws.py
"""

import numpy as np

from covariant_kit import (
    FieldRep,
    FrameChange,
    GridSpec,
    PoincareElement,
    active_transform,
    cocycle_check,
    frame_change_components,
    pairing,
    passive_transform,
    rep_matrix,
    transform_test_function,
    wave_packet,
)

np.set_printoptions(precision=6, suppress=True)

print("=" * 70)
print("Opposite shifts: passive vs active translation")
print("=" * 70)
center = np.array([0.5, -0.3, 0.2, 0.1])
a = np.array([1.0, 0.5, -0.7, 0.3])
f = wave_packet(center, 0.9, 1)
shift = PoincareElement.from_params(np.zeros(6), a)
print(f"original peak at       {center}")
print(f"passive transform peak {center + a}  value {passive_transform(f, FieldRep.scalar(), shift)(center + a)[0].real:.6f}")
print(f"active  transform peak {center - a}  value {active_transform(f, FieldRep.scalar(), shift)(center - a)[0].real:.6f}")

print()
print("=" * 70)
print("A boost mixes vector components")
print("=" * 70)
g = PoincareElement.from_params([0.5, 0, 0, 0, 0, 0], np.zeros(4))
vec = wave_packet([0, 0, 0, 0], 1.0, [1.0, 0.5, -0.25, 2.0])
out = passive_transform(vec, FieldRep.vector(), g)
print("phi(0) before:", vec(np.zeros(4)).real)
print("phi'(0) after:", out(np.zeros(4)).real)
print("(that is the boost matrix acting on the components)")

print()
print("=" * 70)
print("Pairing invariance: move the field or move the test function")
print("=" * 70)
phi = wave_packet([0.3, -0.2, 0.1, 0.0], 1.0, 1)
test = wave_packet([-0.25, 0.4, 0.0, 0.2], 1.2, 1)
boost = PoincareElement.from_params([0.3, 0, 0, 0, 0, 0], np.zeros(4))
grid = GridSpec(((-7.0, 7.0),) * 4, (33,) * 4)
lhs = pairing(active_transform(phi, FieldRep.scalar(), boost), test, grid)
rhs = pairing(phi, transform_test_function(test, FieldRep.scalar(), boost), grid)
print(f"pairing(active phi, f)      = {lhs.real:.12f}")
print(f"pairing(phi, transformed f) = {rhs.real:.12f}")
print(f"relative difference         = {abs(lhs - rhs) / abs(rhs):.2e}")

print()
print("=" * 70)
print("Frame changes act pointwise and satisfy the cocycle law")
print("=" * 70)
q, e, b = 1.5, 0.5, 0.8
phase = FieldRep.phase(q, e)
change = FrameChange.constant(rep_matrix(phase, b))
rephased = frame_change_components(phi, change)
x = np.array([0.3, -0.2, 0.1, 0.0])
print(f"|phi'(x)| / |phi(x)| = {abs(rephased(x)[0]) / abs(phi(x)[0]):.6f}  (a pure phase, modulus 1)")

pts = np.random.default_rng(0).uniform(-2, 2, (30, 4))
c1 = FrameChange.constant(np.array([[1.0, 0.3], [0.0, 1.0]], dtype=complex))
c2 = FrameChange.constant(np.array([[1.0, 0.0], [0.2, 1.1]], dtype=complex))
c12 = FrameChange.constant(c1.matrix(np.zeros(4)) @ c2.matrix(np.zeros(4)))
print(f"cocycle residual A(e,e') A(e',e'') - A(e,e''): {cocycle_check(c1, c2, c12, pts):.2e}")
