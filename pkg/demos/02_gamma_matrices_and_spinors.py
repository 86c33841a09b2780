"""Gamma matrices, the spinor generator tensor, and the double cover.

Shows the Clifford relations in the (-+++) signature, unitarity of
spatial spinor rotations, the famous minus sign after a full turn, and
how the representation product tracks the group product only up to sign.

Run:  python demos/02_gamma_matrices_and_spinors.py
"""

import numpy as np

from covariant_kit import (
    FieldRep,
    GammaBasis,
    homomorphism_check,
    minkowski_metric,
    rep_matrix,
    sigma_tensor,
)

np.set_printoptions(precision=4, suppress=True, linewidth=120)

print("=" * 70)
print("Clifford relations {gamma_mu, gamma_nu} = 2 eta_mu_nu")
print("=" * 70)
gamma = GammaBasis.standard()
eta = minkowski_metric()
worst = 0.0
for mu in range(4):
    for nu in range(mu, 4):
        g = gamma.matrices
        resid = np.abs(g[mu] @ g[nu] + g[nu] @ g[mu] - 2 * eta[mu, nu] * np.eye(4)).max()
        worst = max(worst, resid)
print(f"worst anticommutator residual over all 10 pairs: {worst:.2e}")

sig = sigma_tensor(gamma)
print("\nspatial generator sigma[1,2] (Hermitian, so rotations are unitary):")
print(sig[1, 2])
print("boost generator sigma[0,1] (anti-Hermitian, so boosts are not):")
print(sig[0, 1])

print()
print("=" * 70)
print("A full turn is -1: the double cover at work")
print("=" * 70)
rep = FieldRep.spinor(gamma)
for frac, name in ((0.5, "half turn (pi)"), (1.0, "full turn (2 pi)"), (2.0, "two turns (4 pi)")):
    omega = np.zeros(6)
    omega[3] = 2 * np.pi * frac
    S = rep_matrix(rep, omega)
    print(f"{name:18s} -> S = diag({np.diag(S).round(6)})")

omega = np.array([0.0, 0.0, 0.0, 0.9, -0.4, 0.3])
S = rep_matrix(rep, omega)
print(f"\nunitarity for a generic spatial rotation: |S^H S - 1| = {np.abs(S.conj().T @ S - np.eye(4)).max():.2e}")

print()
print("=" * 70)
print("The representation product only matches up to a sign")
print("=" * 70)
half_turn = np.array([0.0, 0.0, 0.0, np.pi, 0.0, 0.0])
res, sign = homomorphism_check(rep, half_turn, half_turn)
print(f"two half turns: residual {res:.2e} at sign {sign:+d}")
print("(the matrix product lands on -1 while the recombined group element is the identity)")

res, sign = homomorphism_check(FieldRep.vector(), half_turn, half_turn)
print(f"the vector representation has no such sign: residual {res:.2e} at sign {sign:+d}")
