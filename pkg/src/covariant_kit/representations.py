"""Representation matrices acting on field components.

Supported variants: scalar (trivial), vector (the 4x4 Lorentz matrix
itself), spinor (built from a gamma-matrix basis), phase (1x1 internal
charge rotation) and custom (user rule).

The spinor matrix for parameters ``omega`` is

    S(omega) = exp(-(i/2) * sum_{a<b} omega[ab] * sigma[ab]),

with the generator tensor normalised as ``sigma[a, b] = (i/2) [gamma_a,
gamma_b]``.  With that factor of i the spatial sigma blocks are Hermitian,
S is unitary for spatial rotations, and a 2*pi rotation returns -1 (the
double cover).  The derivative of S at zero is -(i/2) sigma[a, b] per
plane.

The phase matrix keeps charge q and unit charge e separate:
``I(b) = exp(-(q / (i e)) b)``, a 1x1 matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm

from .geometry import ETA, PLANES, LorentzTransform, PoincareElement, lorentz_exp, lorentz_log_params

__all__ = [
    "GammaBasis",
    "sigma_tensor",
    "FieldRep",
    "rep_matrix",
    "dual_rep_matrix",
    "homomorphism_check",
    "rep_matrix_for_element",
]

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class GammaBasis:
    """Four 4x4 matrices with {gamma_mu, gamma_nu} = 2 eta_mu_nu."""

    matrices: np.ndarray  # shape (4, 4, 4), complex

    def __post_init__(self):
        g = np.asarray(self.matrices, dtype=complex)
        if g.shape != (4, 4, 4):
            raise ValueError(f"gamma basis must have shape (4, 4, 4), got {g.shape}")
        g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "matrices", g)
        if self.anticommutator_residual() > 1e-12:
            raise ValueError("gamma matrices do not satisfy the (-+++) Clifford relations")

    @classmethod
    def standard(cls) -> "GammaBasis":
        """Dirac-style basis adapted to (-+++).

        Multiplying the familiar diag/off-diag Pauli-block basis by i flips
        the squares so the anticommutator lands on 2 eta with eta =
        diag(-1, 1, 1, 1).
        """
        g0 = 1j * np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
        spatial = []
        for s in _PAULI:
            m = np.zeros((4, 4), dtype=complex)
            m[:2, 2:] = s
            m[2:, :2] = -s
            spatial.append(1j * m)
        return cls(np.stack([g0, *spatial]))

    def anticommutator_residual(self) -> float:
        """Max deviation of {gamma_mu, gamma_nu} from 2 eta_mu_nu over all pairs."""
        g = self.matrices
        worst = 0.0
        for mu in range(4):
            for nu in range(mu, 4):
                anti = g[mu] @ g[nu] + g[nu] @ g[mu]
                worst = max(worst, float(np.abs(anti - 2 * ETA[mu, nu] * np.eye(4)).max()))
        return worst


def sigma_tensor(gamma: GammaBasis) -> np.ndarray:
    """Spinor generator tensor sigma[mu, nu] = (i/2) [gamma_mu, gamma_nu].

    Antisymmetric in (mu, nu) by construction; shape (4, 4, 4, 4).
    """
    g = gamma.matrices
    sig = np.zeros((4, 4, 4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(mu + 1, 4):
            s = 0.5j * (g[mu] @ g[nu] - g[nu] @ g[mu])
            sig[mu, nu] = s
            sig[nu, mu] = -s
    return sig


@dataclass(frozen=True)
class FieldRep:
    """A rule mapping group parameters to an n x n component matrix."""

    kind: str
    n: int
    gamma: GammaBasis | None = None
    charge: float | None = None
    unit_charge: float | None = None
    rule: Callable[[np.ndarray], np.ndarray] | None = None
    nparams: int = 6

    @classmethod
    def scalar(cls) -> "FieldRep":
        return cls("scalar", 1)

    @classmethod
    def vector(cls) -> "FieldRep":
        return cls("vector", 4)

    @classmethod
    def spinor(cls, gamma: GammaBasis | None = None) -> "FieldRep":
        return cls("spinor", 4, gamma=gamma if gamma is not None else GammaBasis.standard())

    @classmethod
    def phase(cls, q: float, e: float) -> "FieldRep":
        if e == 0:
            raise ValueError("unit charge must be nonzero")
        return cls("phase", 1, charge=float(q), unit_charge=float(e), nparams=1)

    @classmethod
    def custom(cls, rule: Callable[[np.ndarray], np.ndarray], n: int, nparams: int) -> "FieldRep":
        """Wrap a user rule params -> n x n matrix; must be identity at zero."""
        rep = cls("custom", n, rule=rule, nparams=nparams)
        ident = np.asarray(rule(np.zeros(nparams)), dtype=complex)
        if ident.shape != (n, n) or np.abs(ident - np.eye(n)).max() > 1e-12:
            raise ValueError("custom rule does not evaluate to the identity at zero parameters")
        return rep

    def matrix(self, params: np.ndarray | float) -> np.ndarray:
        return rep_matrix(self, params)


def _spinor_generator_sum(rep: FieldRep, omega: np.ndarray) -> np.ndarray:
    sig = sigma_tensor(rep.gamma)
    total = np.zeros((4, 4), dtype=complex)
    for w, (a, b) in zip(omega, PLANES):
        total += w * sig[a, b]
    return total


def rep_matrix(rep: FieldRep, params: np.ndarray | float) -> np.ndarray:
    """Evaluate the representation matrix at the given group parameters.

    Scalar/vector/spinor take the 6-vector of rotation/boost parameters;
    phase takes a single real parameter; custom takes whatever its rule
    declares.  Always the identity at zero parameters.
    """
    p = np.atleast_1d(np.asarray(params, dtype=float))
    if not np.all(np.isfinite(p)):
        raise ValueError("representation parameters must be finite")
    if rep.kind == "scalar":
        return np.eye(1, dtype=complex)
    if rep.kind == "vector":
        if p.shape != (6,):
            raise ValueError(f"vector representation expects 6 parameters, got shape {p.shape}")
        return lorentz_exp(p).matrix.astype(complex)
    if rep.kind == "spinor":
        if p.shape != (6,):
            raise ValueError(f"spinor representation expects 6 parameters, got shape {p.shape}")
        return expm(-0.5j * _spinor_generator_sum(rep, p))
    if rep.kind == "phase":
        if p.size != 1:
            raise ValueError("phase representation expects a single parameter")
        b = float(p[0])
        return np.array([[np.exp(-(rep.charge / (1j * rep.unit_charge)) * b)]], dtype=complex)
    if rep.kind == "custom":
        if p.shape != (rep.nparams,):
            raise ValueError(f"custom representation expects {rep.nparams} parameters, got shape {p.shape}")
        return np.asarray(rep.rule(p), dtype=complex)
    raise ValueError(f"unknown representation kind {rep.kind!r}")


def dual_rep_matrix(rep: FieldRep, params: np.ndarray | float) -> np.ndarray:
    """Transpose of ``rep_matrix``; the matrix acting on dual components."""
    return rep_matrix(rep, params).T


def homomorphism_check(
    rep: FieldRep, params1: np.ndarray | float, params2: np.ndarray | float
) -> tuple[float, int]:
    """Residual of rep(g1) rep(g2) against rep(g1 g2), up to sign.

    The product element's parameters are recovered through the principal
    matrix log of the combined Lorentz matrix (parameters simply add for
    the abelian phase variant).  Returns ``(residual, sign)`` where
    ``residual`` is the max-entry deviation minimised over sign and
    ``sign`` is the minimiser; only the spinor variant can report -1.
    """
    lhs = rep_matrix(rep, params1) @ rep_matrix(rep, params2)
    if rep.kind in ("phase", "custom"):
        combined = np.atleast_1d(np.asarray(params1, dtype=float)) + np.atleast_1d(
            np.asarray(params2, dtype=float)
        )
    else:
        product = lorentz_exp(np.asarray(params1, dtype=float)).matrix @ lorentz_exp(
            np.asarray(params2, dtype=float)
        ).matrix
        combined = lorentz_log_params(product)
    rhs = rep_matrix(rep, combined)
    res_plus = float(np.abs(lhs - rhs).max())
    if rep.kind != "spinor":
        return res_plus, 1
    res_minus = float(np.abs(lhs + rhs).max())
    return (res_plus, 1) if res_plus <= res_minus else (res_minus, -1)


def rep_matrix_for_element(rep: FieldRep, g: PoincareElement) -> np.ndarray:
    """Representation matrix attached to a Poincare element.

    Scalar and vector read the matrix off directly; spinor needs the
    exponential coordinates and falls back to the matrix log when the
    element was not built from parameters.  Translations never enter.
    """
    if rep.kind == "scalar":
        return np.eye(1, dtype=complex)
    if rep.kind == "vector":
        return g.matrix.astype(complex)
    if rep.kind == "spinor":
        params = g.params
        if params is None:
            params = lorentz_log_params(g.matrix)
        return rep_matrix(rep, params)
    raise ValueError(f"representation kind {rep.kind!r} is not a spacetime representation")
