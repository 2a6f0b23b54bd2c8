"""Shape operators and connection data for Hopf and non-Hopf hypersurfaces.

Hopf models come from the homogeneous catalog (CH2 rows A0, A11, A12, B and
the CP2 Takagi types A1, A2, B) or from user-supplied curvatures
(``abstract-hopf``).  Non-Hopf points are described by the scalars of the
frame {U, phi U, xi} with ``A xi = alpha xi + beta U``, ``beta != 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .frame import DEFAULT_EPS, E1, E2, XI, AmbientSpace, phi_operator

A0 = "a0"
A11 = "a11"
A12 = "a12"
B_HYP = "b"
A1_PROJ = "a1"
A2_PROJ = "a2"
B_PROJ = "b"
ABSTRACT_HOPF = "abstract-hopf"

HYPERBOLIC_KINDS = (A0, A11, A12, B_HYP)
PROJECTIVE_KINDS = (A1_PROJ, A2_PROJ, B_PROJ)
TYPE_A_KINDS = {"ch2": (A0, A11, A12), "cp2": (A1_PROJ, A2_PROJ)}

NONHOPF_SCALARS = ("alpha", "beta", "gamma", "delta", "mu")
DIRECTIONS = ("e1", "e2", "xi")

EQ_B_TOL = 1e-10


class ModelDomainError(ValueError):
    """Radius or kind outside the legal domain of a catalog entry."""


class EqBInconsistent(ValueError):
    """A catalog entry failed the Hopf relation between its curvatures."""


def eq_b_residual(alpha: float, lam: float, nu: float, c: float) -> float:
    """lambda*nu - (alpha/2)(lambda + nu) - c/4."""
    return lam * nu - 0.5 * alpha * (lam + nu) - 0.25 * c


def compute_nu(alpha: float, lam: float, c: float, eps: float = DEFAULT_EPS) -> float:
    """Partner curvature on phi W given A W = lambda W, from the Hopf relation.

    Raises ValueError when ``lambda == alpha/2``: the relation then fixes
    ``lambda*alpha/2 + c/4`` but leaves nu free.
    """
    denom = lam - 0.5 * alpha
    if abs(denom) <= eps:
        raise ValueError("nu undetermined by the Hopf relation (lambda = alpha/2)")
    return (0.5 * lam * alpha + 0.25 * c) / denom


@dataclass(frozen=True)
class HopfModel:
    space: AmbientSpace
    kind: str
    alpha: float
    lam: float
    nu: float
    radius: float | None = None
    xi_d_lambda: float = 0.0
    xi_d_nu: float = 0.0

    @property
    def c(self) -> float:
        return self.space.c

    @property
    def eq_b_residual(self) -> float:
        return eq_b_residual(self.alpha, self.lam, self.nu, self.c)

    def describe(self) -> dict:
        return {
            "space": self.space.name,
            "c": self.c,
            "kind": self.kind,
            "radius": self.radius,
            "alpha": self.alpha,
            "lambda": self.lam,
            "nu": self.nu,
            "xi_d_lambda": self.xi_d_lambda,
            "xi_d_nu": self.xi_d_nu,
        }


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def _cot(x: float) -> float:
    return 1.0 / math.tan(x)


def radius_domain(space: AmbientSpace, kind: str) -> tuple[float, float] | None:
    """Open interval of legal radii, or None for kinds without a radius."""
    if space.is_hyperbolic:
        if kind == A0:
            return None
        if kind in (A11, A12, B_HYP):
            return (0.0, math.inf)
    else:
        if kind in (A1_PROJ, A2_PROJ):
            return (0.0, math.pi / 2)
        if kind == B_PROJ:
            # cot(r - pi/4) blows up at r = pi/4
            return (0.0, math.pi / 4)
    raise ModelDomainError(f"kind {kind!r} is not in the {space.name} catalog")


def catalog_kinds(space: AmbientSpace) -> tuple[str, ...]:
    return HYPERBOLIC_KINDS if space.is_hyperbolic else PROJECTIVE_KINDS


def _hyperbolic_curvatures(kind: str, r: float | None) -> tuple[float, float, float]:
    if kind == A0:
        return 2.0, 1.0, 1.0
    if kind == A11:
        return 2.0 * _coth(2 * r), _coth(r), _coth(r)
    if kind == A12:
        return 2.0 * _coth(2 * r), math.tanh(r), math.tanh(r)
    # type B
    return 2.0 * math.tanh(2 * r), math.tanh(r), _coth(r)


def _projective_curvatures(kind: str, r: float, c: float) -> tuple[float, float, float]:
    alpha = 2.0 * _cot(2 * r)
    if kind in (A1_PROJ, A2_PROJ):
        lam = _cot(r)
    else:
        lam = _cot(r - math.pi / 4)
    return alpha, lam, compute_nu(alpha, lam, c)


def catalog_model(space: AmbientSpace, kind: str, radius: float | None = None) -> HopfModel:
    """Homogeneous Hopf model of the given kind; fails unless the Hopf relation holds."""
    if space.c not in (4.0, -4.0):
        raise ModelDomainError("catalog models are defined for c = 4 (CP2) and c = -4 (CH2)")
    kind = kind.lower()
    domain = radius_domain(space, kind)
    if domain is None:
        if radius is not None:
            raise ModelDomainError(f"kind {kind!r} takes no radius")
    else:
        if radius is None:
            raise ModelDomainError(f"kind {kind!r} requires a radius")
        lo, hi = domain
        if not (lo < radius < hi) or not math.isfinite(radius):
            raise ModelDomainError(f"radius {radius!r} outside ({lo:g}, {hi:g}) for kind {kind!r}")
    if space.is_hyperbolic:
        alpha, lam, nu = _hyperbolic_curvatures(kind, radius)
    else:
        alpha, lam, nu = _projective_curvatures(kind, radius, space.c)
    res = eq_b_residual(alpha, lam, nu, space.c)
    scale = max(1.0, abs(alpha), abs(lam * nu))
    if abs(res) > EQ_B_TOL * scale:
        raise EqBInconsistent(f"{space.name} {kind} at r={radius}: Hopf relation residual {res:.3e}")
    return HopfModel(space, kind, alpha, lam, nu, radius)


def abstract_hopf(
    space: AmbientSpace,
    alpha: float,
    lam: float,
    nu: float | None = None,
    xi_d_lambda: float = 0.0,
    xi_d_nu: float = 0.0,
) -> HopfModel:
    """Hopf point with free curvatures; ``nu`` defaults to the Hopf-relation partner of ``lam``."""
    if nu is None:
        nu = compute_nu(alpha, lam, space.c)
    return HopfModel(space, ABSTRACT_HOPF, alpha, lam, nu, None, xi_d_lambda, xi_d_nu)


def shape_hopf(m: HopfModel) -> np.ndarray:
    return np.diag([m.lam, m.nu, m.alpha]).astype(float)


def _zero_derivs() -> dict:
    return {(d, s): 0.0 for d in DIRECTIONS for s in NONHOPF_SCALARS}


@dataclass(frozen=True)
class NonHopfFrameData:
    """Scalars of a non-Hopf point in the frame (U, phi U, xi).

    ``derivs`` maps ``(direction, scalar)`` to a directional derivative, e.g.
    ``("xi", "delta")`` for xi(delta); missing entries are zero.
    """

    alpha: float
    beta: float
    gamma: float = 0.0
    delta: float = 0.0
    mu: float = 0.0
    kappa1: float = 0.0
    kappa2: float = 0.0
    kappa3: float = 0.0
    derivs: Mapping[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for direction, scalar in self.derivs:
            if direction not in DIRECTIONS or scalar not in NONHOPF_SCALARS:
                raise KeyError(f"bad derivative key {(direction, scalar)!r}")

    def d(self, direction: str, scalar: str) -> float:
        return float(self.derivs.get((direction, scalar), 0.0))


def _require_nonhopf(d: NonHopfFrameData) -> None:
    if d.beta == 0:
        raise ValueError("beta = 0 is a Hopf point; use a HopfModel instead")


def shape_nonhopf(d: NonHopfFrameData) -> np.ndarray:
    """A U = gamma U + delta phiU + beta xi, A phiU = delta U + mu phiU, A xi = alpha xi + beta U."""
    _require_nonhopf(d)
    return np.array(
        [
            [d.gamma, d.delta, d.beta],
            [d.delta, d.mu, 0.0],
            [d.beta, 0.0, d.alpha],
        ]
    )


def shape_xi_derivative_nonhopf(d: NonHopfFrameData) -> np.ndarray:
    """Entry-wise xi-derivative of the shape operator's frame matrix."""
    x = {s: d.d("xi", s) for s in NONHOPF_SCALARS}
    return np.array(
        [
            [x["gamma"], x["delta"], x["beta"]],
            [x["delta"], x["mu"], 0.0],
            [x["beta"], 0.0, x["alpha"]],
        ]
    )


def shape_xi_derivative_hopf(m: HopfModel) -> np.ndarray:
    # alpha is constant on a Hopf hypersurface
    return np.diag([m.xi_d_lambda, m.xi_d_nu, 0.0])


@dataclass(frozen=True)
class ConnectionAlongXi:
    """Covariant derivatives of the frame vectors along xi."""

    d_e1: np.ndarray
    d_e2: np.ndarray
    d_xi: np.ndarray

    def matrix(self) -> np.ndarray:
        """Column j is nabla_xi of frame vector j."""
        return np.column_stack([self.d_e1, self.d_e2, self.d_xi])

    def metric_defect(self) -> float:
        """Max |g(D e_i, e_j) + g(e_i, D e_j)|; zero for a metric connection."""
        gam = self.matrix()
        return float(np.max(np.abs(gam + gam.T)))


def connection_along_xi_nonhopf(d: NonHopfFrameData) -> ConnectionAlongXi:
    return ConnectionAlongXi(
        d_e1=d.kappa3 * E2,
        d_e2=-d.kappa3 * E1 - d.beta * XI,
        d_xi=d.beta * E2,
    )


def connection_along_xi_hopf(m: HopfModel, kappa: float = 0.0) -> ConnectionAlongXi:
    """nabla_xi W = kappa phiW with a free gauge scalar kappa; nabla_xi xi = phi A xi = 0."""
    d_xi = phi_operator() @ (shape_hopf(m) @ XI)
    return ConnectionAlongXi(d_e1=kappa * E2, d_e2=-kappa * E1, d_xi=d_xi)


@dataclass(frozen=True)
class CodazziDerivInputs:
    xi_delta: float = 0.0
    phiU_alpha: float = 0.0
    phiU_beta: float = 0.0
    U_delta: float = 0.0
    phiU_gamma: float = 0.0

    @classmethod
    def from_frame_data(cls, d: NonHopfFrameData) -> CodazziDerivInputs:
        return cls(
            xi_delta=d.d("xi", "delta"),
            phiU_alpha=d.d("e2", "alpha"),
            phiU_beta=d.d("e2", "beta"),
            U_delta=d.d("e1", "delta"),
            phiU_gamma=d.d("e2", "gamma"),
        )


def codazzi_rhs(d: NonHopfFrameData, c: float) -> tuple[float, float, float, float]:
    """Right-hand sides of the four scalar Codazzi equations on the non-Hopf frame.

    Order: xi(delta), (phiU)alpha, (phiU)beta, U(delta) - (phiU)gamma.
    """
    a, b, g_, dl, m = d.alpha, d.beta, d.gamma, d.delta, d.mu
    k1, k2, k3 = d.kappa1, d.kappa2, d.kappa3
    r1 = a * g_ + b * k1 + dl**2 + m * k3 + c / 4 - g_ * m - g_ * k3 - b**2
    r2 = a * b + b * k3 - 3 * b * m
    r3 = a * g_ + b * k1 + 2 * dl**2 + c / 2 - 2 * g_ * m + a * m
    r4 = m * k1 - k1 * g_ - b * g_ - 2 * dl * k2 - 2 * b * m
    return r1, r2, r3, r4


def codazzi_residuals(
    d: NonHopfFrameData, inputs: CodazziDerivInputs, c: float
) -> tuple[float, float, float, float]:
    """LHS - RHS of the four scalar Codazzi equations."""
    _require_nonhopf(d)
    r1, r2, r3, r4 = codazzi_rhs(d, c)
    return (
        inputs.xi_delta - r1,
        inputs.phiU_alpha - r2,
        inputs.phiU_beta - r3,
        inputs.U_delta - inputs.phiU_gamma - r4,
    )


def consistent_codazzi_inputs(d: NonHopfFrameData, c: float, phiU_gamma: float = 0.0) -> CodazziDerivInputs:
    """Derivative inputs that satisfy the Codazzi equations exactly at ``d``."""
    r1, r2, r3, r4 = codazzi_rhs(d, c)
    return CodazziDerivInputs(
        xi_delta=r1, phiU_alpha=r2, phiU_beta=r3, U_delta=r4 + phiU_gamma, phiU_gamma=phiU_gamma
    )
