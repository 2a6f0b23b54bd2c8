"""Residual systems for the four parallelism conditions on the *-Ricci operator.

Each condition is evaluated pointwise in the adapted frame.  A condition
holds when its residual is below ``HOLDS_EPS`` (1e-8 unless overridden).
The non-Hopf obstruction certificates walk the chain of scalar constraints
that the condition forces and record every step in an :class:`ObstructionTrace`.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .curvature import CurvatureTensor, riemann, star_ricci, structure_jacobi
from .frame import AmbientSpace, operator_norm, phi_operator
from .models import (
    HopfModel,
    NonHopfFrameData,
    connection_along_xi_hopf,
    connection_along_xi_nonhopf,
    shape_hopf,
    shape_nonhopf,
    shape_xi_derivative_hopf,
    shape_xi_derivative_nonhopf,
)

HOLDS_EPS = 1e-8
SCHEMA_VERSION = 1

CONTRADICTION = "contradiction_certified"
CONSISTENT = "consistent"
INCONCLUSIVE = "inconclusive"


class NoPseudoParallelFunction(ValueError):
    """The 81 pseudo-parallel components admit no common factor L."""

    def __init__(self, lsq_L: float, residual: float):
        super().__init__(f"no function L exists pointwise (best L={lsq_L:.6g}, residual {residual:.3e})")
        self.lsq_L = lsq_L
        self.residual = residual


# --- residuals -------------------------------------------------------------


def vanishing_residual(s: np.ndarray) -> float:
    return operator_norm(s)


def _wedge_operator(i: int, j: int) -> np.ndarray:
    """Z -> (e_i ^ e_j)Z = g(e_j, Z)e_i - g(e_i, Z)e_j."""
    w = np.zeros((3, 3))
    w[i, j] += 1.0
    w[j, i] -= 1.0
    return w


_WEDGES = np.array([[_wedge_operator(i, j) for j in range(3)] for i in range(3)])


def _derivation_terms(r: CurvatureTensor, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(R(X,Y).S*)Z and ((X^Y).S*)Z for all 27 frame triples.

    Both arrays are indexed ``[i, j, k, :]`` for X, Y, Z = e_i, e_j, e_k.  A
    derivation acting on S* is the commutator T S* - S* T of its operator T.
    """
    lhs = r.data @ s - s @ r.data
    rhs = _WEDGES @ s - s @ _WEDGES
    return lhs.transpose(0, 1, 3, 2), rhs.transpose(0, 1, 3, 2)


def semi_parallel_components(r: CurvatureTensor, s: np.ndarray) -> np.ndarray:
    """``out[i, j, k]`` = R(e_i,e_j) S* e_k - S*(R(e_i,e_j) e_k)."""
    return _derivation_terms(r, s)[0]


def semi_parallel_residual(r: CurvatureTensor, s: np.ndarray) -> float:
    return operator_norm(semi_parallel_components(r, s))


@dataclass(frozen=True)
class PseudoParallelFit:
    L: float | None
    residual: float
    degenerate: bool

    def nonzero(self, eps: float = HOLDS_EPS) -> bool:
        return self.L is not None and abs(self.L) > eps


def pseudo_parallel_solve(r: CurvatureTensor, s: np.ndarray, eps: float = HOLDS_EPS) -> PseudoParallelFit:
    """Least-squares L in (R.S*) = L (X^Y).S* over all 81 scalar components.

    If both sides vanish identically the fit is degenerate and L is left
    undetermined.  Raises :class:`NoPseudoParallelFunction` if the post-fit
    residual exceeds ``eps``.
    """
    lhs, rhs = _derivation_terms(r, s)
    a = lhs.ravel()
    b = rhs.ravel()
    bb = float(b @ b)
    if np.max(np.abs(b)) <= eps:
        res = operator_norm(a)
        if res > eps:
            raise NoPseudoParallelFunction(float("nan"), res)
        return PseudoParallelFit(None, res, True)
    L = float(a @ b) / bb
    res = operator_norm(a - L * b)
    if res > eps:
        raise NoPseudoParallelFunction(L, res)
    return PseudoParallelFit(L, res, False)


def _xi_derivative_of_star_ricci(a: np.ndarray, xi_a: np.ndarray, c: float) -> np.ndarray:
    """Entry-wise xi-derivative of the S* frame matrix; phi has constant entries."""
    phi = phi_operator()
    pa, pda = phi @ a, phi @ xi_a
    return -(pda @ pa + pa @ pda)


def _nabla_xi_star_ricci(s: np.ndarray, ds: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """(nabla_xi S*) as a frame matrix: column j is nabla_xi(S* e_j) - S*(nabla_xi e_j).

    With S* e_j = sum_i s_ij e_i and nabla_xi e_j = sum_k gamma_kj e_k the
    product rule gives ds + gamma s - s gamma.
    """
    return ds + gamma @ s - s @ gamma


def xi_parallel_components_nonhopf(d: NonHopfFrameData, c: float) -> np.ndarray:
    a = shape_nonhopf(d)
    s = star_ricci(a, AmbientSpace(c))
    ds = _xi_derivative_of_star_ricci(a, shape_xi_derivative_nonhopf(d), c)
    gam = connection_along_xi_nonhopf(d).matrix()
    return _nabla_xi_star_ricci(s, ds, gam)


def xi_parallel_residual_nonhopf(d: NonHopfFrameData, c: float) -> float:
    return operator_norm(xi_parallel_components_nonhopf(d, c))


def xi_parallel_components_hopf(m: HopfModel, kappa: float = 0.0) -> np.ndarray:
    a = shape_hopf(m)
    s = star_ricci(a, m.space)
    ds = _xi_derivative_of_star_ricci(a, shape_xi_derivative_hopf(m), m.c)
    gam = connection_along_xi_hopf(m, kappa).matrix()
    return _nabla_xi_star_ricci(s, ds, gam)


def xi_parallel_residual_hopf(m: HopfModel, kappa: float = 0.0) -> float:
    return operator_norm(xi_parallel_components_hopf(m, kappa))


# --- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    residual: float
    L: float | None = None
    nonzero: bool | None = None
    degenerate: bool | None = None


def _round12(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _round12(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round12(v) for v in x]
    return x


@dataclass(frozen=True)
class ConditionReport:
    vanishing: ConditionResult
    semi_parallel: ConditionResult
    pseudo_parallel: ConditionResult
    xi_parallel: ConditionResult
    model: dict = field(default_factory=dict)
    branches: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out: dict = {"schema": SCHEMA_VERSION, "model": dict(self.model), "branches": list(self.branches)}
        for name in ("vanishing", "semi_parallel", "xi_parallel"):
            cond = getattr(self, name)
            out[name] = {"holds": cond.holds, "residual": cond.residual}
        pp = self.pseudo_parallel
        out["pseudo_parallel"] = {
            "holds": pp.holds,
            "residual": pp.residual,
            "L": pp.L,
            "nonzero": pp.nonzero,
            "degenerate": pp.degenerate,
        }
        return _round12(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> ConditionReport:
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        conds = {}
        for name in ("vanishing", "semi_parallel", "xi_parallel"):
            conds[name] = ConditionResult(bool(data[name]["holds"]), float(data[name]["residual"]))
        pp = data["pseudo_parallel"]
        conds["pseudo_parallel"] = ConditionResult(
            bool(pp["holds"]), float(pp["residual"]), pp.get("L"), pp.get("nonzero"), pp.get("degenerate")
        )
        return cls(model=dict(data.get("model", {})), branches=tuple(data.get("branches", ())), **conds)

    @classmethod
    def from_json(cls, text: str) -> ConditionReport:
        return cls.from_dict(json.loads(text))

    def rounded(self) -> ConditionReport:
        """The report as it reads back after a JSON round trip."""
        return self.from_dict(self.to_dict())


def hopf_branches(m: HopfModel, eps: float = HOLDS_EPS) -> tuple[str, ...]:
    """Which xi-parallel classification branches the model instantiates."""
    out = []
    if abs(m.lam - m.nu) < eps:
        out.append("type_a")
    if abs(m.alpha) < eps:
        out.append("a_xi_zero")
    if (
        abs(m.xi_d_lambda) < eps
        and abs(m.xi_d_nu) < eps
        and abs(m.lam - m.nu) >= eps
        and abs(m.alpha) >= eps
    ):
        out.append("xi_constant_curvatures")
    return tuple(out)


def classify_hopf(m: HopfModel, eps: float = HOLDS_EPS, kappa: float = 0.0) -> ConditionReport:
    a = shape_hopf(m)
    r = riemann(a, m.space)
    s = star_ricci(a, m.space)
    van = vanishing_residual(s)
    semi = semi_parallel_residual(r, s)
    try:
        fit = pseudo_parallel_solve(r, s, eps)
        pseudo = ConditionResult(True, fit.residual, fit.L, fit.nonzero(eps), fit.degenerate)
    except NoPseudoParallelFunction as exc:
        pseudo = ConditionResult(False, exc.residual, None, False, False)
    xi = xi_parallel_residual_hopf(m, kappa)
    return ConditionReport(
        vanishing=ConditionResult(van < eps, van),
        semi_parallel=ConditionResult(semi < eps, semi),
        pseudo_parallel=pseudo,
        xi_parallel=ConditionResult(xi < eps, xi),
        model=m.describe(),
        branches=hopf_branches(m, eps),
    )


# --- non-Hopf obstruction chains ------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    constraint: str
    residual: float
    step: str


@dataclass
class ObstructionTrace:
    condition: str
    steps: list[TraceStep] = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    axioms: list[str] = field(default_factory=list)

    def add(self, constraint: str, residual: float, step: str) -> None:
        self.steps.append(TraceStep(constraint, float(residual), step))

    def to_dict(self) -> dict:
        return asdict(self)


def _matches(engine_value: float, formula_value: float, tol: float) -> bool:
    return abs(engine_value - formula_value) <= tol * max(1.0, abs(formula_value))


def certify_semi_parallel_obstruction(
    d: NonHopfFrameData, c: float, eps: float = HOLDS_EPS, tol: float = 1e-12
) -> ObstructionTrace:
    """Walk the constraints that semi-parallelism forces at a non-Hopf point.

    Each scalar constraint is first checked against the corresponding
    component of the 27-triple system computed by the curvature engine.
    """
    a = shape_nonhopf(d)
    space = AmbientSpace(c)
    r = riemann(a, space)
    s = star_ricci(a, space)
    comp = semi_parallel_components(r, s)  # [i, j, k] -> vector
    trace = ObstructionTrace("semi_parallel")

    # <(R(U,phiU).S*)U, phiU> = beta^2 delta^2
    v = comp[0, 1, 0][1]
    if not _matches(v, d.beta**2 * d.delta**2, tol):
        trace.add("component (U,phiU,U).phiU = beta^2 delta^2", v, "delta step: engine mismatch")
        return trace
    trace.add("delta = 0", d.delta, "(U,phiU,U) paired with phiU")
    if abs(d.delta) > eps:
        trace.verdict = CONSISTENT
        return trace

    # (R(phiU,xi).S*)phiU = (c/4 + alpha mu) (beta mu U, ., -(c + gamma mu) xi)
    w = comp[1, 2, 1]
    k_am = c / 4 + d.alpha * d.mu
    expected = np.array([d.beta * d.mu * k_am, 0.0, -(c + d.gamma * d.mu) * k_am])
    if operator_norm(w - expected) > tol * max(1.0, operator_norm(expected)):
        trace.add("component (phiU,xi,phiU)", operator_norm(w - expected), "mu step: engine mismatch")
        return trace
    trace.add("mu (c/4 + alpha mu) = 0", d.mu * k_am, "(phiU,xi,phiU) paired with U")
    trace.add("(c + gamma mu)(c/4 + alpha mu) = 0", (c + d.gamma * d.mu) * k_am, "(phiU,xi,phiU) paired with xi")
    if abs(k_am) > eps:
        # the first product forces mu = 0, the second then reads c * (c/4) = 0
        forced = c * (c / 4)
        trace.add("c/4 + alpha mu != 0 => mu = 0 => c^2/4 = 0", forced, "branch c/4 + alpha mu != 0")
        trace.verdict = CONTRADICTION if abs(c) > eps else INCONCLUSIVE
        return trace
    trace.add("c/4 + alpha mu = 0", k_am, "remaining branch")

    # (R(U,xi).S*)U paired with U = beta mu (c/4 + alpha gamma - beta^2)
    u = comp[0, 2, 0][0]
    k_ag = c / 4 + d.alpha * d.gamma - d.beta**2
    if not _matches(u, d.beta * d.mu * k_ag, tol):
        trace.add("component (U,xi,U).U", u, "jacobi step: engine mismatch")
        return trace
    trace.add("mu (c/4 + alpha gamma - beta^2) = 0", d.mu * k_ag, "(U,xi,U) paired with U")
    if abs(k_ag) > eps:
        # mu = 0 would turn c/4 + alpha mu = 0 into c/4 = 0
        trace.add("c/4 + alpha gamma != beta^2 => mu = 0 => c/4 = 0", c / 4, "branch c/4 + alpha gamma != beta^2")
        trace.verdict = CONTRADICTION if abs(c) > eps else INCONCLUSIVE
        return trace
    trace.add("c/4 + alpha gamma = beta^2", k_ag, "remaining branch")

    lnorm = operator_norm(structure_jacobi(a, space))
    trace.add("structure Jacobi operator l = 0", lnorm, "l U = l phiU = l xi = 0")
    trace.axioms.append("no real hypersurface in a non-flat complex space form has vanishing structure Jacobi operator")
    trace.verdict = CONTRADICTION if lnorm < eps else INCONCLUSIVE
    return trace


def phiU_derivative_of_alpha_gamma_minus_beta_sq(d: NonHopfFrameData, c: float) -> float:
    """(phiU)(alpha gamma - beta^2) with the derivatives taken from the reduced Codazzi system.

    Uses (phiU)alpha = beta(alpha + kappa3), (phiU)beta = beta^2 + beta kappa1 + c/2,
    (phiU)gamma = kappa1 gamma + beta gamma, valid where delta = mu = 0.
    """
    pa = d.beta * (d.alpha + d.kappa3)
    pb = d.beta**2 + d.beta * d.kappa1 + c / 2
    pg = d.kappa1 * d.gamma + d.beta * d.gamma
    return pa * d.gamma + d.alpha * pg - 2 * d.beta * pb


def certify_pseudo_parallel_obstruction(
    d: NonHopfFrameData, c: float, eps: float = HOLDS_EPS, tol: float = 1e-10
) -> ObstructionTrace:
    """Walk the constraints that pseudo-parallelism forces at a non-Hopf point."""
    a = shape_nonhopf(d)
    space = AmbientSpace(c)
    r = riemann(a, space)
    s = star_ricci(a, space)
    lhs, rhs = _derivation_terms(r, s)
    trace = ObstructionTrace("pseudo_parallel")

    def gate(name: str, value: float, step: str) -> bool:
        trace.add(name, value, step)
        if abs(value) > eps:
            trace.verdict = CONSISTENT
            return False
        return True

    # (U,phiU,U) paired with phiU: the L-term vanishes there, leaving beta^2 delta^2
    v = lhs[0, 1, 0][1]
    if abs(rhs[0, 1, 0][1]) > tol or not _matches(v, d.beta**2 * d.delta**2, tol):
        trace.add("component (U,phiU,U).phiU", v, "delta step: engine mismatch")
        return trace
    if not gate("delta = 0", d.delta, "(U,phiU,U) paired with phiU"):
        return trace

    # (U,phiU,xi) paired with phiU: L beta mu = 0 with L != 0
    if not _matches(rhs[0, 1, 2][1], -d.beta * d.mu, tol) or abs(lhs[0, 1, 2][1]) > tol:
        trace.add("component (U,phiU,xi).phiU", rhs[0, 1, 2][1], "mu step: engine mismatch")
        return trace
    if not gate("mu = 0", d.mu, "(U,phiU,xi) paired with phiU"):
        return trace

    # (phiU,xi,phiU) paired with xi: -c(c - 4L)/4 = -c/4 * c + L c  => L = c/4
    a_xi, b_xi = lhs[1, 2, 1][2], rhs[1, 2, 1][2]
    if not (_matches(a_xi, -c * c / 4, tol) and _matches(b_xi, -c, tol)):
        trace.add("component (phiU,xi,phiU).xi", a_xi, "L step: engine mismatch")
        return trace
    L = a_xi / b_xi
    trace.add("L = c/4", L - c / 4, "(phiU,xi,phiU) paired with xi")

    # (U,xi,U) paired with xi at L = c/4: -c (alpha gamma - beta^2)
    w = lhs[0, 2, 0][2] - L * rhs[0, 2, 0][2]
    if not _matches(w, -c * (d.alpha * d.gamma - d.beta**2), tol):
        trace.add("component (U,xi,U).xi", w, "alpha gamma step: engine mismatch")
        return trace
    if not gate("alpha gamma = beta^2", d.alpha * d.gamma - d.beta**2, "(U,xi,U) paired with xi"):
        return trace

    # first Codazzi equation with delta = mu = 0 (so xi delta = 0)
    codazzi = d.gamma * d.kappa3 - d.beta * d.kappa1 - c / 4
    trace.add("gamma kappa3 = beta kappa1 + c/4", codazzi, "reduced Codazzi system")
    if abs(codazzi) > eps * max(1.0, abs(d.gamma * d.kappa3)):
        trace.verdict = INCONCLUSIVE
        return trace

    deriv = phiU_derivative_of_alpha_gamma_minus_beta_sq(d, c)
    # algebraically the derivative equals -3 beta c / 4, a nonzero multiple of c
    forced = -0.75 * d.beta * c
    trace.add("(phiU)(alpha gamma - beta^2) = -3 beta c / 4", deriv - forced, "differentiate alpha gamma = beta^2")
    scale = max(1.0, abs(d.beta * d.gamma * d.kappa3), abs(d.beta) ** 3, abs(d.alpha * d.gamma * d.kappa1))
    if abs(deriv - forced) <= 1e-9 * scale and abs(forced) > eps:
        trace.add("c = 0", c, "derivative must vanish; beta != 0 forces c = 0")
        trace.verdict = CONTRADICTION
    return trace


def certify_xi_parallel_obstruction(
    d: NonHopfFrameData, c: float, eps: float = HOLDS_EPS, tol: float = 1e-12
) -> ObstructionTrace:
    """Walk the constraints that xi-parallelism forces at a non-Hopf point."""
    comp = xi_parallel_components_nonhopf(d, c)
    trace = ObstructionTrace("xi_parallel")
    # (nabla_xi S*) xi paired with xi
    xx = comp[2, 2]
    if not _matches(xx, d.beta**2 * d.delta, tol):
        trace.add("component xi.xi", xx, "delta step: engine mismatch")
        return trace
    trace.add("delta = 0", d.delta, "X = xi paired with xi")
    if abs(d.delta) > eps:
        trace.verdict = CONSISTENT
        return trace
    # delta vanishes on an open set, so xi(delta) = 0 there
    e2 = comp[1, 2]
    expected = d.beta * (d.mu * d.kappa3 - c - d.gamma * d.mu) - d.beta * d.d("xi", "delta")
    if not _matches(e2, expected, tol):
        trace.add("component xi.phiU", e2, "kappa3 step: engine mismatch")
        return trace
    trace.add("mu kappa3 = c + gamma mu", d.mu * d.kappa3 - c - d.gamma * d.mu, "X = xi paired with phiU")
    e12 = comp[0, 1]
    if not _matches(e12, d.beta**2 * d.mu, tol):
        trace.add("component phiU.U", e12, "mu step: engine mismatch")
        return trace
    trace.add("mu = 0", d.mu, "X = phiU paired with U")
    trace.add("mu = 0 => c = 0", c, "substitute into mu kappa3 = c + gamma mu")
    trace.verdict = CONTRADICTION if abs(c) > eps else INCONCLUSIVE
    return trace
