"""Invariant suites run by ``star-ricci verify`` and by the acceptance tests.

Every suite returns a :class:`SuiteResult` carrying the worst residual seen
and the tolerance it was judged against.  Sampling uses a fixed seed so runs
are reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import conditions as cond
from .curvature import (
    curvature_defects,
    riemann,
    star_ricci,
    star_ricci_hopf_closed,
    star_ricci_nonhopf_closed,
    structure_jacobi,
    structure_jacobi_closed,
)
from .frame import AmbientSpace, operator_norm
from .models import (
    A0,
    A11,
    A12,
    B_HYP,
    NonHopfFrameData,
    abstract_hopf,
    catalog_kinds,
    catalog_model,
    compute_nu,
    radius_domain,
    shape_hopf,
    shape_nonhopf,
)
from .scan import NeverAttained, solve_vanishing_radius

SEED = 20140917
N_SAMPLES = 1000
CH2 = AmbientSpace.hyperbolic()
CP2 = AmbientSpace.projective()


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: max residual {self.max_residual:.3e} (tol {self.tolerance:.0e}) {self.detail}".rstrip()


def _rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def _nonzero(rng: np.random.Generator, lo: float = 0.2, hi: float = 3.0) -> float:
    return float(rng.choice([-1.0, 1.0]) * rng.uniform(lo, hi))


def random_nonhopf(rng: np.random.Generator) -> NonHopfFrameData:
    a, g_, d, m, k1, k2, k3 = rng.uniform(-3, 3, 7)
    return NonHopfFrameData(float(a), _nonzero(rng), float(g_), float(d), float(m), float(k1), float(k2), float(k3))


def random_hopf_triple(rng: np.random.Generator, c: float) -> tuple[float, float, float]:
    """(alpha, lambda, nu) satisfying the Hopf relation."""
    while True:
        alpha, lam = (float(v) for v in rng.uniform(-3, 3, 2))
        if abs(lam - alpha / 2) > 0.1:
            return alpha, lam, compute_nu(alpha, lam, c)


def radius_grid(space: AmbientSpace, kind: str, n: int = 100) -> list[float | None]:
    domain = radius_domain(space, kind)
    if domain is None:
        return [None]
    lo, hi = domain
    # stay off the focal/degenerate ends where coth, cot blow up
    hi = min(hi - 0.1, 3.0)
    return [float(r) for r in np.linspace(lo + 0.1, hi, n)]


def catalog_grid(n: int = 100):
    for space in (CH2, CP2):
        for kind in catalog_kinds(space):
            for r in radius_grid(space, kind, n):
                yield catalog_model(space, kind, r)


# --- suites ----------------------------------------------------------------


def suite_star_ricci_closed_forms() -> SuiteResult:
    rng = _rng(1)
    worst = 0.0
    for _ in range(N_SAMPLES):
        c = float(rng.choice([4.0, -4.0]))
        alpha, lam, nu = (float(v) for v in rng.uniform(-3, 3, 3))
        got = star_ricci(np.diag([lam, nu, alpha]), AmbientSpace(c))
        worst = max(worst, operator_norm(got - star_ricci_hopf_closed(alpha, lam, nu, c)))
    for _ in range(N_SAMPLES):
        c = float(rng.choice([4.0, -4.0]))
        d = random_nonhopf(rng)
        got = star_ricci(shape_nonhopf(d), AmbientSpace(c))
        worst = max(worst, operator_norm(got - star_ricci_nonhopf_closed(d, c)))
    return SuiteResult("star-Ricci closed forms (Hopf and non-Hopf)", worst < 1e-12, worst, 1e-12)


def suite_catalog_soundness() -> SuiteResult:
    worst = 0.0
    worst_b = 0.0
    for space in (CH2, CP2):
        for kind in catalog_kinds(space):
            for r in radius_grid(space, kind, 100):
                m = catalog_model(space, kind, r)
                worst = max(worst, abs(m.eq_b_residual))
                if space.is_hyperbolic and kind == B_HYP:
                    worst_b = max(worst_b, abs(m.lam * m.nu - 1.0))
    ok = worst < 1e-10 and worst_b < 1e-12
    return SuiteResult("catalog Hopf relation on 100 radii per kind", ok, worst, 1e-10, f"(CH2 type B |lambda nu - 1| {worst_b:.1e})")


def suite_vanishing() -> SuiteResult:
    eps = cond.HOLDS_EPS
    r_star = solve_vanishing_radius(CH2, A11)
    coth_err = abs(1.0 / math.tanh(r_star) - 2.0)
    problems = []
    if coth_err >= 1e-9:
        problems.append(f"|coth r*-2|={coth_err:.1e}")
    for kind in (A0, A12, B_HYP):
        for r in radius_grid(CH2, kind, 100):
            s = star_ricci(shape_hopf(catalog_model(CH2, kind, r)), CH2)
            if cond.vanishing_residual(s) < 3 - eps:
                problems.append(f"{kind} vanishing < 3 at r={r}")
                break
        try:
            solve_vanishing_radius(CH2, kind)
            problems.append(f"{kind} unexpectedly attains vanishing")
        except NeverAttained:
            pass
    a = shape_hopf(catalog_model(CH2, A11, r_star))
    semi_star = cond.semi_parallel_residual(riemann(a, CH2), star_ricci(a, CH2))
    if semi_star >= 1e-10:
        problems.append(f"semi residual at r* {semi_star:.1e}")
    for r in (0.4, 0.7, 1.2):
        a = shape_hopf(catalog_model(CH2, B_HYP, r))
        if cond.semi_parallel_residual(riemann(a, CH2), star_ricci(a, CH2)) <= 0.1:
            problems.append(f"type B semi residual small at r={r}")
    return SuiteResult(
        "vanishing only for the coth r = 2 geodesic sphere",
        not problems,
        max(coth_err, semi_star),
        1e-9,
        f"(r* = {r_star:.12g}) " + "; ".join(problems),
    )


def reduced_semi_parallel(alpha: float, lam: float, nu: float) -> float:
    return abs((lam * nu - 4) * (alpha * lam - 1)) + abs((lam * nu - 4) * (alpha * nu - 1))


def suite_semi_parallel_reduction() -> SuiteResult:
    rng = _rng(4)
    eps = cond.HOLDS_EPS
    disagreements = 0
    worst_ratio = 1.0
    zeros = 0
    for i in range(N_SAMPLES):
        if i % 3 == 0:
            # the family lambda nu = 4, where both reduced obstructions vanish
            lam = _nonzero(rng, 0.5, 3.0)
            nu = 4.0 / lam
            alpha = 10.0 / (lam + nu)
        else:
            alpha, lam, nu = random_hopf_triple(rng, -4.0)
        m = abstract_hopf(CH2, alpha, lam, nu)
        a = shape_hopf(m)
        full = cond.semi_parallel_residual(riemann(a, CH2), star_ricci(a, CH2))
        red = reduced_semi_parallel(alpha, lam, nu)
        if (full < eps) != (red < eps):
            disagreements += 1
        if full < eps:
            zeros += 1
        elif red > 0:
            ratio = max(full / red, red / full)
            worst_ratio = max(worst_ratio, ratio)
    ok = disagreements == 0 and worst_ratio <= 10
    return SuiteResult(
        "semi-parallel 2-scalar reduction vs 27-triple",
        ok,
        float(disagreements),
        0.0,
        f"(zeros {zeros}, worst ratio {worst_ratio:.3g})",
    )


def suite_pseudo_parallel() -> SuiteResult:
    worst_res = 0.0
    worst_L = 0.0
    problems = []
    for kind in (A0, A11, A12):
        for r in radius_grid(CH2, kind, 100):
            m = catalog_model(CH2, kind, r)
            a = shape_hopf(m)
            fit = cond.pseudo_parallel_solve(riemann(a, CH2), star_ricci(a, CH2))
            if fit.degenerate:
                problems.append(f"{kind} degenerate at r={r}")
                continue
            worst_res = max(worst_res, fit.residual)
            worst_L = max(worst_L, abs(fit.L - (m.alpha * m.lam - 1)))
    m = abstract_hopf(CH2, 0.0, 1.0, -1.0)
    a = shape_hopf(m)
    fit = cond.pseudo_parallel_solve(riemann(a, CH2), star_ricci(a, CH2))
    worst_res = max(worst_res, fit.residual)
    worst_L = max(worst_L, abs(fit.L - (-1.0)))
    ok = not problems and worst_res < 1e-10 and worst_L < 1e-9
    return SuiteResult(
        "pseudo-parallel L = alpha lambda - 1 on type A grid",
        ok,
        worst_res,
        1e-10,
        f"(max |L - (alpha lambda - 1)| {worst_L:.1e}) " + "; ".join(problems[:3]),
    )


def suite_xi_parallel() -> SuiteResult:
    worst = 0.0
    for m in catalog_grid(50):
        for kappa in (0.0, 1.0, -3.0):
            worst = max(worst, cond.xi_parallel_residual_hopf(m, kappa))
    rng = _rng(6)
    worst_formula = 0.0
    for _ in range(N_SAMPLES):
        c = float(rng.choice([4.0, -4.0]))
        alpha, lam, nu = random_hopf_triple(rng, c)
        dl, dn = (float(v) for v in rng.uniform(-2, 2, 2))
        m = abstract_hopf(AmbientSpace(c), alpha, lam, nu, dl, dn)
        expected = abs(lam * dn + nu * dl)
        for kappa in (0.0, 1.0, -3.0):
            worst_formula = max(worst_formula, abs(cond.xi_parallel_residual_hopf(m, kappa) - expected))
    ok = worst < 1e-12 and worst_formula < 1e-12
    return SuiteResult(
        "xi-parallel for every catalog model, gauge invariant",
        ok,
        max(worst, worst_formula),
        1e-12,
        f"(catalog {worst:.1e}, |lambda xi nu + nu xi lambda| match {worst_formula:.1e})",
    )


def semi_parallel_sample(rng: np.random.Generator, c: float) -> NonHopfFrameData:
    """delta = 0, c/4 + alpha mu = 0, c/4 + alpha gamma = beta^2."""
    alpha = _nonzero(rng)
    beta = _nonzero(rng)
    k1, k2, k3 = (float(v) for v in rng.uniform(-3, 3, 3))
    return NonHopfFrameData(alpha, beta, (beta**2 - c / 4) / alpha, 0.0, -c / (4 * alpha), k1, k2, k3)


def pseudo_parallel_sample(rng: np.random.Generator, c: float) -> NonHopfFrameData:
    """delta = mu = 0, alpha gamma = beta^2, gamma kappa3 = beta kappa1 + c/4."""
    alpha = _nonzero(rng)
    beta = _nonzero(rng)
    gamma = beta**2 / alpha
    k1, k2 = (float(v) for v in rng.uniform(-3, 3, 2))
    k3 = (beta * k1 + c / 4) / gamma
    return NonHopfFrameData(alpha, beta, gamma, 0.0, 0.0, k1, k2, k3)


def suite_nonhopf_obstructions() -> SuiteResult:
    rng = _rng(7)
    t0 = time.perf_counter()
    problems = []
    worst_l = 0.0
    for _ in range(N_SAMPLES):
        c = float(rng.choice([4.0, -4.0]))
        d = semi_parallel_sample(rng, c)
        trace = cond.certify_semi_parallel_obstruction(d, c)
        worst_l = max(worst_l, operator_norm(structure_jacobi(shape_nonhopf(d), AmbientSpace(c))))
        if trace.verdict != cond.CONTRADICTION:
            problems.append("semi verdict")
            break
    for _ in range(N_SAMPLES):
        c = float(rng.choice([4.0, -4.0]))
        trace = cond.certify_pseudo_parallel_obstruction(pseudo_parallel_sample(rng, c), c)
        if trace.verdict != cond.CONTRADICTION:
            problems.append("pseudo verdict")
            break
    pseudo_seconds = time.perf_counter() - t0
    eps = cond.HOLDS_EPS
    for i in range(N_SAMPLES):
        c = float(rng.choice([4.0, -4.0]))
        d = random_nonhopf(rng)
        delta = 0.0 if i % 2 == 0 else d.delta
        mu = _nonzero(rng)
        k3 = (c + d.gamma * mu) / mu if i % 4 == 0 else d.kappa3
        d = NonHopfFrameData(d.alpha, d.beta, d.gamma, delta, mu, d.kappa1, d.kappa2, k3)
        comp = cond.xi_parallel_components_nonhopf(d, c)
        if (abs(comp[2, 2]) < eps) != (abs(delta) < eps):
            problems.append("xi component vs delta")
            break
        if abs(delta) < eps:
            if (abs(comp[1, 2]) < eps) != (abs(mu * k3 - c - d.gamma * mu) < eps):
                problems.append("phiU component vs mu kappa3 = c + gamma mu")
                break
            if cond.certify_xi_parallel_obstruction(d, c).verdict != cond.CONTRADICTION:
                problems.append("xi verdict")
                break
    ok = not problems and worst_l < 1e-12 and pseudo_seconds < 5.0
    return SuiteResult(
        "non-Hopf obstruction certificates",
        ok,
        worst_l,
        1e-12,
        f"(semi+pseudo {pseudo_seconds:.2f}s) " + "; ".join(problems),
    )


def suite_curvature_properties() -> SuiteResult:
    rng = _rng(8)
    worst = 0.0
    worst_l = 0.0
    for _ in range(N_SAMPLES):
        c = float(rng.choice([4.0, -4.0]))
        m = rng.uniform(-3, 3, (3, 3))
        a = (m + m.T) / 2
        space = AmbientSpace(c)
        worst = max(worst, *curvature_defects(riemann(a, space)).values())
        worst_l = max(worst_l, operator_norm(structure_jacobi(a, space) - structure_jacobi_closed(a, space)))
    ok = worst < 1e-12 and worst_l < 1e-12
    return SuiteResult(
        "curvature symmetries and structure Jacobi cross-check",
        ok,
        max(worst, worst_l),
        1e-12,
        f"(symmetries {worst:.1e}, Jacobi paths {worst_l:.1e})",
    )


SUITES: tuple[Callable[[], SuiteResult], ...] = (
    suite_star_ricci_closed_forms,
    suite_catalog_soundness,
    suite_vanishing,
    suite_semi_parallel_reduction,
    suite_pseudo_parallel,
    suite_xi_parallel,
    suite_nonhopf_obstructions,
    suite_curvature_properties,
)


def run_all() -> list[SuiteResult]:
    results = []
    for suite in SUITES:
        t0 = time.perf_counter()
        res = suite()
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results
