"""Radius scans over catalog kinds and the distinguished-radius solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conditions import HOLDS_EPS, ConditionReport, classify_hopf, semi_parallel_residual, vanishing_residual
from .curvature import riemann, star_ricci
from .frame import AmbientSpace
from .models import ModelDomainError, catalog_model, radius_domain, shape_hopf

# finite search window for kinds whose radius runs to infinity
_UNBOUNDED_HI = 30.0
_EDGE = 1e-6


class NeverAttained(ValueError):
    """The condition has no root anywhere in the kind's radius domain."""


def bisect(f, lo: float, hi: float, xtol: float = 1e-15, maxiter: int = 200) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError("bisection needs a sign change")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or hi - lo < xtol:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def golden_min(f, lo: float, hi: float, xtol: float = 1e-15, maxiter: int = 300) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on [lo, hi]; returns (x, f(x))."""
    inv = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    x1 = b - inv * (b - a)
    x2 = a + inv * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(maxiter):
        if b - a < xtol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = f(x2)
    best = min((f(a), a), (f1, x1), (f2, x2), (f(b), b))
    return best[1], best[0]


def _search_window(space: AmbientSpace, kind: str) -> tuple[float, float]:
    domain = radius_domain(space, kind)
    if domain is None:
        raise NeverAttained(f"kind {kind!r} has no radius parameter; its residual is constant")
    lo, hi = domain
    hi = _UNBOUNDED_HI if math.isinf(hi) else hi
    return lo + _EDGE, hi - _EDGE


def vanishing_scalar(space: AmbientSpace, kind: str, r: float) -> float:
    """c + lambda nu, the signed quantity whose zero makes S* vanish on a Hopf model."""
    m = catalog_model(space, kind, r)
    return space.c + m.lam * m.nu


def solve_vanishing_radius(space: AmbientSpace, kind: str, samples: int = 2000) -> float:
    """Radius where c + lambda(r) nu(r) = 0, located on a grid then bisected."""
    lo, hi = _search_window(space, kind)
    grid = np.geomspace(lo, hi, samples)
    vals = [vanishing_scalar(space, kind, float(r)) for r in grid]
    for i in range(len(grid) - 1):
        if vals[i] == 0:
            return float(grid[i])
        if np.sign(vals[i]) != np.sign(vals[i + 1]):
            return bisect(lambda r: vanishing_scalar(space, kind, r), float(grid[i]), float(grid[i + 1]))
    raise NeverAttained(f"condition never attained for {space.name} kind {kind!r}")


def _residual_fn(space: AmbientSpace, kind: str, condition: str):
    def f(r: float) -> float:
        a = shape_hopf(catalog_model(space, kind, r))
        s = star_ricci(a, space)
        if condition == "vanishing":
            return vanishing_residual(s)
        return semi_parallel_residual(riemann(a, space), s)

    return f


@dataclass
class ScanResult:
    space: str
    kind: str
    start: float
    stop: float
    count: int
    radii: list[float]
    reports: list[ConditionReport]
    roots: dict[str, list[float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "space": self.space,
            "kind": self.kind,
            "grid": {"start": self.start, "stop": self.stop, "count": self.count},
            "points": [
                {"radius": float(f"{r:.12g}"), **{k: v for k, v in rep.to_dict().items() if k not in ("schema", "model")}}
                for r, rep in zip(self.radii, self.reports)
            ],
            "roots": {k: [float(f"{x:.12g}") for x in v] for k, v in self.roots.items()},
        }


ROOT_CONDITIONS = ("vanishing", "semi_parallel")


def locate_roots(space: AmbientSpace, kind: str, radii: list[float], residuals: list[float], condition: str, eps: float) -> list[float]:
    """Refine each grid-local minimum of a residual and keep those that reach ``eps``."""
    f = _residual_fn(space, kind, condition)
    roots: list[float] = []
    n = len(radii)
    for i in range(n):
        left = residuals[i - 1] if i > 0 else math.inf
        right = residuals[i + 1] if i < n - 1 else math.inf
        if not (residuals[i] <= left and residuals[i] < right):
            continue
        lo = radii[max(i - 1, 0)]
        hi = radii[min(i + 1, n - 1)]
        x, fx = golden_min(f, lo, hi)
        if fx < eps and not any(abs(x - r0) < 1e-9 for r0 in roots):
            roots.append(x)
    return roots


def scan(space: AmbientSpace, kind: str, start: float, stop: float, count: int, eps: float = HOLDS_EPS) -> ScanResult:
    if count < 2:
        raise ValueError("a scan needs at least 2 grid points")
    if not start < stop:
        raise ModelDomainError("scan needs start < stop")
    domain = radius_domain(space, kind)
    if domain is None:
        raise ModelDomainError(f"kind {kind!r} has no radius to scan")
    if not (domain[0] < start and stop < domain[1]):
        raise ModelDomainError(f"scan range [{start}, {stop}] outside ({domain[0]:g}, {domain[1]:g})")
    radii = [float(r) for r in np.linspace(start, stop, count)]
    reports = [classify_hopf(catalog_model(space, kind, r), eps) for r in radii]
    roots = {}
    for cond in ROOT_CONDITIONS:
        res = [getattr(rep, cond).residual for rep in reports]
        roots[cond] = locate_roots(space, kind, radii, res, cond, eps)
    return ScanResult(space.name, kind, start, stop, count, radii, reports, roots)
