import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import diag, semi_parallel_brute

from star_ricci import conditions as cond
from star_ricci.curvature import riemann, star_ricci
from star_ricci.frame import AmbientSpace
from star_ricci.models import NonHopfFrameData, abstract_hopf, catalog_model, shape_hopf, shape_nonhopf

CH2 = AmbientSpace.hyperbolic()
CP2 = AmbientSpace.projective()
R_STAR = math.atanh(0.5)


def rs(model):
    a = shape_hopf(model)
    return riemann(a, model.space), star_ricci(a, model.space)


# --- vanishing -------------------------------------------------------------


def test_vanishing_examples():
    _, s = rs(catalog_model(CH2, "a11", R_STAR))
    assert cond.vanishing_residual(s) < 1e-12
    for r in (0.3, 0.7, 2.0):
        _, s = rs(catalog_model(CH2, "b", r))
        assert cond.vanishing_residual(s) == pytest.approx(3.0, abs=1e-12)
    assert cond.vanishing_residual(np.zeros((3, 3))) == 0.0


# --- semi-parallel ---------------------------------------------------------


def test_semi_parallel_type_b_against_brute_force():
    m = catalog_model(CH2, "b", 0.7)
    r, s = rs(m)
    got = cond.semi_parallel_residual(r, s)
    ref = semi_parallel_brute(diag(m.lam, m.nu, m.alpha), -4.0)
    assert got == pytest.approx(ref, abs=1e-12)
    assert got > 0.1


def test_semi_parallel_zero_star_ricci():
    r = riemann(np.diag([1.0, 2.0, 3.0]), CH2)
    assert cond.semi_parallel_residual(r, np.zeros((3, 3))) == 0.0


@settings(max_examples=100)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_semi_parallel_hopf_scalar_obstructions(alpha, lam):
    if abs(lam - alpha / 2) < 0.05:
        return
    m = abstract_hopf(CH2, alpha, lam)
    r, s = rs(m)
    comp = cond.semi_parallel_components(r, s)
    # (R(W,xi).S*)W is -(lambda nu - 4)(alpha lambda - 1) xi, similarly on phi W
    assert comp[0, 2, 0][2] == pytest.approx(-(m.lam * m.nu - 4) * (m.alpha * m.lam - 1), abs=1e-9)
    assert comp[1, 2, 1][2] == pytest.approx(-(m.lam * m.nu - 4) * (m.alpha * m.nu - 1), abs=1e-9)
    ref = semi_parallel_brute(diag(m.lam, m.nu, m.alpha), -4.0)
    assert cond.semi_parallel_residual(r, s) == pytest.approx(ref, rel=1e-9, abs=1e-9)


@given(st.floats(0.1, 5.0))
def test_residuals_scale_linearly_with_star_ricci(k):
    for m in (catalog_model(CH2, "b", 0.7), catalog_model(CH2, "a11", R_STAR), catalog_model(CP2, "a1", 0.4)):
        r, s = rs(m)
        base = cond.semi_parallel_residual(r, s)
        scaled = cond.semi_parallel_residual(r, k * s)
        assert scaled == pytest.approx(k * base, rel=1e-12, abs=1e-15)
        assert cond.vanishing_residual(k * s) == pytest.approx(k * cond.vanishing_residual(s), rel=1e-12)


# --- pseudo-parallel -------------------------------------------------------


def test_pseudo_parallel_type_a():
    m = catalog_model(CH2, "a11", 0.8)
    fit = cond.pseudo_parallel_solve(*rs(m))
    assert fit.L == pytest.approx(m.alpha * m.lam - 1, abs=1e-10)
    assert fit.residual < 1e-10
    assert fit.nonzero()


def test_pseudo_parallel_a_xi_zero():
    fit = cond.pseudo_parallel_solve(*rs(abstract_hopf(CH2, 0.0, 1.0, -1.0)))
    assert fit.L == pytest.approx(-1.0, abs=1e-14)


def test_pseudo_parallel_degenerate_sphere():
    fit = cond.pseudo_parallel_solve(*rs(catalog_model(CH2, "a11", R_STAR)))
    assert fit.degenerate and fit.L is None


def test_pseudo_parallel_type_b_has_no_L():
    with pytest.raises(cond.NoPseudoParallelFunction) as info:
        cond.pseudo_parallel_solve(*rs(catalog_model(CH2, "b", 0.7)))
    assert info.value.residual > 0.1


def test_pseudo_parallel_semi_parallel_gives_zero_L():
    # a curvature that annihilates S* while the wedge term does not
    from star_ricci.curvature import CurvatureTensor

    fit = cond.pseudo_parallel_solve(CurvatureTensor(np.zeros((3, 3, 3, 3))), np.diag([1.0, 2.0, 3.0]))
    assert fit.L == 0.0 and not fit.nonzero()


# --- xi-parallel -----------------------------------------------------------


@pytest.mark.parametrize("kappa", [0.0, 1.0, -3.0])
def test_xi_parallel_catalog(kappa):
    for m in (catalog_model(CH2, "b", 0.7), catalog_model(CP2, "b", 0.3), catalog_model(CH2, "a0")):
        assert cond.xi_parallel_residual_hopf(m, kappa) < 1e-12


@pytest.mark.parametrize("kappa", [0.0, 1.0, -3.0])
def test_xi_parallel_abstract(kappa):
    m = abstract_hopf(CH2, 1.0, 2.0, 3.0, xi_d_lambda=1.0, xi_d_nu=0.0)
    assert cond.xi_parallel_residual_hopf(m, kappa) == pytest.approx(3.0, abs=1e-12)
    lam, nu = 2.0, 3.0
    m = abstract_hopf(CH2, 1.0, lam, nu, xi_d_lambda=1.0, xi_d_nu=-nu / lam)
    assert cond.xi_parallel_residual_hopf(m, kappa) < 1e-12


def test_xi_parallel_nonhopf_beta_only():
    for c in (4.0, -4.0):
        for beta in (0.5, -2.0):
            d = NonHopfFrameData(0.0, beta)
            assert cond.xi_parallel_residual_nonhopf(d, c) == pytest.approx(abs(beta * c), abs=1e-14)


def test_xi_parallel_nonhopf_symbolic_components():
    """Components of (nabla_xi S*) against a symbolic product-rule derivation."""
    a, b, g, d, m, k3, c = sp.symbols("alpha beta gamma delta mu kappa3 c")
    xa, xb, xg, xd, xm = sp.symbols("xa xb xg xd xm")
    A = sp.Matrix([[g, d, b], [d, m, 0], [b, 0, a]])
    dA = sp.Matrix([[xg, xd, xb], [xd, xm, 0], [xb, 0, xa]])
    P = sp.Matrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    S = -(c * P * P + (P * A) ** 2)
    dS = -(P * dA * P * A + P * A * P * dA)
    G = sp.Matrix([[0, -k3, 0], [k3, 0, b], [0, -b, 0]])
    N = sp.expand(dS + G * S - S * G)
    assert sp.expand(N[2, 2] - b**2 * d) == 0
    assert sp.expand(N[1, 2].subs({d: 0, xd: 0}) - b * (m * k3 - c - g * m)) == 0
    assert sp.expand(N[0, 1].subs({d: 0}) - b**2 * m) == 0

    rng = np.random.default_rng(11)
    f = sp.lambdify((a, b, g, d, m, k3, c, xa, xb, xg, xd, xm), N, "numpy")
    for _ in range(50):
        vals = rng.uniform(-2, 2, 11)
        vals[1] = 0.9
        al, be, ga, de, mu_, kk, xa_, xb_, xg_, xd_, xm_ = vals
        cc = -4.0
        data = NonHopfFrameData(
            al, be, ga, de, mu_, 0.3, -0.2, kk,
            derivs={("xi", "alpha"): xa_, ("xi", "beta"): xb_, ("xi", "gamma"): xg_, ("xi", "delta"): xd_, ("xi", "mu"): xm_},
        )
        ref = np.array(f(al, be, ga, de, mu_, kk, cc, xa_, xb_, xg_, xd_, xm_), dtype=float)
        assert np.allclose(cond.xi_parallel_components_nonhopf(data, cc), ref, atol=1e-12)


# --- non-Hopf chains -------------------------------------------------------


def _semi_sample(alpha, beta, c):
    return NonHopfFrameData(alpha, beta, (beta**2 - c / 4) / alpha, 0.0, -c / (4 * alpha), 0.4, -0.7, 1.1)


def test_semi_parallel_symbolic_chain():
    """The engine's components equal the factored constraints of the chain."""
    a, b, g, d, m, c = sp.symbols("alpha beta gamma delta mu c")
    A = sp.Matrix([[g, d, b], [d, m, 0], [b, 0, a]])
    P = sp.Matrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    E = [sp.eye(3)[:, i] for i in range(3)]
    dot = lambda x, y: (x.T * y)[0]

    def R(x, y, z):
        amb = dot(y, z) * x - dot(x, z) * y + dot(P * y, z) * P * x - dot(P * x, z) * P * y - 2 * dot(P * x, y) * P * z
        return c / 4 * amb + dot(A * y, z) * A * x - dot(A * x, z) * A * y

    S = -(c * P * P + (P * A) ** 2)
    comp = lambda x, y, z: R(x, y, S * z) - S * R(x, y, z)
    U, V, X = E
    assert sp.factor(comp(U, V, U)[1]) == sp.factor(b**2 * d**2)
    w = comp(V, X, V).subs(d, 0)
    assert sp.expand(w[0] - b * m * (c / 4 + a * m)) == 0
    assert sp.expand(w[2] + (c + g * m) * (c / 4 + a * m)) == 0
    u = comp(U, X, U).subs(d, 0)
    assert sp.expand(u[0] - b * m * (c / 4 + a * g - b**2)) == 0


@pytest.mark.parametrize("c", [4.0, -4.0])
def test_certify_semi_parallel_jacobi_branch(c):
    trace = cond.certify_semi_parallel_obstruction(_semi_sample(1.3, -0.6, c), c)
    assert trace.verdict == cond.CONTRADICTION
    assert trace.steps[-1].constraint == "structure Jacobi operator l = 0"
    assert trace.steps[-1].residual < 1e-12
    assert trace.axioms


def test_certify_semi_parallel_gate():
    d = NonHopfFrameData(1.0, 1.0, 0.5, 0.3, 0.2)
    trace = cond.certify_semi_parallel_obstruction(d, -4.0)
    assert trace.verdict == cond.CONSISTENT
    assert [s.constraint for s in trace.steps] == ["delta = 0"]


def test_certify_semi_parallel_first_branch():
    # c/4 + alpha mu != 0 forces mu = 0, then c = 0
    d = NonHopfFrameData(1.0, 1.0, 0.5, 0.0, 0.0)
    trace = cond.certify_semi_parallel_obstruction(d, -4.0)
    assert trace.verdict == cond.CONTRADICTION
    assert "branch c/4 + alpha mu != 0" in trace.steps[-1].step


def test_certify_semi_parallel_second_branch():
    c = 4.0
    alpha = 2.0
    d = NonHopfFrameData(alpha, 1.0, 3.0, 0.0, -c / (4 * alpha))
    trace = cond.certify_semi_parallel_obstruction(d, c)
    assert trace.verdict == cond.CONTRADICTION
    assert "c/4 + alpha gamma != beta^2" in trace.steps[-1].step


def _pseudo_sample(alpha, beta, k1, c):
    gamma = beta**2 / alpha
    return NonHopfFrameData(alpha, beta, gamma, 0.0, 0.0, k1, 0.0, (beta * k1 + c / 4) / gamma)


def test_phiU_derivative_symbolic():
    a, b, k1, c = sp.symbols("alpha beta kappa1 c", nonzero=True)
    g = b**2 / a
    k3 = (b * k1 + c / 4) / g
    pa = b * (a + k3)
    pb = b**2 + b * k1 + c / 2
    pg = k1 * g + b * g
    assert sp.simplify(pa * g + a * pg - 2 * b * pb + sp.Rational(3, 4) * b * c) == 0


@pytest.mark.parametrize("c", [4.0, -4.0])
def test_certify_pseudo_parallel(c):
    rng = np.random.default_rng(5)
    for _ in range(200):
        alpha, beta = (float(rng.choice([-1, 1]) * rng.uniform(0.2, 3)) for _ in range(2))
        d = _pseudo_sample(alpha, beta, float(rng.uniform(-3, 3)), c)
        trace = cond.certify_pseudo_parallel_obstruction(d, c)
        assert trace.verdict == cond.CONTRADICTION, trace
        forced = cond.phiU_derivative_of_alpha_gamma_minus_beta_sq(d, c)
        assert forced == pytest.approx(-0.75 * beta * c, rel=1e-9)


def test_certify_pseudo_parallel_gates():
    assert cond.certify_pseudo_parallel_obstruction(NonHopfFrameData(1, 1, 1, 0.5), -4.0).verdict == cond.CONSISTENT
    assert cond.certify_pseudo_parallel_obstruction(NonHopfFrameData(1, 1, 1, 0.0, 0.4), -4.0).verdict == cond.CONSISTENT
    assert cond.certify_pseudo_parallel_obstruction(NonHopfFrameData(1, 1, 2.0, 0.0, 0.0), -4.0).verdict == cond.CONSISTENT
    # violates the first Codazzi relation
    trace = cond.certify_pseudo_parallel_obstruction(NonHopfFrameData(1, 1, 1, 0, 0, 0.0, 0.0, 5.0), -4.0)
    assert trace.verdict == cond.INCONCLUSIVE
    with pytest.raises(ValueError):
        cond.certify_pseudo_parallel_obstruction(NonHopfFrameData(1, 0), -4.0)


def test_certify_xi_parallel():
    c = -4.0
    d = NonHopfFrameData(0.4, 1.2, -0.3, 0.0, 0.8, 0.1, 0.2, (c + -0.3 * 0.8) / 0.8)
    comp = cond.xi_parallel_components_nonhopf(d, c)
    assert abs(comp[2, 2]) < 1e-12 and abs(comp[1, 2]) < 1e-12
    trace = cond.certify_xi_parallel_obstruction(d, c)
    assert trace.verdict == cond.CONTRADICTION
    assert cond.certify_xi_parallel_obstruction(NonHopfFrameData(0.4, 1.2, delta=0.5), c).verdict == cond.CONSISTENT


# --- reports ---------------------------------------------------------------


def test_classify_geodesic_sphere():
    rep = cond.classify_hopf(catalog_model(CH2, "a11", R_STAR))
    assert rep.vanishing.holds and rep.semi_parallel.holds and rep.xi_parallel.holds
    assert rep.pseudo_parallel.holds and rep.pseudo_parallel.degenerate and rep.pseudo_parallel.L is None


def test_classify_type_b():
    rep = cond.classify_hopf(catalog_model(CH2, "b", 0.7))
    assert not rep.vanishing.holds and not rep.semi_parallel.holds and rep.xi_parallel.holds
    assert not rep.pseudo_parallel.holds
    assert rep.branches == ("xi_constant_curvatures",)


def test_classify_cp2_sphere():
    rep = cond.classify_hopf(catalog_model(CP2, "a1", math.pi / 4))
    assert rep.xi_parallel.holds
    # alpha = 0 and lambda = 1 here, so L = c/4 + alpha lambda = 1
    assert rep.pseudo_parallel.L == pytest.approx(1.0, abs=1e-10)
    assert "type_a" in rep.branches


@pytest.mark.parametrize(
    "model",
    [
        catalog_model(CH2, "a11", R_STAR),
        catalog_model(CH2, "a12", 0.9),
        catalog_model(CH2, "b", 0.4),
        catalog_model(CP2, "b", 0.2),
        abstract_hopf(CH2, 0.0, 1.0, -1.0),
    ],
)
def test_degeneracy_ladder_and_json_round_trip(model):
    rep = cond.classify_hopf(model)
    if rep.vanishing.holds:
        assert rep.semi_parallel.holds
    if rep.semi_parallel.holds:
        assert rep.pseudo_parallel.holds
    text = rep.to_json()
    back = cond.ConditionReport.from_json(text)
    assert back == rep.rounded()
    assert back.to_json() == text
    data = rep.to_dict()
    assert data["schema"] == 1
    for key in ("vanishing", "semi_parallel", "pseudo_parallel", "xi_parallel"):
        assert {"holds", "residual"} <= set(data[key])
    assert "L" in data["pseudo_parallel"]


def test_report_rejects_unknown_schema():
    data = cond.classify_hopf(catalog_model(CH2, "a0")).to_dict()
    data["schema"] = 2
    with pytest.raises(ValueError):
        cond.ConditionReport.from_dict(data)
