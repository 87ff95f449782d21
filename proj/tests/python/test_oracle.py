# Cross-checks against scipy, which shares no code with the library.
import math

import pytest

import chebdiff as cd

integrate = pytest.importorskip("scipy.integrate")
special = pytest.importorskip("scipy.special")


def t_scipy(f, g, lo, hi, points=None):
    q = lambda h: integrate.quad(h, lo, hi, points=points, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    n = hi - lo
    return q(lambda t: f(t) * g(t)) / n - q(f) / n * q(g) / n


CASES = [
    ("exp(x)", "sin(3*x)", math.exp, lambda t: math.sin(3 * t), None),
    ("abs(x - 0.3)", "x^3", lambda t: abs(t - 0.3), lambda t: t**3, [0.3]),
    ("sqrt(x)", "cos(2*x)", math.sqrt, lambda t: math.cos(2 * t), None),
    ("piecewise((x < 0.4, 1), x)", "x", lambda t: 1.0 if t < 0.4 else t, lambda t: t, [0.4]),
]


@pytest.mark.parametrize("fs,gs,f,g,pts", CASES)
@pytest.mark.parametrize("lo,hi", [(0.0, 1.0), (0.1, 0.8)])
def test_functional_matches_scipy(fs, gs, f, g, pts, lo, hi):
    pts = [p for p in (pts or []) if lo < p < hi] or None
    r = cd.chebyshev_functional(cd.Function(fs), cd.Function(gs), lo, hi)
    assert abs(r["value"] - t_scipy(f, g, lo, hi, pts)) <= r["err"] + 1e-11


def test_difference_matches_scipy():
    f, g = cd.Function("exp(x)"), cd.Function("x^2")
    d = cd.functional_difference(f, g, 0.0, 0.2, 0.7, 1.0)
    want = abs(t_scipy(math.exp, lambda t: t * t, 0.0, 0.7) - t_scipy(math.exp, lambda t: t * t, 0.2, 1.0))
    assert abs(d["diff"] - want) < 1e-11


@pytest.mark.parametrize("x,y", [(1.0, 1.0), (2.5, 0.3), (1.25, 2.0), (7.0, 9.5), (0.5, 0.5)])
def test_beta_matches_scipy(x, y):
    assert cd.beta(x, y) == pytest.approx(special.beta(x, y), rel=1e-13)


def test_lipschitz_pair_counterexample():
    # f = g = x, u = 0, v = 1 - d: the difference is ~ d/6, the bound ~ d/12
    d = 1e-3
    x = cd.Function("x")
    lhs = abs(t_scipy(lambda t: t, lambda t: t, 0.0, 1 - d) - t_scipy(lambda t: t, lambda t: t, 0.0, 1.0))
    rhs = cd.evaluate_bound("thm4.5.7/Linf", {"L": 1.0, "ginf": 1.0}, 0.0, 0.0, 1 - d, 1.0)["rhs"]
    assert lhs == pytest.approx(d / 6 - d * d / 12, rel=1e-9)
    assert rhs == pytest.approx(d / 12, rel=1e-12)
    assert lhs > 1.9 * rhs


def test_lipschitz_holder_counterexample():
    # Lipschitz f with a 1-Holder g where the thm4.5.9 bound fails
    fs, gs = "0.94 + 0.516*x", "0.353*abs(x - 0.4258)"
    f = lambda t: 0.94 + 0.516 * t
    g = lambda t: 0.353 * abs(t - 0.4258)
    a, u, v, b = 0.0, 0.3928, 0.4525, 1.0
    lhs = abs(t_scipy(f, g, a, v, [0.4258]) - t_scipy(f, g, u, b, [0.4258]))
    r = cd.evaluate_bound("thm4.5.9", {"L": 0.516, "H": 0.353, "p": 1.0}, a, u, v, b)
    # rhs = L H bracket^2 / 12 with bracket = (l + v - u)/2 + |(u + v)/2 - 1/2|
    bracket = (1.0 + v - u) / 2 + abs((u + v) / 2 - 0.5)
    assert r["rhs"] == pytest.approx(0.516 * 0.353 * bracket**2 / 12, rel=1e-13)
    assert lhs > 1.5 * r["rhs"]
    mine = cd.functional_difference(cd.Function(fs), cd.Function(gs), a, u, v, b)
    assert mine["diff"] == pytest.approx(lhs, abs=1e-11)
