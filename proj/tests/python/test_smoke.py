import math

import pytest

import chebdiff as cd


def test_identity_pair_on_unit_interval():
    x = cd.Function("x")
    r = cd.chebyshev_functional(x, x)
    assert abs(r["value"] - 1.0 / 12.0) < 1e-12
    assert r["err"] < 1e-9


def test_sign_against_x_matches_quarter():
    s = cd.Function("sign(x - 0.5)")
    x = cd.Function("x")
    assert abs(cd.chebyshev_functional(s, x)["value"] - 0.25) < 1e-10
    via = cd.chebyshev_via_identity(s, x, identity="dragomir")
    assert abs(via["value"] - 0.25) < 1e-9


def test_difference_and_bound():
    x = cd.Function("x", constants={"V": 1.0, "L": 1.0, "norms": {math.inf: 1.0, 1.0: 1.0, 2.0: 1.0}})
    d = cd.functional_difference(x, x, 0.0, 0.25, 0.75, 1.0)
    # T over [0, .75] and [.25, 1] are both .75^2 / 12
    assert d["diff"] < 1e-12
    params = cd.params_from(x, x, 0.0, 0.25, 0.75, 1.0)
    res = cd.evaluate_bound("thm4.5.1/Linf", params, 0.0, 0.25, 0.75, 1.0)
    assert res["rhs"] >= d["diff"]
    assert res["theorem"] == "thm4.5.1/Linf"


def test_collapsed_id_mapping():
    res = cd.evaluate_bound("thm4.5.7/Linf", {"L": 1.0, "ginf": 1.0}, 0.0, 0.5, 0.5, 1.0)
    assert res["theorem"] == "thm4.5.7/Linf/collapsed"
    assert res["rhs"] == pytest.approx(1.0 / 24.0, rel=1e-12)


def test_beta_and_errors():
    assert cd.beta(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-14)
    with pytest.raises(cd.ParseError):
        cd.Function("x +")
    with pytest.raises(cd.DomainError):
        cd.beta(0.0, 1.0)
    with pytest.raises(cd.MissingConstantError):
        cd.evaluate_bound("thm4.5.1/Linf", {})
    assert issubclass(cd.MissingConstantError, cd.PreconditionError)


def test_function_object():
    f = cd.Function("abs(x - 0.3)")
    assert f(0.3) == 0.0
    assert f.breakpoints == pytest.approx([0.3])
    assert cd.Function("sign(x - 0.5)").jumps[0][1] == pytest.approx(2.0)
    with pytest.raises(cd.DomainError):
        f(2.0)


def test_small_verify_is_deterministic():
    cfg = dict(seed=7, corpus_size=4, configs=3, theorems=["thm4.5.1/Linf", "eq2.1"], threads=2)
    a = cd.verify(**cfg)
    b = cd.verify(**cfg)
    assert a == b
    assert len(a) > 0
    assert all(r["pass"] for r in a if r["status"] == "ok" and r["hypothesis_ok"])
    assert "thm4.5.1/Linf" in cd.summary(a)
    assert "thm4.5.1/Linf" in cd.sweep_ids()
    assert set(cd.sweep_ids()) <= set(cd.bound_ids())
    assert all(math.isfinite(r["rhs"]) for r in a)
