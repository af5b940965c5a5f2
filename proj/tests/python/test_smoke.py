import math

import pytest

import grushin as g


@pytest.fixture
def space():
    return g.GrushinSpace(1, 1, 1.0)


def test_space_and_gauge(space):
    assert space.Q == 3.0
    assert g.rho(space, [0.0], [1.0]) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    x, y = g.dilate(space, 2.0, [1.0], [1.0])
    assert x == [2.0] and y == [4.0]


def test_constants(space):
    assert g.hardy_constant(space, 2.0, 0.0) == pytest.approx(4.0, rel=1e-15)
    assert g.p_star(space, 2.0, 0.0) == pytest.approx(6.0, rel=1e-15)
    ok, boundary = g.integrable(space, 0.0, -3.0, "near_origin")
    assert not ok and boundary


def test_admissibility_dict(space):
    rep = g.check_spec("ckn", space, dict(p=2, q=2, r=2, a=0.5, alpha=2, beta=1, sigma=1))
    assert rep["verdict"] is True and rep["failing"] == []
    assert {c["name"] for c in rep["checks"]} >= {"1<p<Q", "balance"}


def test_hardy_eval_matches_reference(space):
    u = g.make_bump(space, 1.0, 2.0)
    rep = g.evaluate("hardy", space, dict(p=2, alpha=0), u, tol=1e-8)
    assert rep["satisfied_at_constant"] is True
    assert rep["constant"] == pytest.approx(4.0)
    assert rep["rhs"] == pytest.approx(8.9078456, rel=1e-6)
    assert rep["ratio"] < 1.0


def test_errors_carry_kind(space):
    with pytest.raises(g.GrushinError, match="^inapplicable"):
        g.hardy_constant(space, 2.0, -3.0)
    with pytest.raises(g.GrushinError, match="^invalid_argument"):
        g.evaluate("nope", space, {}, g.make_bump(space, 1, 2))


def test_scaling_balanced_tuple(space):
    u = g.make_bump(space, 1.0, 2.0)
    params = dict(p=2, q=2, r=2, a=0.5, alpha=2, beta=1, sigma=1)
    rep = g.scaling_experiment(space, params, u, [0.5, 1, 2, 4], tol=1e-7, cross_check=False)
    assert rep["pass"] is True


def test_lemmas():
    assert g.lemma_lambda_check([1.0, 2.0], [1.0, 2.0], 1.5) == pytest.approx(0.0, abs=1e-12)
    assert g.lemma_lambda_check([1.0, 0.0], [0.0, 1.0], 1.0) > 0
    rep = g.lemma_p_probe(1.5, 2000, seed=7)
    assert rep["finite"] and 1.0 <= rep["first_sup"] < 10.0
    assert rep == g.lemma_p_probe(1.5, 2000, seed=7)
