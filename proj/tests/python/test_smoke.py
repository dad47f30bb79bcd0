import math

import numpy as np
import pytest

import qgauss


def alpha(q):
    return (2 * -math.log(q) / math.pi) ** 0.25


def test_scalars():
    assert qgauss.qpochhammer(0.5, 2) == pytest.approx(0.375, rel=1e-15)
    assert qgauss.qbinomial(0.5, 2, 1) == pytest.approx(1.5, rel=1e-15)
    assert qgauss.macfarlane_eigenvalue(0.5, 2) == pytest.approx(-6.0, rel=1e-15)
    assert qgauss.arik_coon_eigenvalue(0.5, 2) == pytest.approx(1.5, rel=1e-15)


def test_chain_basics():
    g = qgauss.Chain({0.0: 1.0}, q=0.5)
    assert g(0.0) == 1.0
    assert g(1.0) == pytest.approx(0.5)
    vals = g(np.array([0.0, 1.0, 2.0]))
    assert vals.shape == (3,)
    assert qgauss.inner(g, g) == pytest.approx(alpha(0.5) ** -2, rel=1e-14)
    with pytest.raises(ValueError):
        qgauss.Chain({0.0: 1.0}, q=0.5, c=1.0)
    with pytest.raises(Exception):
        qgauss.Chain({0.3: 1.0}, q=0.5)


def test_eigenfunctions_and_ladders():
    phi0 = qgauss.build_phi(0, q=0.5)
    assert phi0(0.0) == pytest.approx(alpha(0.5), rel=1e-15)
    assert len(phi0.ladder("arik_lower")) == 0
    phi1 = qgauss.build_phi(1, q=0.5)
    raised = phi0.ladder("arik_raise")
    assert (raised - phi1).coeffs() == {} or max(abs(v) for v in (raised - phi1).coeffs().values()) < 1e-14
    b2 = qgauss.build_Bn(2, q=0.5)
    assert qgauss.inner(b2, b2, twisted=True) == pytest.approx(1.0, abs=1e-12)
    value, err = qgauss.quad_inner(b2, b2, twisted=True)
    assert value.real == pytest.approx(1.0, abs=1e-9)
    mc = qgauss.mac_coeffs(1, q=0.5)
    assert mc["E"] == pytest.approx([1.0, -math.sqrt(2)], rel=1e-15)


def test_grams():
    g = qgauss.dg_gram(12, q=0.5)
    assert g.matrix.shape == (13, 13)
    assert g.max_deviation() <= 1e-10
    np.testing.assert_allclose(g.matrix.real, np.eye(13), atol=1e-10)
    m = qgauss.indefinite_gram(12, q=0.5, digits=40)
    assert m.backend.startswith("mpfr")
    assert m.max_deviation() <= 1e-20
    assert qgauss.sum_rule(10, q=0.8).max_deviation() <= 1e-12
    assert qgauss.circle_gram("dg", 8, q=0.5).max_deviation() <= 1e-9
    assert qgauss.circle_gram("mac", 5, q=0.5).max_deviation() <= 1e-8
    assert qgauss.poisson_check(1.0)["max_deviation"] <= 1e-12
    assert "offending" in g.to_json()


def test_weights():
    w = qgauss.PeriodicWeight.cosine(1.0, 0.3)
    assert w(0.0) == pytest.approx(1.3)
    assert qgauss.alpha_w(qgauss.PeriodicWeight({0: 1.0}), q=0.5) == pytest.approx(alpha(0.5), rel=1e-14)
    assert qgauss.degeneracy_gram(w, 8, q=0.5).max_deviation() <= 1e-9
    assert qgauss.gamma_family_gram(3, 6, q=0.5).max_deviation() <= 1e-8


def test_limits():
    t = qgauss.harmonic_limit("mac", 2)
    assert t["monotone"]
    assert t["rows"][-1]["eigenvalue_gap"] <= 0.05
    assert len(t["rows"]) == 3


def test_suites():
    assert len(qgauss.suite_names()) == 12
    r = qgauss.run_suite("dg-gram", q=0.5, nmax=12)
    assert r["passed"] and r["schema"] == "qgauss/1"
    low = qgauss.run_suite("mac-gram", q=0.5, nmax=12, digits=8)
    assert not low["passed"]
    with pytest.raises(ValueError):
        qgauss.run_suite("nope", q=0.5)
