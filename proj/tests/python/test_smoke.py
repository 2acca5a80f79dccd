import math

import pytest

import ncfa


def test_mu_of_diagonal_element():
    blocks = [([[3.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 2.0]], 1.0 / 3)]
    steps = ncfa.mu(blocks)
    values = [v for v, _ in steps]
    lengths = [l for _, l in steps]
    assert values == pytest.approx([3.0, 2.0, 1.0], abs=1e-12)
    assert lengths == pytest.approx([1.0 / 3] * 3, abs=1e-12)
    assert ncfa.trace(blocks) == pytest.approx(2.0, abs=1e-12)


def test_norms_and_moments():
    steps = [(3.0, 1.0 / 3), (2.0, 1.0 / 3), (1.0, 1.0 / 3)]
    assert ncfa.norm("Lp(2)", steps) == pytest.approx(math.sqrt(14.0 / 3), abs=1e-12)
    assert ncfa.norm("sum(1,2)", [(2.0, 3.0)]) == pytest.approx(2.0 + math.sqrt(8.0), abs=1e-12)
    assert ncfa.phi_moment("M:2,4", [(2.0, 1.0)]) == pytest.approx(14.0, abs=1e-12)
    assert ncfa.orlicz_value("M:2,4", 1.0) == pytest.approx(2.0, abs=1e-12)
    lux = ncfa.luxemburg_norm("pow:3", steps)
    assert lux == pytest.approx(ncfa.norm("Lp(3)", steps), rel=1e-8)


def test_submajorization():
    assert ncfa.hl_submajorize([(1.0, 2.0)], [(2.0, 1.0)])
    assert not ncfa.hl_submajorize([(2.0, 1.0)], [(1.0, 2.0)])
    assert ncfa.uniform_submajorize([(1.0, 2.0)], [(2.0, 1.0)]) == 2
    assert ncfa.uniform_submajorize([(3.0, 9.0)], [(1.0, 1.0)]) is None


def test_footnote_counterexample():
    direct, star = ncfa.footnote_norms(4, 4.0)
    assert direct == pytest.approx(math.sqrt(2.0), abs=1e-10)
    assert star == pytest.approx(1.0, abs=1e-10)


def test_verify_is_deterministic():
    a = ncfa.verify("rosenthal", "Lp(4)", "classical:K=3,n=2", seed=7, trials=10)
    b = ncfa.verify("rosenthal", "Lp(4)", "classical:K=3,n=2", seed=7, trials=10)
    assert a == b
    assert a["trials"] == 10
    assert 0.0 < a["ratio_min"] <= a["ratio_geomean"] <= a["ratio_max"]

    kh = ncfa.verify("khinchine", "Lp(2)", "gue_like:K=3,n=2", seed=1, trials=5)
    assert kh["ratio_min"] == pytest.approx(1.0, abs=1e-9)
    assert kh["ratio_max"] == pytest.approx(1.0, abs=1e-9)


def test_sum_mu_total_mass():
    steps = ncfa.sum_mu("fermionic:K=3,n=2", seed=5)
    assert sum(l for _, l in steps) <= 1.0 + 1e-12


def test_bad_inputs_raise():
    with pytest.raises(Exception):
        ncfa.norm("Lq(2)", [(1.0, 1.0)])
    with pytest.raises(Exception):
        ncfa.verify("rosenthal", "Lp(1.5)", "classical:K=2,n=2", seed=0, trials=2)
