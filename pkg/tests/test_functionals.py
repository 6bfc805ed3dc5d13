import math

import numpy as np
import pytest

from mct.constructions import gm_radial
from mct.functionals import (campanato_rhs, campanato_sup_functional,
                             campanato_weight_conditions, d_functional, d_functional_weighted,
                             gm_constant)
from mct.grid import StepFunction, dilate, indicator
from mct.harness import generate_corpus
from mct.norms import Weight, truncated_norm

INF = math.inf
# regression fixtures for chi_[0,1) with p = 2
D_CHI_Q_INF_LAM_QUARTER = 11.120711658544879
D_CHI_Q_INF_LAM_EIGHTH = 39.24944408898772
D_CHI_Q_2_LAM_EIGHTH = 213.52259919206833


def brute_level(m, p, lam, n=1, nu_max=200000):
    """value_m for chi_[0,1) by scanning integer nu."""
    a = 1 / p - max(0.0, 1 / p - 0.5)
    nus = np.arange(1, nu_max + 1, dtype=float)
    S = np.minimum(nus * 2.0 ** (n * m), 1.0) if m < 0 else np.ones_like(nus)
    G = (1 + np.log(nus)) ** (n + 1) * nus ** -a
    return 2.0 ** (-m * (n / p - lam)) * float(np.max(G * S))


def test_single_level_trivial(chi01):
    _, prof = d_functional(chi01, 2, INF, 0.25, m_range=(0, 0))
    # nu = 1 gives 1; larger nu does better (nu beyond the support still counts)
    assert prof.values[0] >= 1.0
    assert prof.values[0] == pytest.approx(brute_level(0, 2, 0.25), rel=1e-12)


def test_levels_match_exhaustive_scan(chi01):
    _, prof = d_functional(chi01, 2, INF, 0.25, m_range=(-12, 8))
    for m, v in zip(prof.levels, prof.values):
        assert v == pytest.approx(brute_level(m, 2, 0.25), rel=1e-12)


def test_regression_fixtures(chi01):
    assert d_functional(chi01, 2, INF, 0.25)[0] == pytest.approx(D_CHI_Q_INF_LAM_QUARTER,
                                                                   rel=1e-12)
    assert d_functional(chi01, 2, INF, 0.25, m_range=(-64, 8))[0] == pytest.approx(
        D_CHI_Q_INF_LAM_QUARTER, rel=1e-12)
    assert d_functional(chi01, 2, INF, 0.125)[0] == pytest.approx(D_CHI_Q_INF_LAM_EIGHTH,
                                                                    rel=1e-12)
    assert d_functional(chi01, 2, 2.0, 0.125)[0] == pytest.approx(D_CHI_Q_2_LAM_EIGHTH,
                                                                    rel=1e-12)


@pytest.mark.parametrize("lam", [0.125, 0.25, 0.375])
def test_homogeneity(lam):
    p, n = 2.0, 1
    for f in generate_corpus(11, 4):
        base = d_functional(f, p, INF, lam)[0]
        for j in (1, 2, -1):
            v = d_functional(dilate(f, 2.0 ** j), p, INF, lam)[0]
            assert v / base == pytest.approx(2.0 ** (j * (n / p - lam - n)), rel=1e-9)


def test_window_rejected(chi01):
    with pytest.raises(ValueError, match="outside"):
        d_functional(chi01, 2, INF, 0.5)


def test_weighted_reduces_to_power():
    for f in generate_corpus(12, 8):
        for q in (INF, 2.0):
            a = d_functional(f, 2, q, 0.25)[0]
            b = d_functional_weighted(f, 2, q, Weight.power(-0.25))[0]
            assert b == pytest.approx(a, rel=1e-12)


def test_weighted_zero_and_damped():
    assert d_functional_weighted(StepFunction(1, 0, {}), 2, INF, Weight.power(-0.25))[0] == 0
    w = Weight.log_damped_power(-0.25, 1.0)
    for f in generate_corpus(13, 5):
        v = d_functional_weighted(f, 2, INF, w)[0]
        assert math.isfinite(v) and v <= d_functional(f, 2, INF, 0.25)[0] * (1 + 1e-12)


def test_profile_csv(tmp_path, chi01):
    _, prof = d_functional(chi01, 2, INF, 0.25)
    path = tmp_path / "prof.csv"
    prof.to_csv(str(path))
    head = path.read_text().splitlines()[0]
    assert head.split(",")[:3] == ["m", "best_nu", "value_m"]


def test_campanato_rhs():
    v = Weight.power(-0.5)
    assert campanato_rhs(indicator(1, 2), v, INF) == pytest.approx(1.0)
    for f in generate_corpus(14, 6):
        for q in (INF, 2.0, 1.0):
            assert campanato_rhs(f, v, q) == pytest.approx(truncated_norm(f, 0.5, q, 1),
                                                           rel=1e-12)
    f = StepFunction(1, 0, {(1,): 1.0, (5,): 2.0})
    g1, g2 = StepFunction(1, 0, {(1,): 1.0}), StepFunction(1, 0, {(5,): 2.0})
    assert campanato_rhs(f, v, 1.0) == pytest.approx(campanato_rhs(g1, v, 1.0)
                                                     + campanato_rhs(g2, v, 1.0))


def test_campanato_sup_functional():
    for f in generate_corpus(15, 6):
        v0 = campanato_sup_functional(f, 0.0)
        assert f.l1() * (1 - 1e-12) <= v0 <= 2 * f.l1()
    f = indicator(1, 2)
    # dense scan over s as the oracle
    assert campanato_sup_functional(f, 0.5) == pytest.approx(1.12, abs=0.01)
    assert campanato_sup_functional(f, 1.0) == pytest.approx(1.5, rel=1e-9)


def test_gm_constant():
    chi = StepFunction(1, 0, {(0,): 1.0})
    assert math.isfinite(gm_constant(chi))
    assert math.isfinite(gm_constant(gm_radial(0.5, level=-8)))
    prev = 0.0
    for bg in (1e-1, 1e-3, 1e-6):
        spike = StepFunction(1, -2, {**{(k,): bg for k in range(16)}, (5,): 1.0})
        c = gm_constant(spike)
        assert c > prev
        prev = c
    assert prev > 1e5


def test_campanato_weight_conditions():
    ok, _ = campanato_weight_conditions(Weight.power(-0.5), Weight.power(-1.0), 2.0)
    assert ok
    ok0, w0 = campanato_weight_conditions(Weight.power(0.0), Weight.power(-0.5), 2.0)
    ok1, w1 = campanato_weight_conditions(Weight.power(-1.0), Weight.power(-1.5), 2.0)
    # conditions are (sup, lower sum, upper sum)
    assert not ok0 and w0["conditions"] == (True, True, False)
    assert not ok1 and w1["conditions"] == (True, False, True)
