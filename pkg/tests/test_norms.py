import math

import numpy as np
import pytest

from mct.fourier import ClosedForm, ft
from mct.grid import StepFunction, indicator
from mct.harness import generate_corpus
from mct.norms import (NormParams, Weight, campanato_profile, campanato_seminorm, gamma_norm, inf_const_lp,
                       local_morrey_norm, lorentz_norm, modulus_sup, morrey_norm,
                       truncated_norm, xi_class_check)

INF = math.inf


def test_lorentz_examples(chi01):
    two = indicator(0, 2)
    for p in (1.0, 2.0, 3.0):
        assert lorentz_norm(two, p, INF) == pytest.approx(2 ** (1 / p))
    assert lorentz_norm(chi01, 2, 2) == pytest.approx(1.0)
    f = StepFunction(1, 0, {(0,): 2.0, (1,): 1.0, (2,): 1.0})
    assert lorentz_norm(f, 1, 1) == pytest.approx(4.0)


def test_lorentz_pp_is_lp():
    for f in generate_corpus(1, 10):
        assert lorentz_norm(f, 2.0, 2.0) == pytest.approx(f.lp_norm(2.0), rel=1e-12)


def test_morrey_examples(chi01):
    b = morrey_norm(chi01, (2, INF, 0.25), convention="balls").value
    assert b == pytest.approx(2 ** 0.25, rel=1e-9)
    assert morrey_norm(chi01, (2, INF, 0.0)).value == pytest.approx(1.0)


def test_morrey_cubes_vs_balls_bracket():
    p, lam = 2.0, 0.25
    C = 2 ** (1 / p + lam)
    for f in generate_corpus(2, 30):
        c = morrey_norm(f, (p, INF, lam)).value
        b = morrey_norm(f, (p, INF, lam), convention="balls").value
        assert 1 / C <= c / b <= C


def test_local_morrey_and_truncated():
    f = indicator(1, 2)
    assert truncated_norm(f, 0.5, INF, 1) == pytest.approx(1.0)
    lam = 0.3
    assert local_morrey_norm(f, (1, INF, lam)).value == pytest.approx(2 ** -lam)
    for g in generate_corpus(3, 20):
        r = local_morrey_norm(g, (2, INF, lam)).value / truncated_norm(g, -lam, INF, 2)
        assert 2 ** -lam * (1 - 1e-12) <= r <= 1 / (2 ** lam - 1)


def test_campanato_constant_is_zero():
    c = ClosedForm(lambda ys: 3.0 + 0 * np.asarray(ys, dtype=float), mass_bound=INF,
                   scales=(-4, 2))
    assert campanato_seminorm(c, (2, INF, 0.25), k_range=(-6, 2), region=(-4, 4)).value == 0.0


def test_campanato_plateau_edges_count():
    f = StepFunction(1, 0, {(k,): 3.0 for k in range(-50, 50)})
    # balls straddling the edge of the plateau see the jump
    assert campanato_profile(f, 2.0, [-3])[0] > 0


def test_campanato_ramp_closed_form():
    # g(x) = x: ||g - A g||_{L_2(B_r)} = (2 r^3 / 3)^{1/2} for every center
    g = ClosedForm(lambda ys: np.asarray(ys, dtype=float) + 0j, mass_bound=INF, scales=(-4, 0))
    v = campanato_seminorm(g, (2, INF, 1.0), k_range=(-8, -2), region=(0, 1)).value
    assert v == pytest.approx(math.sqrt(2 / 3) * 0.5, rel=1e-6)


def test_step_with_jump_has_infinite_campanato_above_n_over_p():
    f = StepFunction(1, -6, {(k,): (k + 0.5) / 64 for k in range(64)})
    assert campanato_seminorm(f, (2, INF, 1.0)).value == INF


def test_inf_const_factor_two(rng):
    for f in generate_corpus(4, 10):
        lo, hi = f.support_bounds()
        for p in (1.0, 2.0, 3.5):
            c = float(rng.uniform(lo[0], hi[0]))
            ic, osc = inf_const_lp(f, p, c, float(2.0 ** rng.uniform(-3, 4)))
            assert ic <= osc * (1 + 1e-9)
            assert osc <= 2 * ic * (1 + 1e-7) + 1e-14


def test_gamma_norm(chi01):
    assert gamma_norm(StepFunction(1, 0, {}), Weight.power(0.5), INF) == 0.0
    assert gamma_norm(chi01, Weight.power(0.5), INF) == pytest.approx(1.0)


def test_gamma_equals_lorentz_two_star():
    # with v = x^{1/s'} the gamma norm is the f** version of the Lorentz norm,
    # which sits between the f* norm and s times it
    p, q, lam = 2.0, 2.0, 0.25
    prm = NormParams(p, q, lam)
    v = Weight.power(lam + (1 - 1 / p) - 1 / q)
    for f in generate_corpus(5, 10):
        g = gamma_norm(f, v, q)
        lz = lorentz_norm(f, prm.s_prime, q)
        assert lz * (1 - 1e-9) <= g <= prm.s * lz * (1 + 1e-9)


def test_xi_class():
    assert xi_class_check(Weight.power(-0.25), 1, 2.0, INF)[0] is True
    assert xi_class_check(Weight.power(-0.75), 1, 2.0, INF)[0] is False
    assert xi_class_check(Weight.power(0.0), 1, 2.0, INF)[1]["large_r"] is True


def test_modulus_sup(chi01):
    const = lambda ys: np.ones_like(np.asarray(ys, dtype=float))
    assert modulus_sup(const, 0.1, region=(-4, 4)) == 0.0
    g = ft(chi01)
    for t in (0.5, 0.125, 2 ** -6):
        w = modulus_sup(g, t, region=(-8, 8))
        assert w <= 2 * math.pi * t * 0.5 + 1e-12
        assert modulus_sup(g, 2 * t, region=(-8, 8)) <= 2 * w + 1e-12


def test_weight_spec(tmp_path):
    w = Weight.parse("pow:-0.25")
    assert w(16.0) == pytest.approx(0.5)
    p = tmp_path / "w.csv"
    p.write_text("k,w\n0,1\n1,0.5\n2,0.25\n")
    t = Weight.parse(f"table:{p}")
    assert t.dyadic(1) == pytest.approx(0.5)
    assert t.dyadic(5) == pytest.approx(2.0 ** -5)
    with pytest.raises(ValueError):
        Weight.parse("exp:2")


def test_bad_parameters_rejected(chi01):
    with pytest.raises(ValueError):
        morrey_norm(chi01, (2, INF, 0.75))
    with pytest.raises(ValueError):
        lorentz_norm(chi01, 0, 2)
