import math
import numpy as np
import pytest

from mct import constructions as cons
from mct.fourier import ft, ft_eval
from mct.grid import StepFunction
from mct.norms import lorentz_norm, morrey_norm, power_weighted_lp_norm, rearrangement

INF = math.inf


def test_lacunary_cells():
    f = cons.lacunary_product(1)
    assert f.n_cells == 1 and f.evaluate(2.5) == 1
    g = cons.lacunary_product(3)
    assert sorted(int(k) for k in g.idx[:, 0]) == [2, 4, 8] and g.l1() == 3
    assert cons.lacunary_product(3, dim=2).n_cells == 9
    with pytest.raises(ValueError):
        cons.lacunary_product(25)


def test_lacunary_morrey_bounded():
    vals = [morrey_norm(cons.lacunary_product(N), (2, INF, 0.5)).value for N in range(2, 21)]
    assert max(vals) <= 1.0 + 1e-12


def test_lacunary_fourier_l2_matches_quadrature():
    from scipy import integrate
    f = cons.lacunary_product(4)
    ys = np.linspace(0, 1, 200001)
    num = math.sqrt(integrate.simpson(np.abs(ft_eval(f, ys)) ** 2, x=ys))
    assert cons.lacunary_fourier_l2(4) == pytest.approx(num, rel=1e-7)


def test_rudin_shapiro():
    assert list(cons.rudin_shapiro(2)) == [1, 1]
    assert list(cons.rudin_shapiro(4)) == [1, 1, 1, -1]
    with pytest.raises(ValueError):
        cons.rudin_shapiro(6)
    for j in range(4, 13):
        eps = cons.rudin_shapiro(2 ** j)
        ys = np.arange(4096) / 4096
        m = np.max(np.abs(cons.polynomial_eval(eps, ys))) / math.sqrt(eps.size)
        assert 1 <= m <= math.sqrt(2) + 1e-12


def test_polynomial_l2_matches_quadrature():
    from scipy import integrate
    eps = cons.rudin_shapiro(64)
    a, b = cons.A2_INTERVAL
    ys = np.linspace(a, b, 20001)
    num = math.sqrt(integrate.simpson(np.abs(cons.polynomial_eval(eps, ys)) ** 2, x=ys))
    assert cons.polynomial_l2_interval(eps, a, b) == pytest.approx(num, rel=1e-8)


def test_ultraflat_transform_factorizes(rng):
    N = 31
    f = cons.ultraflat_counterexample(N)
    ys = rng.uniform(-3, 3, 50)
    ref = cons.box_factor(ys) * cons.polynomial_eval(cons.rudin_shapiro(N + 1), ys)
    assert np.max(np.abs(ft_eval(f, ys) - ref)) < 1e-12


def test_modulated_box(rng):
    g0, g5 = cons.modulated_box(0), cons.modulated_box(5)
    assert abs(g5(5.0)) == pytest.approx(1.0)
    s = rng.uniform(-10, 10, 100)
    assert np.allclose(np.abs(g5.evaluate(s + 5)), np.abs(g0.evaluate(s)), atol=1e-12)
    box = StepFunction(1, 0, {(1,): 1.0})
    assert np.allclose(np.abs(g0.evaluate(s)), np.abs(ft_eval(box, s)), atol=1e-12)


def test_shifted_box():
    g = cons.shifted_box(5)
    gamma = 0.5
    v = power_weighted_lp_norm(g, 2.0, gamma)
    assert 5 ** gamma <= v <= 6 ** gamma


def test_log_singular():
    f = cons.log_singular(0.25, 2.0, level=-12)
    assert 0 < f.l1() < INF
    assert ft_eval(f, [0.0])[0].real == pytest.approx(f.l1(), rel=1e-12)
    ys = np.linspace(-1, 1, 41)
    assert np.min(np.abs(ft_eval(f, ys))) > 0.1 * f.l1()
    with pytest.raises(ValueError):
        cons.log_singular(0.5, 2.0)


def test_sharpness_example():
    f = cons.sharpness_example(0.6, 1)
    assert f.n_cells == 1 and f.evaluate(1.5) == 1
    K, alpha = 12, 0.6
    g = cons.sharpness_example(alpha, K)
    assert g.l1() == pytest.approx(sum(k ** -alpha for k in range(1, K + 1)))
    vals, ts = rearrangement(g)
    # f* equals t^{-alpha} on the t-th unit interval
    assert np.allclose(vals, np.arange(1, K + 1) ** -alpha)
    assert np.allclose(ts, np.arange(1, K + 1))
    with pytest.warns(UserWarning):
        cons.sharpness_example(0.9, 5, p=2.0, lam=0.25)


def test_gm_radial():
    f = cons.gm_radial(0.5, level=-16)
    assert f.l1() == pytest.approx(2.0, rel=0.01)
    vals, _ = rearrangement(f)
    assert np.allclose(np.sort(np.abs(f.coef))[::-1], vals)


def test_family_registry():
    f = cons.make_family("lacunary", N="5")
    assert f.n_cells == 5
    with pytest.raises(KeyError):
        cons.make_family("nope")
    with pytest.raises(KeyError):
        cons.make_family("lacunary", M=3)
