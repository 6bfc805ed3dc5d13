import math

import numpy as np
import pytest

from mct import _kernels as K
from mct.constructions import lacunary_product
from mct.fourier import (ClosedForm, PowerWeighted, average_on_ball, ft, ft_eval, ft_lp_on_cube,
                         ft_point, morrey_norm_ft)
from mct.grid import DyadicCube, StepFunction
from mct.harness import generate_corpus

INF = math.inf


def test_ft_point_box(chi01):
    assert ft_point(chi01, 0.0) == pytest.approx(1.0)
    assert abs(ft_point(chi01, 0.5)) == pytest.approx(2 / math.pi, rel=1e-14)


def test_lacunary_closed_form(rng):
    N = 10
    f = lacunary_product(N)
    ys = rng.uniform(-20, 20, 100)
    ys = ys[np.abs(ys) > 1e-9]
    box = (1 - np.exp(-2j * math.pi * ys)) / (2j * math.pi * ys)
    ref = box * sum(np.exp(-2j * math.pi * 2 ** k * ys) for k in range(1, N + 1))
    assert np.max(np.abs(ft_eval(f, ys) - ref)) < 1e-12


def test_uniform_matches_pointwise(rng):
    for f in generate_corpus(7, 5):
        g = ft(f)
        u = g.evaluate_uniform(-3.0, 0.01, 600)
        pts = g.evaluate(-3.0 + 0.01 * np.arange(600))
        assert np.max(np.abs(u - pts)) < 1e-10


def test_cube_integral_constant():
    c = ClosedForm(lambda ys: 2.0 + 0 * ys, mass_bound=INF)
    for res in (4, 16):
        v, _ = ft_lp_on_cube(c, 3.0, DyadicCube(-2, (5,)), res)
        assert v == pytest.approx(2.0 * 0.25 ** (1 / 3), rel=1e-14)


def test_cube_integral_plancherel_ceiling(chi01):
    v, _ = ft_lp_on_cube(ft(chi01), 2.0, DyadicCube(0, (0,)), 256)
    assert v <= 1.0


def test_refinement_delta_shrinks(chi01):
    g = ft(chi01)
    q = DyadicCube(1, (0,))
    d = [ft_lp_on_cube(g, 2.0, q, r)[1] for r in (8, 16, 32)]
    assert d[1] <= d[0] / 2 and d[2] <= d[1] / 2


def test_average_on_ball(chi01):
    c = ClosedForm(lambda ys: (1.5 - 2j) + 0 * ys, mass_bound=INF)
    assert average_on_ball(c, 0.3, [0.7]) == pytest.approx(1.5 - 2j)
    sym = StepFunction(1, 0, {(0,): 1.0, (-1,): 1.0})
    assert abs(average_on_ball(ft(sym), 0.5, [0.0]).imag) < 1e-12
    g = ft(chi01)
    errs = [abs(average_on_ball(g, 2.0 ** -k, [0.3]) - g(0.3)) for k in range(1, 6)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_power_weighted(chi01):
    g = PowerWeighted(ft(chi01), -0.5)
    y = np.array([0.25, -4.0])
    assert np.allclose(g.evaluate(y), ft_eval(chi01, y) * np.abs(y) ** -0.5)


def test_morrey_ft_lower_bound_plancherel(chi01):
    # with lambda = 0 every term is at most ||f^||_2 = ||f||_2
    for f in [chi01] + generate_corpus(8, 3):
        r = morrey_norm_ft(ft(f), (2, INF, 0.0), resolution=16, max_resolution=64)
        assert r.value <= f.lp_norm(2) * (1 + 1e-9)
        assert r.lower_bound


def test_numpy_kernels_agree(rng):
    xs = rng.uniform(-10, 10, 17)
    cf = rng.normal(size=17) + 1j * rng.normal(size=17)
    a = K.expsum_uniform(-2.0, 0.003, 2000, xs, cf)
    b = K.NUMPY_KERNELS["expsum_uniform"](-2.0, 0.003, 2000, xs, cf)
    assert np.max(np.abs(a - b)) < 1e-10
    g = rng.normal(size=500) + 1j * rng.normal(size=500)
    assert K.modulus_sampled(g, 9) == pytest.approx(K.NUMPY_KERNELS["modulus_sampled"](g, 9))
    assert K.osc_sampled(g, 8, 4, 8, 480, 2.0) == pytest.approx(
        K.NUMPY_KERNELS["osc_sampled"](g, 8, 4, 8, 480, 2.0))
