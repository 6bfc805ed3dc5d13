import itertools
import math

import numpy as np
import pytest

from mct.sequences import (IndexedSeq, best_subset_average, convolve, cstar_star_profile,
                           dsk_sample, hardy_bound_check, hyperbolic_cross,
                           hyperbolic_cross_blocks, hyperbolic_cross_size, inverse_product_seq,
                           lorentz_seq_norm, rearrange, rho_block)


def seq(d):
    return IndexedSeq(1, {(k,): v for k, v in d.items()})


def test_rearrange_small():
    r = rearrange(seq({0: 1, 1: 3, -2: 2}))
    assert list(r.a_star) == [3, 2, 1]
    assert np.allclose(r.a_star_star, [3, 2.5, 2])
    assert np.allclose(rearrange(IndexedSeq.from_array([5] * 4)).a_star_star, 5)


def test_rearrange_matches_subset_enumeration(rng):
    for _ in range(50):
        s = int(rng.integers(1, 9))
        a = IndexedSeq.from_array(rng.uniform(0, 1, s))
        r = rearrange(a)
        for nu in range(1, s + 1):
            brute = max(sum(c) for c in itertools.combinations(a.vals, nu)) / nu
            assert r.star_star(nu) == pytest.approx(brute, abs=1e-12)
            assert best_subset_average(a, nu) == pytest.approx(brute, abs=1e-12)


def test_lorentz_seq_norm():
    ones = IndexedSeq.from_array([1.0] * 4)
    assert lorentz_seq_norm(ones, 2, 2) == pytest.approx(2.0)
    assert lorentz_seq_norm(seq({7: 2.5}), 3, 1.5) == pytest.approx(2.5)
    assert lorentz_seq_norm(seq({0: 1, 1: 3, 2: 2}), 2, math.inf) == pytest.approx(3.0)


def test_convolve(rng):
    c = IndexedSeq.from_array(rng.uniform(0, 1, 5), start=-2)
    assert convolve(seq({0: 1.0}), c).as_dict() == pytest.approx(c.as_dict())
    box = seq({0: 1.0, 1: 1.0})
    assert convolve(box, box).as_dict() == {(0,): 1.0, (1,): 2.0, (2,): 1.0}
    b = IndexedSeq.from_array(rng.uniform(0, 1, 7), start=3)
    assert convolve(b, c).l1() == pytest.approx(b.l1() * c.l1(), rel=1e-13)


def test_inverse_product_seq():
    c1 = inverse_product_seq(1, 10)
    assert c1.get(0) == 1.0 and c1.get(2) == 0.5
    assert inverse_product_seq(2, 5).get((2, 3)) == pytest.approx(1 / 6)
    assert list(rearrange(c1).a_star[:3]) == [1.0, 1.0, 1.0]


def test_hyperbolic_cross():
    assert hyperbolic_cross(1, 1) == {(1,), (-1,)}
    assert hyperbolic_cross(2, 1) == {(k,) for k in (1, -1, 2, -2, 3, -3)}
    for dim in (1, 2):
        for m in range(dim, 9):
            E = hyperbolic_cross(m, dim)
            assert len(E) == hyperbolic_cross_size(m, dim)
            parts = [set(map(tuple, rho_block(nu).tolist())) for nu, _ in
                     hyperbolic_cross_blocks(m, dim)]
            assert sum(len(p) for p in parts) == len(E)
            assert set().union(*parts) == E
    ratios = [hyperbolic_cross_size(m, 2) / (2 ** m * m) for m in range(2, 21)]
    assert 0.25 <= min(ratios) and max(ratios) <= 4


def test_cstar_star_profile():
    n, v = cstar_star_profile(1, 1000)
    assert v[0] == 1.0 and v[2] == 1.0
    assert 1 <= 1000 * v[999] / math.log(1001) <= 3


def test_dsk_sample(rng):
    delta = seq({0: 1.0})
    assert dsk_sample(delta, [(0,)], [(0,)]) == pytest.approx(1.0)
    assert dsk_sample(delta, [(0,)], [(0,), (1,)]) == pytest.approx(0.5)
    c = inverse_product_seq(1, 40)
    _, cs = cstar_star_profile(1, 16)
    for _ in range(30):
        om = rng.choice(np.arange(-15, 15), int(rng.integers(1, 17)), replace=False)
        e = rng.choice(np.arange(-15, 15), int(rng.integers(1, 17)), replace=False)
        v = dsk_sample(c, [(int(t),) for t in om], [(int(t),) for t in e])
        assert v <= cs[max(om.size, e.size) - 1] * (1 + 1e-12)


def test_hardy_check():
    ns = np.arange(-40, 1)
    b = IndexedSeq(1, idx=ns[:, None], vals=2.0 ** ns)
    a = IndexedSeq(1, idx=ns[:, None], vals=(ns == 0).astype(float))
    r = hardy_bound_check(a, b, 1.0)
    assert r.lhs == pytest.approx(1.0)
    assert r.mid == pytest.approx(2.0, rel=1e-9)
    z = hardy_bound_check(IndexedSeq(1, idx=ns[:, None], vals=np.zeros(ns.size)), b, 1.0)
    assert (z.lhs, z.mid, z.rhs) == (0.0, 0.0, 0.0)


def test_hardy_ratio_bounded(rng):
    ns = np.arange(-20, 21)
    b = IndexedSeq(1, idx=ns[:, None], vals=2.0 ** (ns / 2))
    worst = 0.0
    for _ in range(100):
        a = IndexedSeq(1, idx=ns[:, None], vals=rng.uniform(0, 1, ns.size))
        r = hardy_bound_check(a, b, 1.0)
        assert r.lhs <= r.mid * (1 + 1e-12)
        worst = max(worst, r.mid / r.lhs)
    assert worst <= 1 / (1 - 2 ** -0.5) + 1e-9
