import math

import numpy as np
import pytest

from mct.grid import (Annulus, CubeUnion, DyadicCube, StepFunction, cell_integrals, dilate,
                      lp_norm_region, modulate, refine, transform, translate)


def test_cube_geometry():
    q = DyadicCube(-1, (3,))
    assert q.side == 0.5 and q.corner[0] == 1.5
    kids = DyadicCube(1, (0, 0)).split(-1)
    assert len(kids) == 2 ** (2 * 2)
    assert len(set(kids)) == len(kids)


def test_refine(chi01):
    r = refine(chi01, -1)
    assert r.level == -1 and r.n_cells == 2
    assert sorted(int(k) for k in r.idx[:, 0]) == [0, 1]
    assert np.allclose(r.coef, 1.0)
    assert refine(chi01, 0) == chi01


def test_refine_2d_keeps_mass():
    f = StepFunction(2, 1, {(0, 0): 1.0, (1, -1): 2.0})
    r = refine(f, -1)
    assert r.n_cells == 32
    assert r.l1() == pytest.approx(f.l1(), rel=1e-15)


def test_refine_rejects_coarsening(chi01):
    with pytest.raises(ValueError):
        refine(chi01, 1)


def test_cell_integrals(chi01):
    assert cell_integrals(chi01, 0).as_dict() == {(0,): 1.0}
    assert cell_integrals(chi01, -1).as_dict() == {(0,): 0.5, (1,): 0.5}
    f = StepFunction(1, 0, {(0,): 1.0, (1,): -2.0})
    assert cell_integrals(f, 1).as_dict() == {(0,): 3.0}


def test_lp_norm_region(chi01):
    assert lp_norm_region(chi01, 2, CubeUnion([DyadicCube(0, (0,))])) == pytest.approx(1.0)
    assert lp_norm_region(chi01, 2, CubeUnion([DyadicCube(-1, (0,))])) == pytest.approx(2 ** -0.5)
    assert lp_norm_region(chi01.scaled(3), 3, Annulus(1, 2)) == 0.0


def test_transforms(chi01):
    d = dilate(chi01, 2)
    assert d.level == -1 and d.n_cells == 1 and d.l1() == 0.5
    t = translate(chi01, 3)
    assert t.evaluate(3.5) == 1.0 and t.evaluate(0.5) == 0.0
    f = StepFunction(2, 0, {(0, 0): 1.0, (2, 1): 1j})
    for j in (-2, 1, 3):
        assert dilate(f, 2.0 ** j).l1() == pytest.approx(f.l1() * 2.0 ** (-2 * j), rel=1e-15)
    assert transform(chi01, "translate", 3) == t
    m = modulate(chi01, 2.0)
    assert abs(m.evaluate(np.array([0.25]))[0]) == pytest.approx(1.0)


def test_values_are_exact_coefficients():
    f = StepFunction(1, -2, {(5,): 2 - 1j})
    assert f.evaluate(5 * 0.25 + 0.1) == 2 - 1j
    assert f.evaluate(6 * 0.25) == 0
    assert f.support_measure == 0.25


def test_json_round_trip(tmp_path):
    f = StepFunction(2, -1, {(0, 1): 1.5, (-3, 2): -0.5j})
    p = tmp_path / "f.json"
    f.save(str(p))
    assert StepFunction.load(str(p)) == f


def test_duplicate_cells_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        StepFunction.from_dict({"dim": 1, "level": 0,
                                "cells": [{"k": [0], "re": 1}, {"k": [0], "re": 2}]})
