"""Dyadic cubes and step functions with exact integrals.

A step function lives on the cells Q_k^m = [0, 2^m)^n + 2^m k of one fixed
level m.  Everything here is exact up to floating point rounding of the
stored coefficients: cell measures are powers of two.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .sequences import IndexedSeq, _as_index_array, group_sum

MAX_CELLS = 50_000_000


def _pow2(e):
    return math.ldexp(1.0, int(e))


def shift_floor(idx, s):
    """floor(idx / 2^s) for s >= 0, elementwise, for int64 or object arrays."""
    if s == 0:
        return idx.copy()
    if idx.dtype == object:
        d = 1 << int(s)
        return idx // d
    if s >= 63:
        return np.where(idx < 0, -1, 0).astype(np.int64)
    return np.right_shift(idx, s)


def _to_float(idx):
    if idx.dtype == object:
        return np.array([[float(v) for v in row] for row in idx], dtype=float).reshape(idx.shape)
    return idx.astype(float)


@dataclass(frozen=True)
class DyadicCube:
    """Q_k^m = [0, 2^m)^n + 2^m k."""

    level: int
    index: tuple

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(int(v) for v in np.atleast_1d(self.index)))

    @property
    def dim(self):
        return len(self.index)

    @property
    def side(self):
        return _pow2(self.level)

    @property
    def measure(self):
        return _pow2(self.level * self.dim)

    @property
    def corner(self):
        return tuple(self.side * k for k in self.index)

    def contains(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        a = np.array(self.corner)
        return bool(np.all(x >= a) and np.all(x < a + self.side))

    def parent(self, level):
        """The unique cube of a coarser ``level`` containing this one."""
        if level < self.level:
            raise ValueError("parent level must not be finer")
        s = level - self.level
        return DyadicCube(level, tuple(k >> s for k in self.index))

    def split(self, level):
        """All 2^{n(m - level)} subcubes of the finer ``level``."""
        if level > self.level:
            raise ValueError("split level must not be coarser")
        s = self.level - level
        base = [k << s for k in self.index]
        rng = [range(b, b + (1 << s)) for b in base]
        grids = np.meshgrid(*[np.array(r, dtype=np.int64) for r in rng], indexing="ij")
        return [DyadicCube(level, tuple(int(v) for v in row))
                for row in np.stack([g.reshape(-1) for g in grids], axis=1)]


class StepFunction:
    """Complex step function on the level-``level`` dyadic grid of R^dim.

    ``cells`` is a mapping index -> coefficient, an iterable of pairs, or a
    tuple ``(idx, coef)`` of arrays.  Zero coefficients are dropped and
    duplicate indices are rejected.
    """

    __slots__ = ("dim", "level", "idx", "coef")

    def __init__(self, dim, level, cells, *, check=True):
        dim = int(dim)
        if dim not in (1, 2):
            raise ValueError("only dimensions 1 and 2 are supported")
        self.dim = dim
        self.level = int(level)
        if isinstance(cells, tuple) and len(cells) == 2 and isinstance(cells[1], np.ndarray):
            idx, coef = cells
            idx = _as_index_array(idx if isinstance(idx, np.ndarray) and idx.ndim == 2
                                  else list(idx), dim)
            coef = np.asarray(coef, dtype=complex).reshape(-1)
        else:
            items = list(cells.items()) if isinstance(cells, dict) else list(cells)
            idx = _as_index_array([k for k, _ in items], dim)
            coef = np.array([complex(v) for _, v in items], dtype=complex)
        if idx.shape[0] != coef.size:
            raise ValueError("index and coefficient arrays differ in length")
        keep = coef != 0
        idx, coef = idx[keep], coef[keep]
        if idx.shape[0]:
            if idx.dtype == object:
                order = sorted(range(idx.shape[0]), key=lambda i: tuple(idx[i]))
                order = np.array(order, dtype=np.int64)
            else:
                order = np.lexsort(idx.T[::-1])
            idx, coef = idx[order], coef[order]
            if check and idx.shape[0] > 1:
                same = np.all(idx[1:] == idx[:-1], axis=1)
                if np.any(same):
                    j = int(np.argmax(same))
                    raise ValueError(f"duplicate cell index {tuple(int(v) for v in idx[j])}")
        self.idx = idx
        self.coef = coef

    # -- basic quantities ---------------------------------------------------
    @property
    def n_cells(self):
        return self.coef.size

    @property
    def h(self):
        return _pow2(self.level)

    @property
    def cell_measure(self):
        return _pow2(self.level * self.dim)

    @property
    def support_measure(self):
        return self.n_cells * self.cell_measure

    @property
    def is_zero(self):
        return self.n_cells == 0

    @property
    def is_real(self):
        return bool(np.all(self.coef.imag == 0))

    @property
    def lo(self):
        """Lower corners of the cells as floats, shape (N, dim)."""
        return _to_float(self.idx) * self.h

    @property
    def hi(self):
        return self.lo + self.h

    def abs_coef(self):
        return np.abs(self.coef)

    def sup_norm(self):
        return float(np.abs(self.coef).max()) if self.n_cells else 0.0

    def lp_norm(self, p):
        if self.is_zero:
            return 0.0
        if math.isinf(p):
            return self.sup_norm()
        return float((np.sum(np.abs(self.coef) ** p) * self.cell_measure) ** (1.0 / p))

    def l1(self):
        return float(np.abs(self.coef).sum() * self.cell_measure)

    def integral(self):
        return complex(self.coef.sum() * self.cell_measure)

    def support_bounds(self):
        """(min lower corner, max upper corner) per coordinate."""
        lo = self.lo
        return lo.min(axis=0), lo.max(axis=0) + self.h

    def max_abs_point(self):
        """Largest |x| over the closure of the support (Euclidean)."""
        lo, hi = self.lo, self.hi
        far = np.maximum(np.abs(lo), np.abs(hi))
        return float(np.sqrt((far ** 2).sum(axis=1)).max()) if self.n_cells else 0.0

    def evaluate(self, x):
        """Pointwise values at points ``x`` of shape (M, dim) or (M,) in 1-D."""
        x = np.asarray(x, dtype=float)
        if self.dim == 1:
            x = x.reshape(-1, 1)
        k = np.floor(x / self.h)
        table = {tuple(int(v) for v in row): c for row, c in zip(self.idx, self.coef)}
        return np.array([table.get(tuple(int(v) for v in row), 0j) for row in k], dtype=complex)

    # -- algebra ------------------------------------------------------------
    def scaled(self, a):
        return StepFunction(self.dim, self.level, (self.idx, self.coef * a), check=False)

    def conj(self):
        return StepFunction(self.dim, self.level, (self.idx, self.coef.conj()), check=False)

    def abs(self):
        return StepFunction(self.dim, self.level, (self.idx, np.abs(self.coef).astype(complex)),
                            check=False)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (self.dim == other.dim and self.level == other.level
                and self.idx.shape == other.idx.shape
                and bool(np.all(self.idx == other.idx)) and bool(np.all(self.coef == other.coef)))

    __hash__ = None

    def __repr__(self):
        return f"StepFunction(dim={self.dim}, level={self.level}, cells={self.n_cells})"

    # -- serialization ------------------------------------------------------
    def to_dict(self):
        return {
            "dim": self.dim,
            "level": self.level,
            "cells": [{"k": [int(v) for v in k], "re": float(c.real), "im": float(c.imag)}
                      for k, c in zip(self.idx, self.coef)],
        }

    @classmethod
    def from_dict(cls, d):
        try:
            dim, level, cells = int(d["dim"]), int(d["level"]), d["cells"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed step function record: {exc}") from None
        keys = [tuple(c["k"]) for c in cells]
        if len(set(keys)) != len(keys):
            seen = set()
            for k in keys:
                if k in seen:
                    raise ValueError(f"duplicate cell index {k} in input")
                seen.add(k)
        vals = [complex(float(c.get("re", 0.0)), float(c.get("im", 0.0))) for c in cells]
        return cls(dim, level, list(zip(keys, vals)))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(fh.read())


def indicator(a, b, level=0):
    """chi_{[a, b)} in 1-D on the grid of the given level."""
    h = _pow2(level)
    ka, kb = a / h, b / h
    if ka != int(ka) or kb != int(kb):
        raise ValueError("interval ends must lie on the grid")
    return StepFunction(1, level, {(k,): 1.0 for k in range(int(ka), int(kb))})


def box(lo, hi, level=0):
    """Indicator of a product of grid-aligned intervals."""
    lo, hi = np.atleast_1d(lo), np.atleast_1d(hi)
    h = _pow2(level)
    ranges = []
    for a, b in zip(lo, hi):
        if a / h != int(a / h) or b / h != int(b / h):
            raise ValueError("box corners must lie on the grid")
        ranges.append(range(int(a / h), int(b / h)))
    grids = np.meshgrid(*[np.array(r, dtype=np.int64) for r in ranges], indexing="ij")
    idx = np.stack([g.reshape(-1) for g in grids], axis=1)
    return StepFunction(len(lo), level, (idx, np.ones(idx.shape[0], dtype=complex)))


# ---------------------------------------------------------------------------
# exact operations
# ---------------------------------------------------------------------------

def refine(f, level):
    """Same function written on the finer grid of the given level."""
    level = int(level)
    if level > f.level:
        raise ValueError("cannot coarsen exactly: target level is above the current one")
    s = f.level - level
    if s == 0:
        return f
    per = 1 << (s * f.dim)
    if f.n_cells * per > MAX_CELLS:
        raise ValueError(f"refinement would create {f.n_cells * per} cells")
    sub = np.arange(1 << s, dtype=np.int64)
    if f.dim == 1:
        offs = sub.reshape(-1, 1)
    else:
        g0, g1 = np.meshgrid(sub, sub, indexing="ij")
        offs = np.stack([g0.reshape(-1), g1.reshape(-1)], axis=1)
    base = f.idx * (1 << s) if f.idx.dtype != object else f.idx * (1 << s)
    idx = (base[:, None, :] + offs[None, :, :]).reshape(-1, f.dim)
    coef = np.repeat(f.coef, per)
    return StepFunction(f.dim, level, (idx, coef), check=False)


def level_sums(f, level, p=1.0):
    """Integrals of |f|^p over the level-``level`` cubes meeting the support.

    Requires ``level >= f.level``; returns (parent indices, sums).
    """
    s = int(level) - f.level
    if s < 0:
        raise ValueError("level_sums aggregates; use cell_integral_groups below f.level")
    w = np.abs(f.coef) ** p * f.cell_measure
    keys = shift_floor(f.idx, s)
    if s == 0:
        return keys, w
    return group_sum(keys, w)


def cell_integrals(f, level):
    """b_k = integral of |f| over Q_k^level, as an IndexedSeq."""
    level = int(level)
    if level >= f.level:
        keys, sums = level_sums(f, level, 1.0)
        return IndexedSeq(f.dim, idx=keys, vals=np.asarray(sums, dtype=float), check=False)
    g = refine(f, level)
    return IndexedSeq(f.dim, idx=g.idx, vals=np.abs(g.coef) * g.cell_measure, check=False)


def cell_integral_groups(f, level, p=1.0):
    """Run-length description of the level integrals below ``f.level``.

    Returns (values, multiplicities) sorted by decreasing value, where each
    value is an integral of |f|^p over one subcube and the multiplicity is
    the number of subcubes carrying it (as a float; it can be astronomically
    large).
    """
    s = f.level - int(level)
    if s < 0:
        raise ValueError("use level_sums above f.level")
    a = np.abs(f.coef) ** p
    uniq, counts = np.unique(a, return_counts=True)
    uniq, counts = uniq[::-1], counts[::-1]
    vals = uniq * _pow2(f.dim * int(level))
    mult = counts.astype(float) * _pow2(f.dim * s)
    return vals, mult


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubeUnion:
    """Disjoint union of dyadic cubes."""

    cubes: tuple

    def __init__(self, cubes):
        cubes = tuple(cubes)
        for i, a in enumerate(cubes):
            for b in cubes[i + 1:]:
                lo, hi = (a, b) if a.level <= b.level else (b, a)
                if lo.parent(hi.level) == hi:
                    raise ValueError("cubes in a union must be disjoint")
        object.__setattr__(self, "cubes", cubes)


@dataclass(frozen=True)
class Ball:
    """Open Euclidean ball."""

    center: tuple
    radius: float


@dataclass(frozen=True)
class Annulus:
    """{r_in <= |x| < r_out} centered at the origin."""

    r_in: float
    r_out: float


def _cube_power_integral(f, cube, p):
    if cube.dim != f.dim:
        raise ValueError("cube and function dimensions differ")
    a = np.abs(f.coef) ** p
    if cube.level >= f.level:
        keys = shift_floor(f.idx, cube.level - f.level)
        mask = np.all(keys == np.array(cube.index, dtype=keys.dtype), axis=1)
        return float(a[mask].sum() * f.cell_measure)
    parent = cube.parent(f.level)
    mask = np.all(f.idx == np.array(parent.index, dtype=f.idx.dtype), axis=1)
    return float(a[mask].sum() * cube.measure)


def ball_overlaps(f, center, radius):
    """Measure of each cell intersected with the open ball B_radius(center)."""
    center = np.atleast_1d(np.asarray(center, dtype=float))
    if radius <= 0 or f.is_zero:
        return np.zeros(f.n_cells)
    lo = f.lo - center[None, :]
    hi = lo + f.h
    if f.dim == 1:
        return np.clip(np.minimum(hi[:, 0], radius) - np.maximum(lo[:, 0], -radius), 0.0, None)
    return _kernels.rect_disk_areas(lo[:, 0].copy(), hi[:, 0].copy(), lo[:, 1].copy(),
                                    hi[:, 1].copy(), float(radius))


def power_integral_ball(f, p, center, radius):
    """Integral of |f|^p over B_radius(center), exact."""
    ov = ball_overlaps(f, center, radius)
    return float(np.sum(np.abs(f.coef) ** p * ov))


def lp_norm_region(f, p, region):
    """(integral over region of |f|^p)^{1/p}.

    Dyadic unions are summed exactly; balls and annuli use exact interval
    overlaps in 1-D and exact disk-rectangle areas in 2-D.
    """
    if f.is_zero:
        return 0.0
    if isinstance(region, DyadicCube):
        region = CubeUnion([region])
    if isinstance(region, CubeUnion):
        total = sum(_cube_power_integral(f, c, p) for c in region.cubes)
    elif isinstance(region, Ball):
        total = power_integral_ball(f, p, region.center, region.radius)
    elif isinstance(region, Annulus):
        zero = np.zeros(f.dim)
        total = (power_integral_ball(f, p, zero, region.r_out)
                 - power_integral_ball(f, p, zero, region.r_in))
        total = max(total, 0.0)
    else:
        raise TypeError(f"unsupported region {region!r}")
    return float(total ** (1.0 / p))


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModulatedStep:
    """x -> exp(2 pi i (N, x)) f(x) for a step function f."""

    base: StepFunction
    freq: tuple

    @property
    def dim(self):
        return self.base.dim

    def evaluate(self, x):
        x = np.asarray(x, dtype=float).reshape(-1, self.dim)
        phase = np.exp(2j * math.pi * (x @ np.asarray(self.freq, dtype=float)))
        return phase * self.base.evaluate(x)


def _dyadic_exponent(t):
    m, e = math.frexp(float(t))
    if t <= 0 or m != 0.5:
        return None
    return e - 1


def _dyadic_level_of(x):
    """Largest level l with x / 2^l an integer (x a dyadic rational)."""
    x = float(x)
    if x == 0:
        return None
    num, den = x.as_integer_ratio()
    if den & (den - 1):
        raise ValueError(f"shift {x} is not a dyadic rational")
    level = -(den.bit_length() - 1)
    while num % 2 == 0:
        num //= 2
        level += 1
    return level


def dilate(f, factor):
    """x -> f(factor * x) for factor a power of two."""
    j = _dyadic_exponent(factor)
    if j is None:
        raise ValueError(f"dilation by {factor} leaves the dyadic grid; only powers of two are "
                         "exact, so resample the function onto a grid first")
    return StepFunction(f.dim, f.level - j, (f.idx, f.coef), check=False)


def translate(f, shift):
    """x -> f(x - shift); the shift must be a dyadic rational vector."""
    shift = np.atleast_1d(np.asarray(shift, dtype=float))
    if shift.size != f.dim:
        raise ValueError("shift has the wrong dimension")
    levels = [_dyadic_level_of(v) for v in shift]
    levels = [lv for lv in levels if lv is not None]
    g = f
    if levels and min(levels) < f.level:
        g = refine(f, min(levels))
    k = [int(round(v / g.h)) for v in shift]
    if g.idx.dtype == object:
        idx = g.idx + np.array(k, dtype=object)
    else:
        idx = g.idx + np.array(k, dtype=np.int64)
    return StepFunction(g.dim, g.level, (idx, g.coef), check=False)


def modulate(f, freq):
    freq = tuple(float(v) for v in np.atleast_1d(freq))
    if len(freq) != f.dim:
        raise ValueError("frequency has the wrong dimension")
    return ModulatedStep(f, freq)


def transform(f, op, arg):
    """Apply ``op`` in {'dilate', 'translate', 'modulate'} with argument ``arg``."""
    if op == "dilate":
        return dilate(f, arg)
    if op == "translate":
        return translate(f, arg)
    if op == "modulate":
        return modulate(f, arg)
    raise ValueError(f"unknown transform {op!r}")
