"""Finite sequences over Z^n: rearrangements, discrete Lorentz norms and friends."""

import csv
import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np


def _as_index_array(keys, dim):
    """Return an (N, dim) index array; falls back to object dtype for huge ints."""
    if isinstance(keys, np.ndarray) and keys.ndim == 2 and keys.shape[1] == dim:
        return keys
    rows = [tuple(int(v) for v in (k if np.ndim(k) else (k,))) for k in keys]
    if not rows:
        return np.zeros((0, dim), dtype=np.int64)
    for r in rows:
        if len(r) != dim:
            raise ValueError(f"index {r} does not have {dim} components")
    big = max(abs(v) for r in rows for v in r)
    if big >= 2 ** 62:
        arr = np.empty((len(rows), dim), dtype=object)
        for i, r in enumerate(rows):
            arr[i, :] = r
        return arr
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), dim)


def group_sum(keys, vals):
    """Sum ``vals`` over identical rows of ``keys``; rows come back sorted."""
    if keys.shape[0] == 0:
        return keys, np.zeros(0, dtype=np.asarray(vals).dtype)
    if keys.dtype != object:
        uk, inv = np.unique(keys, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        vals = np.asarray(vals)
        if np.iscomplexobj(vals):
            out = np.bincount(inv, weights=vals.real, minlength=uk.shape[0]) + 1j * np.bincount(
                inv, weights=vals.imag, minlength=uk.shape[0])
        else:
            out = np.bincount(inv, weights=vals, minlength=uk.shape[0])
        return uk, out
    acc = {}
    for row, v in zip(map(tuple, keys), vals):
        acc[row] = acc.get(row, 0.0) + v
    rows = sorted(acc)
    uk = np.empty((len(rows), keys.shape[1]), dtype=object)
    for i, r in enumerate(rows):
        uk[i, :] = r
    return uk, np.array([acc[r] for r in rows])


class IndexedSeq:
    """Finitely supported sequence a: Z^n -> C, stored as (indices, values)."""

    def __init__(self, dim, entries=None, *, idx=None, vals=None, check=True):
        self.dim = int(dim)
        if entries is not None:
            if isinstance(entries, dict):
                items = list(entries.items())
            else:
                items = list(entries)
            keys = [k for k, _ in items]
            vals = np.array([v for _, v in items])
            idx = _as_index_array(keys, self.dim)
        if idx is None:
            idx = np.zeros((0, self.dim), dtype=np.int64)
            vals = np.zeros(0)
        idx = _as_index_array(idx, self.dim)
        vals = np.asarray(vals)
        if vals.shape[0] != idx.shape[0]:
            raise ValueError("index and value arrays differ in length")
        if check and idx.shape[0]:
            uk, _ = group_sum(idx, np.ones(idx.shape[0]))
            if uk.shape[0] != idx.shape[0]:
                raise ValueError("duplicate indices in sequence")
        self.idx = idx
        self.vals = vals

    @classmethod
    def from_array(cls, values, start=0):
        """1-D sequence with ``values[j]`` placed at index ``start + j``."""
        values = np.asarray(values)
        idx = (np.arange(values.size, dtype=np.int64) + int(start)).reshape(-1, 1)
        return cls(1, idx=idx, vals=values)

    def __len__(self):
        return self.vals.size

    def __repr__(self):
        return f"IndexedSeq(dim={self.dim}, support={len(self)})"

    def as_dict(self):
        return {tuple(int(v) for v in k): complex(x) if np.iscomplexobj(self.vals) else float(x)
                for k, x in zip(self.idx, self.vals)}

    def get(self, k):
        k = tuple(int(v) for v in (k if np.ndim(k) else (k,)))
        return self.as_dict().get(k, 0.0)

    def abs(self):
        return IndexedSeq(self.dim, idx=self.idx, vals=np.abs(self.vals), check=False)

    def l1(self):
        return float(np.abs(self.vals).sum())

    def total(self):
        return self.vals.sum()


@dataclass(frozen=True)
class Rearranged:
    """Decreasing rearrangement a* with running sums; positions are 1-based."""

    sorted: np.ndarray
    prefix: np.ndarray

    @property
    def a_star(self):
        return self.sorted

    @property
    def a_star_star(self):
        nu = np.arange(1, self.sorted.size + 1)
        return self.prefix / nu

    def star(self, nu):
        nu = int(nu)
        if nu < 1:
            raise ValueError("positions start at 1")
        return float(self.sorted[nu - 1]) if nu <= self.sorted.size else 0.0

    def star_star(self, nu):
        nu = int(nu)
        if nu < 1:
            raise ValueError("positions start at 1")
        if nu <= self.sorted.size:
            return float(self.prefix[nu - 1]) / nu
        total = float(self.prefix[-1]) if self.prefix.size else 0.0
        return total / nu

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "a_star", "a_star_star"])
            for i, (a, b) in enumerate(zip(self.a_star, self.a_star_star), start=1):
                w.writerow([i, repr(float(a)), repr(float(b))])


def rearrange(a):
    """Decreasing rearrangement of a finitely supported sequence.

    Complex entries are replaced by their moduli.  Ties are broken by the
    lexicographic order of the indices, which only matters for determinism.
    """
    vals = a.vals
    if np.iscomplexobj(vals):
        vals = np.abs(vals)
    vals = np.asarray(vals, dtype=float)
    if np.any(vals < 0):
        raise ValueError("rearrangement needs nonnegative entries")
    order = np.argsort(-vals, kind="stable")
    s = vals[order]
    s = s[s > 0] if s.size else s
    return Rearranged(sorted=s, prefix=np.cumsum(s))


def lorentz_seq_norm(a, p, q):
    """Discrete Lorentz quasinorm of a finite sequence."""
    r = rearrange(a)
    if r.sorted.size == 0:
        return 0.0
    nu = np.arange(1, r.sorted.size + 1, dtype=float)
    terms = nu ** (1.0 / p) * r.sorted
    if math.isinf(q):
        return float(terms.max())
    return float(np.sum(terms ** q / nu) ** (1.0 / q))


def convolve(b, c):
    """(b * c)_m = sum_k b_k c_{m-k} for finitely supported b, c."""
    if b.dim != c.dim:
        raise ValueError(f"cannot convolve sequences of dimension {b.dim} and {c.dim}")
    if len(b) == 0 or len(c) == 0:
        return IndexedSeq(b.dim)
    keys = (b.idx[:, None, :] + c.idx[None, :, :]).reshape(-1, b.dim)
    vals = (b.vals[:, None] * c.vals[None, :]).reshape(-1)
    uk, sums = group_sum(keys, vals)
    return IndexedSeq(b.dim, idx=uk, vals=sums, check=False)


def inverse_product_seq(dim, radius):
    """c_r = 1 / prod_j max(|r_j|, 1) on the cube ||r||_inf <= radius."""
    radius = int(radius)
    if radius < 1:
        raise ValueError("radius must be at least 1")
    r1 = np.arange(-radius, radius + 1, dtype=np.int64)
    v1 = 1.0 / np.maximum(np.abs(r1), 1)
    grids = np.meshgrid(*([r1] * dim), indexing="ij")
    idx = np.stack([g.reshape(-1) for g in grids], axis=1)
    vals = np.ones(idx.shape[0])
    for d in range(dim):
        vals = vals * v1[idx[:, d] + radius]
    return IndexedSeq(dim, idx=idx, vals=vals, check=False)


def _compositions(m, dim):
    """All nu in N^dim with nu_i >= 1 and sum(nu) <= m."""
    if dim == 1:
        for a in range(1, m + 1):
            yield (a,)
        return
    for a in range(1, m - dim + 2):
        for rest in _compositions(m - a, dim - 1):
            yield (a,) + rest


def rho_block(nu):
    """Indices k with floor(2^{nu_i - 1}) <= |k_i| < 2^{nu_i} for every i."""
    axes = []
    for v in nu:
        lo, hi = 1 << (v - 1), 1 << v
        pos = np.arange(lo, hi, dtype=np.int64)
        axes.append(np.concatenate([-pos[::-1], pos]))
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def hyperbolic_cross_blocks(m, dim):
    """List of (nu, block size) making up the step hyperbolic cross E_m."""
    return [(nu, 1 << sum(nu)) for nu in _compositions(m, dim)]


def hyperbolic_cross_size(m, dim):
    """|E_m| from the block sizes, without enumerating indices."""
    if m < dim:
        return 0
    return sum(math.comb(s - 1, dim - 1) << s for s in range(dim, m + 1))


def hyperbolic_cross(m, dim):
    """Step hyperbolic cross E_m as a set of index tuples.

    The rho-blocks are checked to be pairwise disjoint while the union is
    assembled.
    """
    if m < dim:
        warnings.warn(f"hyperbolic cross needs m >= dim; m={m}, dim={dim} gives the empty set",
                      stacklevel=2)
        return set()
    out = set()
    expected = 0
    for nu, size in hyperbolic_cross_blocks(m, dim):
        block = rho_block(nu)
        if block.shape[0] != size:
            raise AssertionError("block size formula mismatch")
        out.update(map(tuple, block.tolist()))
        expected += size
        if len(out) != expected:
            raise AssertionError(f"block {nu} overlaps earlier blocks")
    return out


def _inverse_product_values(dim, radius):
    r1 = np.arange(-radius, radius + 1, dtype=np.int64)
    v1 = 1.0 / np.maximum(np.abs(r1), 1)
    if dim == 1:
        return v1
    if dim == 2:
        return np.multiply.outer(v1, v1).reshape(-1)
    raise ValueError("only dimensions 1 and 2 are supported")


def cstar_star_profile(dim, nmax, radius=None):
    """Exact (N, c**_N) for N = 1..nmax for the inverse-product sequence.

    Entries outside the box ||r||_inf <= R are at most 1/(R+1), so the
    computed top-``nmax`` values are the true ones as soon as the
    ``nmax``-th largest enumerated value is at least 1/(R+1).  With
    ``radius=None`` the box grows until that holds.
    """
    nmax = int(nmax)
    if nmax < 1:
        raise ValueError("nmax must be positive")
    auto = radius is None
    if auto:
        radius = max(2, nmax if dim == 1 else 2 * math.isqrt(nmax) + 2)
    while True:
        vals = _inverse_product_values(dim, radius)
        if vals.size >= nmax:
            top = -np.partition(-vals, nmax - 1)[:nmax]
            top.sort()
            top = top[::-1]
            if top[-1] >= 1.0 / (radius + 1):
                break
        if not auto:
            raise ValueError(f"enumeration radius {radius} is too small to certify the first "
                             f"{nmax} rearranged values; increase it")
        radius *= 2
    n = np.arange(1, nmax + 1)
    return n, np.cumsum(top) / n


def dsk_sample(c, omega, e):
    """(1/|omega|)(1/|e|) sum_{t in omega} sum_{m in e} |c_{m - t}|."""
    omega = _as_index_array(list(omega), c.dim)
    e = _as_index_array(list(e), c.dim)
    if omega.shape[0] == 0 or e.shape[0] == 0:
        raise ValueError("index sets must be nonempty")
    table = c.as_dict()
    diffs = (e[None, :, :] - omega[:, None, :]).reshape(-1, c.dim)
    total = 0.0
    for row in map(tuple, diffs.tolist()):
        total += abs(table.get(row, 0.0))
    return total / (omega.shape[0] * e.shape[0])


@dataclass(frozen=True)
class HardyResult:
    lhs: float
    mid: float
    rhs: float
    c_b: float

    def __iter__(self):
        return iter((self.lhs, self.mid, self.rhs))


def hardy_bound_check(a, b, p, direction=1):
    """Quantities of the two-sided discrete Hardy inequality on a finite window.

    ``a`` and ``b`` are 1-D sequences; the window is the support of ``b``
    (``a`` is read as zero elsewhere).  Direction 1 pairs b_n with the tail
    sum over k >= n and needs sum_{k<=n} b_k <= C_b b_n; direction 2 is the
    mirror image.  Returns (lhs, mid, rhs) with rhs equal to lhs, and the
    certified C_b.
    """
    if a.dim != 1 or b.dim != 1:
        raise ValueError("Hardy check works on sequences over Z")
    if direction not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    if len(b) == 0:
        return HardyResult(0.0, 0.0, 0.0, 1.0)
    bk = b.idx[:, 0].astype(np.int64)
    lo, hi = int(bk.min()), int(bk.max())
    n = hi - lo + 1
    bb = np.zeros(n)
    bb[bk - lo] = np.asarray(b.vals, dtype=float)
    if np.any(bb < 0) or np.any(np.asarray(a.vals, dtype=float) < 0):
        raise ValueError("Hardy check needs nonnegative sequences")
    aa = np.zeros(n)
    ad = a.as_dict()
    for (k,), v in ad.items():
        if lo <= k <= hi:
            aa[k - lo] = v
    if direction == 1:
        run = np.cumsum(bb)
        tails = np.cumsum(aa[::-1])[::-1]
    else:
        run = np.cumsum(bb[::-1])[::-1]
        tails = np.cumsum(aa)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bb > 0, run / np.where(bb > 0, bb, 1.0), np.where(run > 0, np.inf, 1.0))
    if not np.all(np.isfinite(ratio)):
        bad = int(np.argmax(~np.isfinite(ratio))) + lo
        raise ValueError(f"summation condition on b fails at n = {bad}")
    p = float(p)
    if math.isinf(p):
        lhs = float(np.max(bb * aa))
        mid = float(np.max(bb * tails))
    else:
        lhs = float(np.sum((bb * aa) ** p))
        mid = float(np.sum((bb * tails) ** p))
    return HardyResult(lhs, mid, lhs, float(ratio.max()))


def best_subset_average(a, nu):
    """(1/nu) max over index sets of size nu of the sum; brute force, small supports."""
    vals = np.abs(np.asarray(a.vals, dtype=complex)) if np.iscomplexobj(a.vals) else np.asarray(a.vals)
    if nu > vals.size:
        return float(vals.sum()) / nu
    best = 0.0
    for comb in itertools.combinations(range(vals.size), nu):
        s = float(sum(vals[i] for i in comb))
        if s > best:
            best = s
    return best / nu
