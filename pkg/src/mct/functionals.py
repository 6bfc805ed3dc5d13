"""Right-hand-side functionals: D-functionals, Campanato functionals, GM constants.

The D-functional at level m (cubes of side 2^m) is

    value_m = P_m * sup_{nu >= 1} G(nu) S_m(nu),   G(nu) = (1 + ln nu)^{n+1} nu^{-a},

where S_m(nu) is the sum of the nu largest integrals of |f| over level-m
cubes (nu b**_nu), a = 1/p - max(0, 1/p - 1/2), and P_m = 2^{-m(n/p - lam)}
(or u(2^{-m}) 2^{-mn/p} for a weight u).  Everything below the step level
is handled in log space since nu runs up to 2^{n(L - m)}.
"""

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .grid import StepFunction, level_sums
from .norms import (INF, Weight, _collapsed, _combine, _explicit, _geom, origin_ball_power,
                    weighted_annulus_sum, xi_class_check)

LN2 = math.log(2.0)


@dataclass
class DProfile:
    """Per-level record of a D-functional evaluation."""

    levels: list = field(default_factory=list)
    best_nu: list = field(default_factory=list)
    values: list = field(default_factory=list)
    tails: dict = field(default_factory=dict)
    value: float = 0.0

    def add(self, m, nu, v):
        self.levels.append(int(m))
        self.best_nu.append(float(nu))
        self.values.append(float(v))

    def sorted(self):
        order = np.argsort(self.levels)
        return (np.asarray(self.levels)[order], np.asarray(self.best_nu)[order],
                np.asarray(self.values)[order])

    def to_csv(self, path):
        m, nu, v = self.sorted()
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["m", "best_nu", "value_m"])
            for row in zip(m, nu, v):
                w.writerow([int(row[0]), repr(float(row[1])), repr(float(row[2]))])


def _nu_exponent(p):
    return 1.0 / p - max(0.0, 1.0 / p - 0.5)


def _log_G(t, n, a):
    """log G at nu = e^t."""
    return (n + 1) * np.log1p(t) - a * t


def _nu_star(n, a):
    return math.exp((n + 1) / a - 1.0)


def _best_flat(log_T, t_from, n, a):
    """max over integer nu >= e^{t_from} of log(T G(nu)); returns (value, nu)."""
    ts = math.exp((n + 1) / a - 1.0)
    nu0 = math.exp(t_from) if t_from < 700 else INF
    cands = []
    if nu0 >= ts or not math.isfinite(nu0):
        cands.append(t_from)
    else:
        for c in (math.floor(ts), math.ceil(ts)):
            if c >= nu0:
                cands.append(math.log(c))
        cands.append(t_from)
    vals = [log_T + float(_log_G(np.array(t), n, a)) for t in cands]
    j = int(np.argmax(vals))
    return vals[j], math.exp(min(cands[j], 700))


def _level_above(f, m, n, a):
    """max_nu log(G(nu) S_m(nu)) for m >= f.level (cubes aggregate cells)."""
    _, sums = level_sums(f, m, 1.0)
    b = np.sort(np.asarray(sums, dtype=float))[::-1]
    S = np.cumsum(b)
    nus = np.arange(1, b.size + 1, dtype=float)
    vals = _log_G(np.log(nus), n, a) + np.log(S)
    j = int(np.argmax(vals))
    best, nu = float(vals[j]), float(nus[j])
    flat, nu_f = _best_flat(math.log(S[-1]), math.log(b.size), n, a)
    if flat > best:
        best, nu = flat, nu_f
    return best, nu


class _BelowData:
    """Level-independent data for the levels below the step level."""

    def __init__(self, f):
        n, L = f.dim, f.level
        a = np.abs(f.coef)
        uniq, counts = np.unique(a, return_counts=True)
        self.c = uniq[::-1]
        self.count = counts[::-1].astype(float)
        self.cum = np.cumsum(self.count)
        scale = 2.0 ** (n * L)
        # A_i = sum_{j < i} (c_j - c_i) count_j 2^{nL}: S = A_i + v_i nu on segment i
        pre = np.concatenate([[0.0], np.cumsum(self.c * self.count)[:-1]])
        cnt = np.concatenate([[0.0], self.cum[:-1]])
        self.A = np.maximum(pre - self.c * cnt, 0.0) * scale
        with np.errstate(divide="ignore"):
            self.log_A = np.log(self.A)
        self.T = float(np.sum(self.c * self.count)) * scale
        self.n, self.L = n, L
        self.sup = float(self.c[0])
        # grid in log nu relative to the level shift: segment 0 is increasing so
        # only its right end counts; later segments get step <= 1/4
        ends = np.log(self.cum)
        pts, seg = [ends[:1]], [np.zeros(1, dtype=int)]
        for i in range(1, self.c.size):
            k = max(8, int(math.ceil((ends[i] - ends[i - 1]) / 0.25)) + 1)
            pts.append(np.linspace(ends[i - 1], ends[i], k))
            seg.append(np.full(k, i))
        self.grid = np.concatenate(pts)
        self.seg = np.concatenate(seg)
        self.ends = ends


def _level_below(d, m, n, a, margin=0.05):
    """max_nu log(G(nu) S_m(nu)) for m < f.level, in log space.

    All segments are scanned on one grid; segments whose grid max lies within
    ``margin`` of the best are refined (the grid error is below 0.02 in log).
    """
    shift = n * (d.L - m) * LN2
    log_v = np.log(d.c) + n * m * LN2

    def logF(t, i):
        lv = log_v[i] + t
        ls = np.logaddexp(d.log_A[i], lv)
        return _log_G(t, n, a) + ls

    ts = d.grid + shift
    vals = logF(ts, d.seg)
    seg_best = np.full(d.c.size, -INF)
    np.maximum.at(seg_best, d.seg, vals)
    j = int(np.argmax(vals))
    best, best_t = float(vals[j]), float(ts[j])
    for i in np.nonzero(seg_best >= best - margin)[0]:
        if i == 0:
            continue
        sel = np.nonzero(d.seg == i)[0]
        jj = sel[int(np.argmax(vals[sel]))]
        if jj == sel[0] or jj == sel[-1]:
            continue
        t0, t1 = float(d.ends[i - 1] + shift), float(d.ends[i] + shift)
        res = optimize.minimize_scalar(lambda t: -float(logF(t, i)), bounds=(ts[jj - 1], ts[jj + 1]),
                                       method="bounded", options={"xatol": 1e-12})
        cand_t, cand_v = float(ts[jj]), float(vals[jj])
        if -res.fun > cand_v:
            cand_t, cand_v = float(res.x), float(-res.fun)
        nu = math.exp(cand_t)
        if nu < 2.0 ** 52:
            # restrict to integers
            opts = [x for x in (math.floor(nu), math.ceil(nu)) if t0 <= math.log(x) <= t1]
            if opts:
                iv = [float(logF(math.log(x), i)) for x in opts]
                k = int(np.argmax(iv))
                cand_t, cand_v = math.log(opts[k]), iv[k]
        # the integer restriction may lower a grid max that is currently the best
        if cand_v > best or best_t == float(ts[jj]):
            best, best_t = cand_v, cand_t
    flat, nu_f = _best_flat(math.log(d.T), float(d.ends[-1] + shift), n, a)
    if flat > best:
        return flat, nu_f
    return best, math.exp(min(best_t, 700))


def _log_envelope(d, ms, log_P, n, a):
    """log of E_m = P_m T G(max(nu0, nu*)) with nu0 = T / (||f||_inf 2^{mn})."""
    t0 = math.log(d.T / d.sup) - n * ms * LN2
    tstar = (n + 1) / a - 1.0
    t = np.maximum(t0, tstar)
    return log_P + math.log(d.T) + _log_G(t, n, a)


def _d_core(f, p, q, log_prefactor, weight_is_power, c_power, m_range):
    """Shared driver; log_prefactor(m_array) gives log P_m."""
    n = f.dim
    a = _nu_exponent(p)
    prof = DProfile()
    if f.is_zero:
        return 0.0, prof
    L = f.level
    if m_range is not None:
        lo, hi = int(m_range[0]), int(m_range[1])
        d = _BelowData(f)
        terms = []
        for m in range(lo, hi + 1):
            if m < L:
                lv, nu = _level_below(d, m, n, a)
            else:
                lv, nu = _level_above(f, m, n, a)
            v = math.exp(float(log_prefactor(np.array([m]))[0]) + lv)
            prof.add(m, nu, v)
            terms.append(v)
        prof.value = _combine([_explicit(terms, q)], q)
        prof.tails = {"restricted_range": (lo, hi)}
        return prof.value, prof
    # levels at or above the step level up to the collapse level
    terms = []
    m = L
    while True:
        lv, nu = _level_above(f, m, n, a)
        v = math.exp(float(log_prefactor(np.array([m]))[0]) + lv)
        prof.add(m, nu, v)
        terms.append(v)
        keys, _ = level_sums(f, m, 1.0)
        if _collapsed(keys):
            break
        m += 1
    m_top, lv_top = m, lv
    parts = []
    if weight_is_power:
        # value_{m_top + j} = value_{m_top} 2^{-j c}
        first = terms[-1] * 2.0 ** (-c_power)
        parts.append(_geom(first, 2.0 ** (-c_power), q))
        prof.tails["high"] = first
    else:
        ms_hi = np.arange(m_top + 1, m_top + 65)
        with np.errstate(over="ignore", divide="ignore"):
            hi_t = np.exp(log_prefactor(ms_hi) + lv_top)
        parts.append(_explicit(hi_t, q))
        prof.tails["high_truncated_at"] = int(ms_hi[-1])
    # levels below
    d = _BelowData(f)
    # general weights are only evaluated within 2^{+-1000} to stay in float range
    depth = 6000 if weight_is_power else 1000
    ms_env = np.arange(L - depth, L)
    with np.errstate(over="ignore", divide="ignore"):
        logE = _log_envelope(d, ms_env, log_prefactor(ms_env), n, a)
    # running max of the envelope from the bottom up: sup_{m' <= m} E_{m'}
    sup_below = np.maximum.accumulate(logE)
    if not math.isinf(q):
        # suffix sums of E^q from the bottom: sum_{m' <= m} E_{m'}^q (log)
        cum_q = np.logaddexp.accumulate(q * logE)
    low_terms = []
    for m in range(L - 1, L - depth - 1, -1):
        lv, nu = _level_below(d, m, n, a)
        v = math.exp(float(log_prefactor(np.array([m]))[0]) + lv)
        prof.add(m, nu, v)
        low_terms.append(v)
        i = m - 1 - (L - depth)  # index of level m - 1 in ms_env
        if i < 0:
            raise RuntimeError("the D-functional tail did not settle; the exponent window "
                               "is too close to its endpoint")
        if math.isinf(q):
            if sup_below[i] < math.log(max(max(terms), max(low_terms))):
                prof.tails["low_stopped_at"] = m
                prof.tails["low_bound"] = math.exp(sup_below[i])
                break
        else:
            tot = sum(t ** q for t in terms) + sum(t ** q for t in low_terms)
            if cum_q[i] < math.log(tot) + math.log(1e-15):
                prof.tails["low_stopped_at"] = m
                prof.tails["low_bound"] = math.exp(cum_q[i] / q)
                break
    parts.append(_explicit(terms, q))
    parts.append(_explicit(low_terms, q))
    prof.value = _combine(parts, q)
    return prof.value, prof


def _check_window(n, p, lam):
    lo = max(0.0, n / p - n / 2.0)
    if not (lo < lam < n / p):
        raise ValueError(f"lambda = {lam} is outside the open interval ({lo:g}, {n / p:g}); "
                         "there the D-functional is infinite for every nonzero f")


def d_functional(f, p, q, lam, m_range=None):
    """D^lam_{p,q}(f) and its per-level profile.

    With ``m_range=None`` the sum runs over all m in Z: levels above the
    collapse level form a geometric series and levels far below the step
    level are cut once a certified envelope falls under the running value.
    """
    n = f.dim
    _check_window(n, p, lam)
    c = n / p - lam

    def log_pref(ms):
        return -np.asarray(ms, dtype=float) * c * LN2

    return _d_core(f, p, q, log_pref, True, c, m_range)


def d_functional_weighted(f, p, q, u, m_range=None, *, check=True):
    """D^u_{p,q}(f): the level prefactor is u(2^{-m}) 2^{-mn/p}."""
    n = f.dim
    if not isinstance(u, Weight):
        u = Weight(u)
    if check:
        if not u.doubling_certified():
            raise ValueError("the weight u is not doubling on the tested window")
        if p < 2:
            shifted = Weight(lambda r: np.asarray(r, dtype=float) ** (n / p - n / 2) * u(r))
            ok, wit = xi_class_check(shifted, n, 2.0, q)
            if ok is False:
                raise ValueError(f"r^(n/p - n/2) u(r) fails the class condition with "
                                 f"k = n, p = 2: {wit}")
            if ok is None:
                warnings.warn("class condition on the weight is inconclusive", stacklevel=2)
    if u.exponent is not None:
        lam = -u.exponent
        c = n / p - lam

        def log_pref(ms):
            return -np.asarray(ms, dtype=float) * c * LN2

        return _d_core(f, p, q, log_pref, True, c, m_range)

    def log_pref(ms):
        ms = np.asarray(ms, dtype=float)
        return np.log(u.dyadic(-ms)) - ms * n / p * LN2

    return _d_core(f, p, q, log_pref, False, None, m_range)


# ---------------------------------------------------------------------------
# Campanato functionals
# ---------------------------------------------------------------------------

def campanato_rhs(f, v, q):
    """(sum_k (v(2^k)^{-1} int_{A_k} |f|)^q)^{1/q} over dyadic annuli A_k."""
    if not isinstance(v, Weight):
        v = Weight(v)
    if v.exponent is not None:
        omega = Weight.power(-v.exponent)
    else:
        omega = Weight(lambda r: 1.0 / np.asarray(v(r), dtype=float), name=f"1/{v.name}")
    val, _ = weighted_annulus_sum(f, 1.0, q, omega)
    return val


def _radial_density_1d(f):
    """Breakpoints b_0 < b_1 < ... and densities rho_j of |f(t)| + |f(-t)| on [b_j, b_{j+1})."""
    lo = f.lo[:, 0]
    hi = lo + f.h
    a = np.abs(f.coef)
    # fold onto t >= 0: cell [lo, hi) maps to [|hi|, |lo|) when negative
    t0 = np.where(lo >= 0, lo, -hi)
    t1 = np.where(lo >= 0, hi, -lo)
    b = np.unique(np.concatenate([t0, t1]))
    mids = 0.5 * (b[:-1] + b[1:])
    rho = np.zeros(mids.size)
    for x0, x1, c in zip(t0, t1, a):
        rho[(mids > x0) & (mids < x1)] += c
    return b, rho


def campanato_sup_functional(f, alpha):
    """sup_s [ s^{alpha-1} int_{B_s} |y||f| + s^alpha int_{|y| >= s} |f| ].

    In 1-D the expression is K1 s^{alpha-1} + K2 s^alpha - (rho/2) s^{alpha+1}
    on each interval where the folded density rho is constant, so each piece
    is maximized by a bounded scalar search; a dyadic pass with 16 points per
    octave around its argmax is included among the candidates.
    """
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if f.is_zero:
        return 0.0
    if f.dim != 1:
        return _sup_functional_2d(f, alpha)
    b, rho = _radial_density_1d(f)
    lengths = np.diff(b)
    M1_at = np.concatenate([[0.0], np.cumsum(rho * (b[1:] ** 2 - b[:-1] ** 2) / 2)])
    M0_at = np.concatenate([np.cumsum((rho * lengths)[::-1])[::-1], [0.0]])

    def F(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        j = np.clip(np.searchsorted(b, s, side="right") - 1, 0, b.size - 1)
        r = np.where(j < rho.size, rho[np.minimum(j, rho.size - 1)], 0.0)
        r = np.where(s < b[0], 0.0, r)
        jj = np.where(s < b[0], 0, j)
        base = np.where(s < b[0], 0.0, b[jj])
        M1 = np.where(s < b[0], 0.0, M1_at[jj] + r * (s ** 2 - base ** 2) / 2)
        M0 = np.where(s < b[0], M0_at[0], M0_at[jj] - r * (s - base))
        with np.errstate(divide="ignore", invalid="ignore"):
            t1 = np.where(M1 > 0, s ** (alpha - 1) * M1, 0.0)
        return t1 + s ** alpha * M0

    cands = list(b[b > 0])
    pieces = [(b[j], b[j + 1]) for j in range(rho.size)]
    for lo, hi in pieces:
        lo_ = max(lo, hi * 1e-12)
        res = optimize.minimize_scalar(lambda s: -float(F(s)[0]), bounds=(lo_, hi),
                                       method="bounded", options={"xatol": 1e-13 * hi})
        cands.append(float(res.x))
    # dyadic pass and a 16-per-octave pass around its argmax
    ks = np.arange(math.floor(math.log2(max(b[b > 0].min(), 1e-300))) - 2,
                   math.ceil(math.log2(b[-1])) + 3)
    dy = np.exp2(ks.astype(float))
    kbest = ks[int(np.argmax(F(dy)))]
    fine = np.exp2(kbest - 1 + np.arange(33) / 16)
    cands.extend(dy)
    cands.extend(fine)
    vals = F(np.array(cands))
    val = float(vals.max())
    if alpha == 0:
        val = max(val, float(M0_at[0]))  # s -> 0 limit
    return val


def _sup_functional_2d(f, alpha):
    psi = lambda r: float(origin_ball_power(f, 1.0, [r])[0])  # noqa: E731
    total = f.l1()

    def F(s):
        # int_{B_s} |y||f| = s Psi(s) - int_0^s Psi
        inner, _ = integrate.quad(psi, 0, s, limit=200)
        moment = s * psi(s) - inner
        return s ** (alpha - 1) * moment + s ** alpha * (total - psi(s))

    r_big = f.max_abs_point()
    ks = np.arange(f.level - 4, math.ceil(math.log2(r_big)) + 3)
    vals = [F(2.0 ** k) for k in ks]
    kb = ks[int(np.argmax(vals))]
    fine = [F(2.0 ** (kb - 1 + j / 16)) for j in range(33)]
    return float(max(max(vals), max(fine)))


# ---------------------------------------------------------------------------
# general monotone profiles
# ---------------------------------------------------------------------------

def gm_constant(f0, dilation=2.0, window=(2.0 ** -10, 2.0 ** 10)):
    """Smallest C with int_x^{2x} |df0| <= (C/x) int_{x/L}^{L x} |f0| on the window.

    f0 is a 1-D step profile on (0, inf) (cells at negative positions are
    ignored).  The variation is a finite sum of jumps, V(x) is piecewise
    constant (closed interval, so upper semicontinuous) and W(x) is piecewise
    linear; x V(x)/W(x) is monotone between breakpoints, so the supremum is
    attained at a breakpoint or a window end.  Returns +inf when some W
    vanishes where V does not.
    """
    if f0.dim != 1:
        raise ValueError("GM profiles are one-dimensional")
    Lam = float(dilation)
    if Lam <= 1:
        raise ValueError("the dilation must exceed 1")
    keep = f0.idx[:, 0] >= 0
    lo = f0.lo[keep, 0]
    c = f0.coef[keep]
    h = f0.h
    if lo.size == 0:
        return 0.0
    # jumps at the cell edges (values on (0, inf); the jump at 0 is not counted)
    edges = np.unique(np.concatenate([lo, lo + h]))
    left = np.zeros(edges.size, dtype=complex)
    right = np.zeros(edges.size, dtype=complex)
    pos = {float(x): i for i, x in enumerate(edges)}
    for x, v in zip(lo, c):
        right[pos[float(x)]] = v
        left[pos[float(x + h)]] = v
    jumps = np.abs(right - left)
    mask = (edges > 0) & (jumps > 0)
    e, jmp = edges[mask], jumps[mask]
    xs, ph = _abs_primitive(lo, np.abs(c), h)

    def W(x):
        return np.interp(Lam * x, xs, ph) - np.interp(x / Lam, xs, ph)

    cum = np.concatenate([[0.0], np.cumsum(jmp)])

    def V(x):
        # jumps at edges in the closed interval [x, 2x]
        x = np.atleast_1d(x)
        i0 = np.searchsorted(e, x * (1 - 1e-15), side="left")
        i1 = np.searchsorted(e, 2 * x * (1 + 1e-15), side="right")
        return cum[i1] - cum[i0]

    a, b = window
    cand = np.concatenate([e, e / 2, Lam * edges, edges / Lam, [a, b]])
    cand = cand[(cand >= a) & (cand <= b) & (cand > 0)]
    if cand.size == 0:
        return 0.0
    v, w = V(cand), W(cand)
    if np.any((w <= 0) & (v > 0)):
        return INF
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(v > 0, cand * v / np.where(w > 0, w, 1.0), 0.0)
    return float(ratio.max())


def _abs_primitive(lo, a, h):
    order = np.argsort(lo)
    lo, a = lo[order], a[order]
    w = a * h
    cum_hi = np.cumsum(w)
    xs = np.concatenate([lo, lo + h])
    ph = np.concatenate([cum_hi - w, cum_hi])
    o = np.argsort(xs, kind="stable")
    return xs[o], ph[o]


def campanato_weight_conditions(v, w, p, window=(-40, 40), n=1):
    """Check the three weight conditions of the weighted Campanato bound.

    (1) sup_r r^{n/p} w(r) v(1/r) < inf,
    (2) sum_{k <= m} 2^k v(2^k) <= C 2^m v(2^m),
    (3) sum_{k >= m} v(2^k) <= C v(2^m),
    each on the dyadic window.  Infinite sums are extended 60 levels past
    the window; a constant that keeps growing across the window is a
    failure.  Returns (ok, witnesses) with ok in {True, False, None}.
    """
    if not isinstance(v, Weight):
        v = Weight(v)
    if not isinstance(w, Weight):
        w = Weight(w)
    lo, hi = int(window[0]), int(window[1])
    ks = np.arange(lo, hi + 1)
    wit = {}
    g = np.exp2(ks * n / p) * w.dyadic(ks) * v.dyadic(-ks)
    c1 = float(g.max())
    mid = ks.size // 2
    grow1 = max(g[0], g[-1]) > 2 * max(g[mid], 1e-300) and (g[0] > 1.5 * g[1] or g[-1] > 1.5 * g[-2])
    ok1 = bool(np.all(np.isfinite(g))) and not grow1
    wit["sup_r^(n/p) w(r) v(1/r)"] = c1
    ext = np.arange(lo - 60, hi + 1)
    t2 = np.exp2(ext) * v.dyadic(ext)
    part = np.cumsum(t2)[60:]
    r2 = part / t2[60:]
    # convergent sums give a flat ratio; divergent ones grow linearly across the window
    ok2 = not (r2[-1] > 1.2 * r2[mid])
    wit["C_lower_sum"] = float(r2.max())
    ext3 = np.arange(lo, hi + 61)
    t3 = v.dyadic(ext3)
    suf = np.cumsum(t3[::-1])[::-1][:ks.size]
    r3 = suf / t3[:ks.size]
    ok3 = not (r3[0] > 1.2 * r3[mid])
    wit["C_upper_sum"] = float(r3.max())
    wit["conditions"] = (ok1, ok2, ok3)
    return (ok1 and ok2 and ok3), wit
