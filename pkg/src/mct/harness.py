"""Experiment runner: random corpora, suites, slope fits and reports.

Each suite returns per-case rows and a summary whose verdict is derived
only from the recorded numbers.  Brackets for the equivalence suites are
the two-sided constants derived for the discretizations used here; they
can be overridden through ``ExperimentConfig.tolerances``.
"""

import csv
import dataclasses
import itertools
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import constructions as cons
from .fourier import PowerWeighted, ft, morrey_norm_ft
from .functionals import (campanato_rhs, d_functional, d_functional_weighted, gm_constant)
from .grid import StepFunction, dilate
from .norms import (NormParams, Weight, campanato_continuous, campanato_seminorm, gamma_norm,
                    inf_const_lp, local_morrey_norm, lorentz_norm, modulus_sup, morrey_norm,
                    power_weighted_lp_norm, power_weighted_morrey_1d, truncated_norm,
                    weighted_annulus_sum)
from .sequences import (IndexedSeq, best_subset_average, cstar_star_profile, dsk_sample,
                        hardy_bound_check, hyperbolic_cross_blocks, hyperbolic_cross_size,
                        inverse_product_seq, rearrange, rho_block)

INF = math.inf


# ---------------------------------------------------------------------------
# configuration and reports
# ---------------------------------------------------------------------------

def _json_num(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return v


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return _json_num(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _unclean(obj):
    if isinstance(obj, dict):
        return {k: _unclean(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_unclean(v) for v in obj]
    if obj in ("inf", "-inf"):
        return float(obj)
    return obj


@dataclass
class ExperimentConfig:
    """Everything needed to rerun a suite."""

    suite: str
    params: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)
    corpus: dict = field(default_factory=dict)
    seed: int = 0
    output: str = None
    tolerances: dict = field(default_factory=dict)

    def to_dict(self):
        return _clean(dataclasses.asdict(self))

    @classmethod
    def from_dict(cls, d):
        d = _unclean(dict(d))
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

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

    def get(self, key, default):
        return self.params.get(key, default)

    def tol(self, key, default):
        return self.tolerances.get(key, default)

    def swept(self, key, default):
        return list(self.sweep[key]) if key in self.sweep else list(default)


@dataclass
class ExperimentReport:
    suite: str
    rows: list
    summary: dict
    config: dict
    timestamp: float = field(default_factory=time.time)

    @property
    def passed(self):
        return self.summary.get("verdict") == "pass"

    @property
    def verdict(self):
        return self.summary.get("verdict")

    def columns(self):
        cols = []
        for r in self.rows:
            for k in r:
                if k not in cols:
                    cols.append(k)
        return cols

    def to_csv(self, path):
        cols = self.columns()
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(cols)
            for r in self.rows:
                w.writerow([_fmt(r.get(c, "")) for c in cols])

    def summary_json(self, with_timestamp=True):
        d = {"suite": self.suite, "summary": _clean(self.summary), "config": self.config}
        if with_timestamp:
            d["timestamp"] = self.timestamp
        return json.dumps(d, indent=2, sort_keys=True)

    def to_json(self, path):
        with open(path, "w") as fh:
            fh.write(self.summary_json())

    def save(self, csv_path):
        """Write rows to ``csv_path`` and the summary next to it as .json."""
        self.to_csv(csv_path)
        stem = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
        self.to_json(stem + ".json")


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return v


# ---------------------------------------------------------------------------
# corpus and fitting
# ---------------------------------------------------------------------------

CORPUS_DEFAULTS = {"count": 50, "dim": 1, "cells": [1, 64], "levels": [-4, 2],
                   "coef_range": [0.25, 4.0], "window": 32, "complex": True}


def generate_corpus(seed, count, opts=None):
    """Reproducible random step functions.

    Each function has a level in ``levels``, between ``cells[0]`` and
    ``cells[1]`` distinct cells with indices in [-window, window)^dim, and
    coefficients of modulus log-uniform in ``coef_range`` with random
    complex phase (random sign when ``complex`` is false).
    """
    o = dict(CORPUS_DEFAULTS)
    o.update(opts or {})
    count = int(count)
    if count < 1:
        raise ValueError("corpus count must be at least 1")
    rng = np.random.default_rng(seed)
    dim = int(o["dim"])
    W = int(o["window"])
    if dim == 2:
        W = min(W, 8)
    span = (2 * W) ** dim
    out = []
    for _ in range(count):
        level = int(rng.integers(o["levels"][0], o["levels"][1] + 1))
        m = int(rng.integers(o["cells"][0], min(o["cells"][1], span) + 1))
        flat = rng.choice(span, size=m, replace=False)
        if dim == 1:
            keys = [(int(k) - W,) for k in flat]
        else:
            keys = [(int(k // (2 * W)) - W, int(k % (2 * W)) - W) for k in flat]
        lo, hi = np.log(o["coef_range"][0]), np.log(o["coef_range"][1])
        mod = np.exp(rng.uniform(lo, hi, m))
        if o["complex"]:
            coef = mod * np.exp(2j * np.pi * rng.uniform(0, 1, m))
        else:
            coef = mod * rng.choice([-1.0, 1.0], m)
        out.append(StepFunction(dim, level, dict(zip(keys, coef.tolist()))))
    return out


def fit_slope(points, mode="log-log"):
    """Least-squares slope (and its standard error) of log y against log x."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError("slope fit needs at least 3 points")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if mode == "log-log":
        if np.any(xs <= 0) or np.any(ys <= 0):
            raise ValueError("log-log fit needs positive values")
        xs, ys = np.log(xs), np.log(ys)
    elif mode != "linear":
        raise ValueError(f"unknown fit mode {mode!r}")
    if np.ptp(ys) == 0:
        return 0.0, 0.0
    res = stats.linregress(xs, ys)
    return float(res.slope), float(res.stderr)


def _corpus(cfg, count_default=50, **over):
    opts = dict(cfg.corpus)
    opts.update({k: v for k, v in over.items() if k not in cfg.corpus})
    count = int(opts.pop("count", count_default))
    seed = int(opts.pop("seed", cfg.seed))
    return generate_corpus(seed, count, opts)


def _verdict(ok, **extra):
    d = {"verdict": "pass" if ok else "fail"}
    d.update(extra)
    return d


def _no_cases():
    return [], {"verdict": "no cases"}


# ---------------------------------------------------------------------------
# sequence suites
# ---------------------------------------------------------------------------

def suite_rearrangement(cfg, rng):
    count = int(cfg.get("count", 500))
    smax = int(cfg.get("max_support", 12))
    rows = []
    worst = 0.0
    for i in range(count):
        s = int(rng.integers(1, smax + 1))
        vals = rng.uniform(0, 1, s)
        if s > 2 and rng.uniform() < 0.3:
            vals[1] = vals[0]  # ties
        a = IndexedSeq.from_array(vals, start=int(rng.integers(-20, 20)))
        r = rearrange(a)
        err = max(abs(r.star_star(nu) - best_subset_average(a, nu)) for nu in range(1, s + 1))
        worst = max(worst, err)
        rows.append({"case": i, "support": s, "max_abs_error": err})
    if not rows:
        return _no_cases()
    tol = cfg.tol("abs_error", 1e-12)
    return rows, _verdict(worst <= tol, max_abs_error=worst, tolerance=tol)


def suite_cstar(cfg, rng):
    rows = []
    ok = True
    summ = {}
    for dim in cfg.get("dims", [1, 2]):
        Ns = cfg.swept(f"N_dim{dim}", [10, 100, 1000, 10000] if dim == 1 else [100, 1000, 10000])
        if not Ns:
            continue
        n, prof = cstar_star_profile(dim, max(Ns))
        ratios = []
        for N in Ns:
            c = float(prof[N - 1])
            ratio = N * c / math.log(N + 1) ** dim
            ratios.append(ratio)
            rows.append({"dim": dim, "N": N, "cstar_star": c, "ratio": ratio})
        if dim == 1:
            lo, hi = cfg.tol("dim1_bracket", [1.0, 3.0])
            good = all(lo <= r <= hi for r in ratios)
            summ["dim1_range"] = (min(ratios), max(ratios))
        else:
            spread = max(ratios) / min(ratios)
            good = spread <= cfg.tol("dim2_spread", 2.0)
            summ[f"dim{dim}_spread"] = spread
        ok = ok and good
    if not rows:
        return _no_cases()
    return rows, _verdict(ok, **summ)


def _partition_check(m, dim):
    """Enumerate the blocks of E_m and confirm they tile it without overlap."""
    blocks = hyperbolic_cross_blocks(m, dim)
    parts = []
    for nu, size in blocks:
        b = rho_block(nu)
        if b.shape[0] != size:
            return False
        # every index recovers its own block label
        lab = np.floor(np.log2(np.abs(b))).astype(int) + 1
        if not np.all(lab == np.array(nu)[None, :]):
            return False
        parts.append(b)
    allk = np.concatenate(parts, axis=0).astype(np.int64)
    # encode index vectors as single integers; |k_j| < 2^m
    base = np.int64(2 ** (m + 2))
    code = np.zeros(allk.shape[0], dtype=np.int64)
    for j in range(dim):
        code = code * base + (allk[:, j] + base // 2)
    return np.unique(code).size == allk.shape[0] == hyperbolic_cross_size(m, dim)


def _partition_check_structural(m, dim):
    """Same conclusion without listing points.

    Blocks are products of 1-D dyadic shells, so it suffices that (i) the
    block labels are exactly {nu >= 1 : sum nu <= m} with no repeats, (ii)
    each 1-D shell holds exactly the k with label v, and (iii) the sizes
    add up to an independent count of E_m.
    """
    nus = [tuple(nu) for nu, _ in hyperbolic_cross_blocks(m, dim)]
    ref = {nu for nu in itertools.product(range(1, m + 1), repeat=dim) if sum(nu) <= m}
    if len(nus) != len(set(nus)) or set(nus) != ref:
        return False
    for v in range(1, m - dim + 2):
        shell = rho_block((v,))[:, 0]
        lab = np.floor(np.log2(np.abs(shell))).astype(int) + 1
        if shell.size != 2 ** v or np.any(lab != v) or np.unique(shell).size != shell.size:
            return False
    # count E_m axis by axis: number of k with label vector summing to <= m
    per_axis = np.zeros(m + 1, dtype=object)
    per_axis[1:] = [2 ** v for v in range(1, m + 1)]
    count = np.zeros(m + 1, dtype=object)
    count[0] = 1
    for _ in range(dim):
        nxt = np.zeros(m + 1, dtype=object)
        for t in range(m + 1):
            for v in range(1, m + 1 - t):
                nxt[t + v] += count[t] * per_axis[v]
        count = nxt
    return int(sum(count)) == hyperbolic_cross_size(m, dim)


def suite_hyperbolic(cfg, rng):
    rows = []
    ok = True
    lo, hi = cfg.tol("bracket", [0.5, 2.0])
    enum_cap = int(cfg.get("enumerate_up_to", 2 ** 22))
    for dim in cfg.get("dims", [1, 2]):
        for m in cfg.swept(f"m_dim{dim}", range(dim, int(cfg.get("m_max", 20)) + 1)):
            size = hyperbolic_cross_size(m, dim)
            ratio = size / (2.0 ** m * m ** (dim - 1))
            if size <= enum_cap:
                part, how = _partition_check(m, dim), "enumerated"
            else:
                part, how = _partition_check_structural(m, dim), "structural"
            rows.append({"dim": dim, "m": m, "size": size, "ratio": ratio,
                         "partition_ok": part, "partition_check": how})
            ok = ok and lo <= ratio <= hi and part is not False
    if not rows:
        return _no_cases()
    return rows, _verdict(ok, bracket=(lo, hi))


def suite_dsk(cfg, rng):
    count = int(cfg.get("count", 200))
    kmax = int(cfg.get("max_size", 64))
    win = int(cfg.get("window", 64))
    c_inv = inverse_product_seq(1, 2 * win + 2)
    _, inv_star = cstar_star_profile(1, kmax)
    rows = []
    ok = True
    for i in range(count):
        if i % 2 == 0:
            c, kind, cs = c_inv, "inverse-product", inv_star
        else:
            s = int(rng.integers(1, 65))
            vals = rng.uniform(0, 1, s)
            c = IndexedSeq(1, idx=rng.choice(np.arange(-win, win), s, replace=False)[:, None],
                           vals=vals)
            kind = "random"
            r = rearrange(c)
            cs = np.array([r.star_star(nu) for nu in range(1, kmax + 1)])
        no = int(rng.integers(1, kmax + 1))
        ne = int(rng.integers(1, kmax + 1))
        om = rng.choice(np.arange(-win, win), no, replace=False)
        e = rng.choice(np.arange(-win, win), ne, replace=False)
        val = dsk_sample(c, [(int(t),) for t in om], [(int(t),) for t in e])
        bound = float(cs[max(no, ne) - 1])
        rows.append({"case": i, "c": kind, "omega": no, "e": ne, "dsk": val, "bound": bound})
        ok = ok and val <= bound * (1 + 1e-12)
    if not rows:
        return _no_cases()
    return rows, _verdict(ok)


def suite_hardy(cfg, rng):
    count = int(cfg.get("count", 100))
    lo, hi = cfg.get("window", [-20, 20])
    ns = np.arange(lo, hi + 1)
    b = IndexedSeq(1, idx=ns[:, None], vals=2.0 ** (ns / 2.0))
    rows = []
    ok = True
    cmax = {}
    for p in cfg.swept("p", [1.0, 2.0]):
        worst = 0.0
        for i in range(count):
            vals = rng.uniform(0, 1, ns.size) * (rng.uniform(0, 1, ns.size) < 0.7)
            a = IndexedSeq(1, idx=ns[:, None], vals=vals)
            res = hardy_bound_check(a, b, p)
            ratio = res.mid / res.lhs if res.lhs > 0 else 1.0
            worst = max(worst, ratio)
            good = res.lhs <= res.mid * (1 + 1e-12) and ratio <= res.c_b ** p * (1 + 1e-12)
            ok = ok and good
            rows.append({"p": p, "case": i, "lhs": res.lhs, "mid": res.mid, "ratio": ratio,
                         "c_b": res.c_b})
        cmax[p] = worst
        if p == 1.0:
            ok = ok and worst <= cfg.tol("C_max_p1", 64.0)
    if not rows:
        return _no_cases()
    return rows, _verdict(ok, C=cmax)


# ---------------------------------------------------------------------------
# main inequality suites
# ---------------------------------------------------------------------------

def _morrey_ft_two_res(f, p, q, lams, resolution, m_range=None):
    """Morrey lower bounds of f^ at resolutions 2 res (fine) and res (coarse)."""
    ws = [Weight.power(-lam) for lam in lams]
    res = morrey_norm_ft(ft(f), (p, q, lams[0]), weights=ws, resolution=resolution,
                         max_resolution=2 * resolution, m_range=m_range)
    _, fine, delta, coarse = res[0].diagnostics["history"][0]
    return list(fine), list(coarse), delta


def suite_thm_main(cfg, rng):
    p = float(cfg.get("p", 2.0))
    q = float(cfg.get("q", INF))
    lams = cfg.swept("lam", [0.125, 0.25, 0.375])
    if not lams:
        return _no_cases()
    res = int(cfg.get("resolution", 32))
    corpus = _corpus(cfg, 100)
    rows = []
    for i, f in enumerate(corpus):
        fine, coarse, delta = _morrey_ft_two_res(f, p, q, lams, res)
        for lam, lf, lc in zip(lams, fine, coarse):
            d, _ = d_functional(f, p, q, lam)
            rows.append({"case": i, "lam": lam, "lhs": lf, "lhs_coarse": lc, "rhs": d,
                         "ratio": lf / d, "ratio_coarse": lc / d,
                         "refinement_delta": abs(lf - lc) / max(lf, 1e-300)})
    summ = {}
    ok = True
    stab = cfg.tol("stability", 0.10)
    for lam in lams:
        r = [row for row in rows if row["lam"] == lam]
        mf = max(x["ratio"] for x in r)
        mc = max(x["ratio_coarse"] for x in r)
        change = abs(mf / mc - 1)
        summ[f"lam={lam:g}"] = {"max_ratio": mf, "max_ratio_coarse": mc, "change": change}
        ok = ok and math.isfinite(mf) and change <= stab
    summ["flagged_cases"] = sum(1 for r in rows if r["refinement_delta"] > 0.01)
    return rows, _verdict(ok, **summ)


def lorentz_chain_constant(p, q, lam, n=1, tmax=4000):
    """Constant C with D^lam_{p,q}(f) <= C ||f||_{L_{s',q}} from the block argument."""
    prm = NormParams(p, q, lam, n)
    s, sp, beta = prm.s, prm.s_prime, prm.beta
    b = beta / n
    nu_star = math.exp((n + 1) / b - 1)
    # blocks [2^t, 2^{t+1}); G is unimodal so its block sup sits at the clamped peak
    ts = np.arange(0, tmax)
    ln = np.clip(math.log(nu_star), ts * math.log(2), (ts + 1) * math.log(2))
    G = (n + 1) * np.log1p(ln) - b * ln
    if math.isinf(q):
        return s * float(np.exp(G.max()))
    return float(np.exp(G).sum()) * 4.0 ** (1 / sp) * math.log(2) ** (-1 / q) * s


def suite_cor_lorentz(cfg, rng):
    p = float(cfg.get("p", 2.0))
    lams = cfg.swept("lam", [0.125, 0.25, 0.375])
    qs = cfg.swept("q", [2.0, INF])
    corpus = _corpus(cfg, 100)
    rows = []
    summ = {}
    ok = True
    for lam in lams:
        for q in qs:
            prm = NormParams(p, q, lam, corpus[0].dim if corpus else 1)
            C = lorentz_chain_constant(p, q, lam, prm.n)
            worst = 0.0
            for i, f in enumerate(corpus):
                d, _ = d_functional(f, p, q, lam)
                lz = lorentz_norm(f, prm.s_prime, q)
                ratio = d / lz
                worst = max(worst, ratio)
                rows.append({"case": i, "lam": lam, "q": q, "D": d, "lorentz": lz,
                             "ratio": ratio, "C": C})
            summ[f"lam={lam:g},q={q:g}"] = {"max_ratio": worst, "C": C}
            ok = ok and worst <= C
    if not rows:
        return _no_cases()
    return rows, _verdict(ok, **summ)


def suite_weighted(cfg, rng):
    p = float(cfg.get("p", 2.0))
    q = float(cfg.get("q", INF))
    lam = float(cfg.get("lam", 0.25))
    corpus = _corpus(cfg, 20)
    pw = Weight.power(-lam)
    damped = Weight.log_damped_power(-lam, 1.0)
    rows = []
    ok = True
    for i, f in enumerate(corpus):
        d, _ = d_functional(f, p, q, lam)
        dp, _ = d_functional_weighted(f, p, q, pw)
        dd, _ = d_functional_weighted(f, p, q, damped)
        eq = abs(dp - d) / d
        rows.append({"case": i, "D": d, "D_power": dp, "D_damped": dd, "rel_diff_power": eq})
        ok = ok and eq <= 1e-12 and math.isfinite(dd) and dd <= d * (1 + 1e-12)
    if not rows:
        return _no_cases()
    return rows, _verdict(ok)


def suite_gamma(cfg, rng):
    p = float(cfg.get("p", 2.0))
    q = float(cfg.get("q", INF))
    lam = float(cfg.get("lam", 0.25))
    corpus = _corpus(cfg, 20)
    n = corpus[0].dim if corpus else 1
    u = Weight.power(-lam)
    # v(x) = u(x^{-1/n}) x^{1/p' - 1/q}
    e = lam / n + (1 - 1 / p) - (0 if math.isinf(q) else 1 / q)
    v = Weight.power(e)
    rows = []
    for i, f in enumerate(corpus):
        d, _ = d_functional_weighted(f, p, q, u)
        g = gamma_norm(f, v, q)
        rows.append({"case": i, "D_u": d, "gamma": g, "ratio": d / g})
    if not rows:
        return _no_cases()
    worst = max(r["ratio"] for r in rows)
    return rows, _verdict(math.isfinite(worst), max_ratio=worst)


def suite_sharpness(cfg, rng):
    p = float(cfg.get("p", 2.0))
    lam = float(cfg.get("lam", 0.25))
    q = float(cfg.get("q", INF))
    lo, hi = cons.sharpness_window(p, lam)
    alpha = float(cfg.get("alpha", 0.5 * (lo + hi)))
    Ks = cfg.swept("K", [30, 60])
    if len(Ks) < 2:
        return _no_cases()
    sp = NormParams(p, q, lam).s_prime
    rows = []
    for K in Ks:
        f = cons.sharpness_example(alpha, K, p, lam)
        d, _ = d_functional(f, p, q, lam)
        lz = lorentz_norm(f, sp, q)
        rows.append({"K": K, "alpha": alpha, "D": d, "lorentz": lz})
    d_change = abs(rows[-1]["D"] / rows[0]["D"] - 1)
    growth = rows[-1]["lorentz"] / rows[0]["lorentz"]
    ok = d_change < cfg.tol("D_change", 0.05) and growth >= cfg.tol("lorentz_growth", 1.5)
    return rows, _verdict(ok, D_change=d_change, lorentz_growth=growth, alpha=alpha,
                          window=(lo, hi))


def suite_gm(cfg, rng):
    p = float(cfg.get("p", 2.0))
    q = float(cfg.get("q", 2.0))
    lam = float(cfg.get("lam", 0.25))
    level = int(cfg.get("level", -8))
    thetas = cfg.swept("theta", np.linspace(0.1, 0.6, 10).tolist())
    n = 1
    e = n * (1 - 1 / p) - (0 if math.isinf(q) else n / q) + lam
    rows = []
    for th in thetas:
        f0 = cons.gm_radial(th, level=level)
        C_gm = gm_constant(f0)
        f = cons.radial_extension(f0)
        lhs = morrey_norm_ft(ft(f), (p, q, lam), m_range=tuple(cfg.get("m_range", (-3, 6))),
                             resolution=32, max_resolution=64).value
        rhs = power_weighted_lp_norm(f, q, e)
        rows.append({"theta": th, "gm_constant": C_gm, "lhs": lhs, "rhs": rhs,
                     "ratio": lhs / rhs})
    if not rows:
        return _no_cases()
    worst = max(r["ratio"] for r in rows)
    ok = math.isfinite(worst) and all(math.isfinite(r["gm_constant"]) for r in rows)
    return rows, _verdict(ok, max_ratio=worst)


# ---------------------------------------------------------------------------
# Pitt-type suites
# ---------------------------------------------------------------------------

def suite_pitt_homogeneity(cfg, rng):
    q = float(cfg.get("q", 2.0))
    nu = float(cfg.get("nu", 0.25))
    delta = float(cfg.get("delta", 0.25))
    p = float(cfg.get("p", 2.0))
    gamma = float(cfg.get("gamma", 0.25))
    js = cfg.swept("j", [1, 2, 3])
    if len(js) < 2:
        return _no_cases()
    base = StepFunction(1, 0, {(0,): 1.0})
    n = 1
    rows = []
    for j in js:
        f = dilate(base, 2.0 ** j)
        g = PowerWeighted(ft(f), -delta)
        lhs = morrey_norm_ft(g, (q, INF, nu), resolution=32, max_resolution=64).value
        rhs = power_weighted_lp_norm(f, p, gamma)
        rows.append({"j": j, "dilation": 2.0 ** j, "fourier_side": lhs, "space_side": rhs})
    exp_f = -n - nu - delta + n / q
    exp_s = -n / p - gamma
    sf, _ = fit_slope([(r["dilation"], r["fourier_side"]) for r in rows])
    ss, _ = fit_slope([(r["dilation"], r["space_side"]) for r in rows])
    tol = cfg.tol("relative", 0.02)
    ok = abs(sf - exp_f) <= tol * abs(exp_f) and abs(ss - exp_s) <= tol * abs(exp_s)
    return rows, _verdict(ok, fourier_exponent=sf, expected_fourier=exp_f,
                          space_exponent=ss, expected_space=exp_s)


def suite_pitt_necessity(cfg, rng):
    q = float(cfg.get("q", 2.0))
    nu = float(cfg.get("nu", 0.25))
    delta = float(cfg.get("delta", 0.25))
    Ns = cfg.swept("N", [8, 16, 32, 64])
    if len(Ns) < 3:
        return _no_cases()
    rows = []
    for N in Ns:
        g = PowerWeighted(cons.modulated_box(N), -delta)
        m_hi = max(8, math.ceil(math.log2(N)) + 2)
        lhs = morrey_norm_ft(g, (q, INF, nu), m_range=(-2, m_hi), resolution=32,
                             max_resolution=128).value
        rows.append({"N": N, "lhs": lhs})
    slope, err = fit_slope([(r["N"], r["lhs"]) for r in rows])
    tol = cfg.tol("slope", 0.1)
    return rows, _verdict(abs(slope + delta) <= tol, slope=slope, stderr=err,
                          expected=-delta)


# ---------------------------------------------------------------------------
# Campanato suites
# ---------------------------------------------------------------------------

def campanato_constant(alpha=0.5, p=2.0):
    """Constant in campanato(f^) <= C campanato_rhs(f) for v = r^{-alpha}, 1-D."""
    return (2.0 ** (1 + 1 / p) * (2 * math.pi) ** alpha
            * (2 / (1 - 2.0 ** (alpha - 1)) + 2.0 ** alpha / (1 - 2.0 ** (-alpha))))


def lipschitz_constant(alpha=0.5):
    """Constant in omega(f^, t)_inf <= C t^alpha sup_k 2^{alpha k} int_{A_k} |f|."""
    return 2 * math.pi ** alpha * (2 / (1 - 2.0 ** (alpha - 1)) + 2.0 ** alpha
                                   / (1 - 2.0 ** (-alpha)))


def suite_campanato(cfg, rng):
    p = float(cfg.get("p", 2.0))
    alpha = float(cfg.get("alpha", 0.5))
    n = 1
    v = Weight.power(-alpha)
    lam = alpha + n / p          # w(r) = r^{-alpha - n/p}
    corpus = _corpus(cfg, 50)
    C = campanato_constant(alpha, p)
    rows = []
    for i, f in enumerate(corpus):
        lhs = campanato_seminorm(ft(f), (p, INF, lam), resolution=int(cfg.get("resolution", 16)))
        rhs = campanato_rhs(f, v, INF)
        rows.append({"case": i, "lhs": lhs.value, "rhs": rhs, "ratio": lhs.value / rhs})
    if not rows:
        return _no_cases()
    worst = max(r["ratio"] for r in rows)
    return rows, _verdict(worst <= C, max_ratio=worst, C=C)


def suite_lipschitz(cfg, rng):
    alpha = float(cfg.get("alpha", 0.5))
    ts = cfg.swept("t_exp", list(range(-1, -9, -1)))
    corpus = _corpus(cfg, 20)
    C = lipschitz_constant(alpha)
    rows = []
    for i, f in enumerate(corpus):
        R, _ = weighted_annulus_sum(f, 1.0, INF, Weight.power(alpha))
        g = ft(f)
        small, large = g.natural_scales()
        region = (-2.0 ** (large + 2), 2.0 ** (large + 2))
        for k in ts:
            t = 2.0 ** k
            dx = min(t / 16, 2.0 ** (small - 4))
            om = modulus_sup(g, t, region=region, dx=dx)
            rows.append({"case": i, "t": t, "modulus": om, "R": R,
                         "ratio": om / (t ** alpha * R)})
    if not rows:
        return _no_cases()
    worst = max(r["ratio"] for r in rows)
    return rows, _verdict(worst <= C, max_ratio=worst, C=C)


# ---------------------------------------------------------------------------
# lacunary and Rudin-Shapiro constructions
# ---------------------------------------------------------------------------

def lacunary_morrey_norm(N, p, lam):
    """Aligned-cube M^lam_{p,inf} norm of g_N in 1-D, from the cell geometry.

    An aligned cube of side 2^m (m >= 1) meets at most max(min(m - 1, N), 1)
    cells (those at 2^k, k < m, inside [0, 2^m)); below the cell size the
    best cube sits inside a cell.
    """
    terms = [1.0]  # m = 0: a single cell
    for m in range(1, N + 3):
        cnt = max(min(m - 1, N), 1)
        terms.append(2.0 ** (-m * lam) * cnt ** (1 / p))
    # m < 0: 2^{m(1/p - lam)} <= 1 when lam <= 1/p
    if lam > 1 / p:
        return INF
    return max(terms)


def suite_appendix_a1(cfg, rng):
    Ns = cfg.swept("N", [4, 8, 16, 32, 64])
    p, lam = 2.0, 0.5
    rows = []
    for N in Ns:
        lhs = cons.lacunary_fourier_l2(N)
        if N <= 24:
            rhs = morrey_norm(cons.lacunary_product(N), (p, INF, lam)).value
        else:
            rhs = lacunary_morrey_norm(N, p, lam)
        rows.append({"N": N, "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs})
    if len(rows) < 3:
        return (rows, {"verdict": "no cases"}) if not rows else (rows, _verdict(False))
    slope, err = fit_slope([(r["N"], r["ratio"]) for r in rows])
    lo, hi = cfg.tol("slope_bracket", [0.4, 0.6])
    return rows, _verdict(lo <= slope <= hi, slope=slope, stderr=err)


def suite_appendix_a2(cfg, rng):
    js = cfg.swept("j", list(range(4, 11)))
    p = float(cfg.get("p", 4.0))
    lam = float(cfg.get("lam", 0.125))
    gamma = float(cfg.get("gamma", 0.25))
    beta = float(cfg.get("beta", 0.0))
    a, b = cons.A2_INTERVAL
    rows = []
    for j in js:
        N = 2 ** j - 1
        eps = cons.rudin_shapiro(N + 1)
        pl2 = cons.polynomial_l2_interval(eps, a, b)
        lhs = cons.rudin_shapiro_lower(N, beta)
        rhs = power_weighted_morrey_1d(cons.ultraflat_counterexample(N), p, lam, gamma)
        rows.append({"N": N, "poly_l2": pl2, "poly_ratio": pl2 / math.sqrt(N), "lhs": lhs,
                     "rhs": rhs, "ratio": lhs / rhs})
    if len(rows) < 3:
        return (rows, {"verdict": "no cases"}) if not rows else (rows, _verdict(False))
    lo, hi = cfg.tol("poly_bracket", [0.15, 0.42])
    in_bracket = all(lo <= r["poly_ratio"] <= hi for r in rows)
    slope, err = fit_slope([(r["N"], r["ratio"]) for r in rows])
    need = 0.4 - (gamma - lam + 1 / p)
    rhs_slope, _ = fit_slope([(r["N"], r["rhs"]) for r in rows])
    return rows, _verdict(in_bracket and slope >= need, slope=slope, stderr=err,
                          required=need, rhs_slope=rhs_slope,
                          expected_rhs_slope=gamma - lam + 1 / p)


# ---------------------------------------------------------------------------
# equivalence suites
# ---------------------------------------------------------------------------

def _ratio_rows(corpus, pairs, bracket_of):
    rows, ok = [], True
    for i, f in enumerate(corpus):
        for key, fa, fb in pairs:
            a, b = fa(f), fb(f)
            lo, hi = bracket_of(key)
            r = a / b if b > 0 else (1.0 if a == 0 else INF)
            good = lo * (1 - 1e-9) <= r <= hi * (1 + 1e-9)
            ok = ok and good
            rows.append({"case": i, "key": key, "a": a, "b": b, "ratio": r, "lo": lo,
                         "hi": hi, "in_bracket": good})
    return rows, ok


def suite_discretization(cfg, rng):
    p = float(cfg.get("p", 2.0))
    lam = float(cfg.get("lam", 0.25))
    qs = cfg.swept("q", [INF, 2.0])
    kinds = cfg.get("kinds", ["morrey", "campanato"])
    corpus = _corpus(cfg, 50, cells=[1, 16])
    l2 = math.log(2)
    pairs = []
    for q in qs:
        if "morrey" in kinds:
            pairs.append((("morrey", q),
                          lambda f, q=q: morrey_norm(f, (p, q, lam), convention="balls").value,
                          lambda f, q=q: morrey_norm(f, (p, q, lam),
                                                     convention="balls-dyadic").value))
        if "campanato" in kinds:
            pairs.append((("campanato", q),
                          lambda f, q=q: campanato_continuous(f, (p, q, lam)),
                          lambda f, q=q: campanato_seminorm(f, (p, q, lam)).value))

    def bracket(key):
        kind, q = key
        if kind == "morrey":
            if math.isinf(q):
                return 1.0, 2.0 ** lam
            return l2 ** (1 / q) * 2.0 ** -lam, l2 ** (1 / q) * 2.0 ** lam
        if math.isinf(q):
            return 1.0, 2.0 ** (2 + lam)
        return l2 ** (1 / q) * 2.0 ** -lam / 2, l2 ** (1 / q) * 2.0 ** (1 + lam)

    rows, ok = _ratio_rows(corpus, pairs, bracket)
    if not rows:
        return _no_cases()
    for r in rows:
        r["key"] = f"{r['key'][0]}:q={r['key'][1]:g}"
    return rows, _verdict(ok)


def suite_lm_truncated(cfg, rng):
    p = float(cfg.get("p", 2.0))
    lams = cfg.swept("lam", [0.25, 0.5])
    corpus = _corpus(cfg, 50)
    pairs = [(lam,
              lambda f, lam=lam: local_morrey_norm(f, (p, INF, lam), convention="dyadic").value,
              lambda f, lam=lam: truncated_norm(f, -lam, INF, p)) for lam in lams]
    rows, ok = _ratio_rows(corpus, pairs, lambda lam: (2.0 ** -lam, 1 / (2.0 ** lam - 1)))
    if not rows:
        return _no_cases()
    return rows, _verdict(ok)


def suite_inf_c(cfg, rng):
    ps = cfg.swept("p", [1.0, 2.0, 3.0])
    balls = int(cfg.get("balls", 5))
    corpus = _corpus(cfg, 50)
    rows = []
    ok = True
    for i, f in enumerate(corpus):
        lo, hi = f.support_bounds()
        for p in ps:
            for _ in range(balls):
                c = [float(rng.uniform(lo[d] - f.h, hi[d] + f.h)) for d in range(f.dim)]
                r = float(2.0 ** rng.uniform(f.level - 2, math.log2(max(hi - lo)) + 1))
                ic, osc = inf_const_lp(f, p, c if f.dim > 1 else c[0], r)
                good = ic <= osc * (1 + 1e-9) and osc <= 2 * ic * (1 + 1e-7) + 1e-14
                ok = ok and good
                rows.append({"case": i, "p": p, "radius": r, "inf_c": ic, "osc": osc,
                             "ratio": osc / ic if ic > 0 else 1.0, "ok": good})
    if not rows:
        return _no_cases()
    return rows, _verdict(ok, max_ratio=max(r["ratio"] for r in rows))


def suite_campanato_morrey(cfg, rng):
    p = float(cfg.get("p", 2.0))
    lams = cfg.swept("lam", [0.125, 0.25])
    corpus = _corpus(cfg, 50, cells=[1, 16])
    rows = []
    ok = True
    for lam in lams:
        n = corpus[0].dim if corpus else 1
        upper = 2.0 * (1 + (1 + 2.0 ** lam) / (1 - 2.0 ** (lam - n / p)))
        for i, f in enumerate(corpus):
            cam = campanato_seminorm(f, (p, INF, lam)).value
            mor = morrey_norm(f, (p, INF, lam), convention="balls-dyadic").value
            good = cam <= 2 * mor * (1 + 1e-9) and mor <= upper * cam
            ok = ok and good
            rows.append({"case": i, "lam": lam, "campanato": cam, "morrey": mor,
                         "campanato_over_morrey": cam / mor, "morrey_over_campanato": mor / cam,
                         "upper": upper, "ok": good})
    if not rows:
        return _no_cases()
    return rows, _verdict(ok)


def embedding_constant(p, lam, n=1):
    s = NormParams(p, INF, lam, n).s
    return (1 - p / s) ** (-1 / p)


def suite_embeddings(cfg, rng):
    p = float(cfg.get("p", 2.0))
    lams = cfg.swept("lam", [0.125, 0.25, 0.375])
    corpus = _corpus(cfg, 50)
    rows = []
    ok = True
    summ = {}
    for lam in lams:
        n = corpus[0].dim if corpus else 1
        s = NormParams(p, INF, lam, n).s
        C = embedding_constant(p, lam, n)
        worst = 0.0
        for i, f in enumerate(corpus):
            m = morrey_norm(f, (p, INF, lam)).value
            lz = lorentz_norm(f, s, INF)
            worst = max(worst, m / lz)
            rows.append({"case": i, "lam": lam, "morrey": m, "lorentz": lz, "ratio": m / lz,
                         "C": C})
        summ[f"lam={lam:g}"] = {"max_ratio": worst, "C": C}
        ok = ok and worst <= C * (1 + 1e-12)
    if not rows:
        return _no_cases()
    return rows, _verdict(ok, **summ)


SUITES = {
    "rearrangement": suite_rearrangement,
    "cstar": suite_cstar,
    "hyperbolic": suite_hyperbolic,
    "dsk": suite_dsk,
    "hardy": suite_hardy,
    "thm-main": suite_thm_main,
    "cor-lorentz": suite_cor_lorentz,
    "weighted": suite_weighted,
    "gamma": suite_gamma,
    "sharpness": suite_sharpness,
    "gm": suite_gm,
    "pitt-homogeneity": suite_pitt_homogeneity,
    "pitt-necessity": suite_pitt_necessity,
    "campanato": suite_campanato,
    "lipschitz": suite_lipschitz,
    "appendix-a1": suite_appendix_a1,
    "appendix-a2": suite_appendix_a2,
    "discretization": suite_discretization,
    "lm-truncated": suite_lm_truncated,
    "inf-c": suite_inf_c,
    "campanato-morrey": suite_campanato_morrey,
    "embeddings": suite_embeddings,
}


def run_suite(cfg):
    """Run the named suite and return its report."""
    if isinstance(cfg, dict):
        cfg = ExperimentConfig.from_dict(cfg)
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}; available: {', '.join(SUITES)}")
    rng = np.random.default_rng(cfg.seed)
    rows, summary = SUITES[cfg.suite](cfg, rng)
    report = ExperimentReport(cfg.suite, rows, _clean(summary), cfg.to_dict())
    if cfg.output:
        report.save(cfg.output)
    return report
