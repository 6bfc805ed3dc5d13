"""Exact Fourier transforms of step functions and quadrature of |g|^p.

Convention: g^(y) = int f(x) exp(-2 pi i (x, y)) dx.  A cell [a, a + h)^n
with coefficient c contributes c prod_j h exp(-2 pi i (a_j + h/2) y_j)
sinc(pi h y_j), so the transform of a step function is a finite sum with
no aliasing.  Norms of transforms are computed by composite midpoint rules
over finite families of cubes or balls and are lower bounds for the
corresponding suprema, up to the reported quadrature deltas.
"""

import math

import numpy as np

from . import _kernels
from .grid import DyadicCube, ModulatedStep, StepFunction, _to_float
from .norms import INF, NormParams, NormResult, Weight, _as_params, _lq

TWO_PI = 2.0 * math.pi


class FourierEvaluable:
    """Pointwise evaluator of a Fourier transform (or any bounded function).

    Subclasses implement ``evaluate(ys)`` for ys of shape (M,) in 1-D or
    (M, 2) in 2-D.  ``mass_bound`` bounds |g| everywhere.
    """

    dim = 1
    kind = "exact-closed-form"
    mass_bound = INF

    def evaluate(self, ys):
        raise NotImplementedError

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        if self.dim == 1:
            out = self.evaluate(np.atleast_1d(y).reshape(-1))
            return complex(out[0]) if y.ndim == 0 else out
        pts = np.atleast_2d(y)
        out = self.evaluate(pts)
        return complex(out[0]) if y.ndim == 1 else out

    def evaluate_uniform(self, y0, dy, count):
        return self.evaluate(y0 + dy * np.arange(count))

    def evaluate_grid(self, ax0, ax1):
        """Values on the tensor grid ax0 x ax1 (2-D), shape (len0, len1)."""
        g0, g1 = np.meshgrid(ax0, ax1, indexing="ij")
        pts = np.stack([g0.reshape(-1), g1.reshape(-1)], axis=1)
        return self.evaluate(pts).reshape(g0.shape)

    def natural_scales(self):
        """(small, large): length scales of the features of g, as powers of 2."""
        return (-8, 4)

    def times_power(self, exponent):
        """y -> |y|^exponent g(y)."""
        return PowerWeighted(self, exponent)


class StepTransform(FourierEvaluable):
    """Exact transform of a StepFunction (optionally modulated by e^{2 pi i N x})."""

    kind = "exact-closed-form"

    def __init__(self, f, freq=None):
        if isinstance(f, ModulatedStep):
            freq = np.asarray(f.freq, dtype=float)
            f = f.base
        self.f = f
        self.dim = f.dim
        self.freq = np.zeros(f.dim) if freq is None else np.asarray(freq, dtype=float)
        self.h = f.h
        self.centers = _to_float(f.idx) * f.h + f.h / 2
        self.coef = f.coef.astype(np.complex128)
        self.mass_bound = f.l1()
        if f.idx.dtype == object:
            import warnings
            warnings.warn("cell positions beyond 2^62 lose precision as floats; "
                          "transform phases are approximate", stacklevel=2)

    def evaluate(self, ys):
        ys = np.asarray(ys, dtype=float)
        if self.dim == 1:
            y = ys.reshape(-1) - self.freq[0]
            s = _kernels.expsum_points(np.ascontiguousarray(y), self.centers[:, 0].copy(),
                                       self.coef)
            return self.h * np.sinc(self.h * y) * s
        y = ys.reshape(-1, 2) - self.freq[None, :]
        out = np.empty(y.shape[0], dtype=complex)
        for s in range(0, y.shape[0], 4096):
            blk = y[s:s + 4096]
            ph = np.exp(-1j * TWO_PI * (blk @ self.centers.T))
            out[s:s + blk.shape[0]] = ph @ self.coef
        return self.h ** 2 * np.sinc(self.h * y[:, 0]) * np.sinc(self.h * y[:, 1]) * out

    def evaluate_uniform(self, y0, dy, count):
        if self.dim != 1:
            raise ValueError("uniform sampling is 1-D")
        y0 = y0 - self.freq[0]
        s = _kernels.expsum_uniform(float(y0), float(dy), int(count),
                                    self.centers[:, 0].copy(), self.coef)
        y = y0 + dy * np.arange(count)
        return self.h * np.sinc(self.h * y) * s

    def evaluate_grid(self, ax0, ax1):
        a0 = np.asarray(ax0, dtype=float) - self.freq[0]
        a1 = np.asarray(ax1, dtype=float) - self.freq[1]
        A = np.exp(-1j * TWO_PI * np.outer(a0, self.centers[:, 0])) * self.coef[None, :]
        B = np.exp(-1j * TWO_PI * np.outer(self.centers[:, 1], a1))
        s = A @ B
        return self.h ** 2 * np.outer(np.sinc(self.h * a0), np.sinc(self.h * a1)) * s

    def natural_scales(self):
        lo, hi = self.f.support_bounds()
        extent = float(np.max(hi - lo))
        small = math.floor(math.log2(1.0 / extent))
        large = -self.f.level
        return small, large


class ClosedForm(FourierEvaluable):
    """Wrap a vectorized closed-form evaluator."""

    def __init__(self, fn, dim=1, mass_bound=INF, name="closed-form", scales=(-8, 4),
                 kind="exact-closed-form"):
        self.fn = fn
        self.dim = dim
        self.mass_bound = mass_bound
        self.name = name
        self.kind = kind
        self._scales = scales

    def evaluate(self, ys):
        ys = np.asarray(ys, dtype=float)
        if self.dim == 1:
            ys = ys.reshape(-1)
        return np.asarray(self.fn(ys), dtype=complex)

    def natural_scales(self):
        return self._scales


class PowerWeighted(FourierEvaluable):
    """|y|^e g(y)."""

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = float(exponent)
        self.dim = base.dim
        self.kind = base.kind
        self.mass_bound = INF if self.exponent > 0 else base.mass_bound

    def _radial(self, ys):
        ys = np.asarray(ys, dtype=float)
        r = np.abs(ys.reshape(-1)) if self.dim == 1 else np.hypot(ys[:, 0], ys[:, 1])
        with np.errstate(divide="ignore"):
            return r ** self.exponent

    def evaluate(self, ys):
        return self._radial(ys) * self.base.evaluate(ys)

    def evaluate_uniform(self, y0, dy, count):
        y = y0 + dy * np.arange(count)
        with np.errstate(divide="ignore"):
            return np.abs(y) ** self.exponent * self.base.evaluate_uniform(y0, dy, count)

    def evaluate_grid(self, ax0, ax1):
        r = np.hypot(*np.meshgrid(ax0, ax1, indexing="ij"))
        with np.errstate(divide="ignore"):
            return r ** self.exponent * self.base.evaluate_grid(ax0, ax1)

    def natural_scales(self):
        return self.base.natural_scales()


def ft(f):
    """The exact transform of a step function (or modulated step) as an evaluator."""
    if isinstance(f, FourierEvaluable):
        return f
    if isinstance(f, (StepFunction, ModulatedStep)):
        return StepTransform(f)
    raise TypeError(f"cannot transform {type(f).__name__}")


def ft_point(f, y):
    """f^(y) for a single point y (scalar in 1-D)."""
    g = ft(f)
    y = np.asarray(y, dtype=float)
    if g.dim == 1:
        return complex(g.evaluate(y.reshape(-1)[:1])[0])
    return complex(g.evaluate(y.reshape(1, 2))[0])


def ft_eval(f, ys):
    return ft(f).evaluate(np.asarray(ys, dtype=float))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _midpoints(a, side, res):
    return a + side * (np.arange(res) + 0.5) / res


def _cube_power_integral(g, p, cube, res):
    side = cube.side
    corner = cube.corner
    if g.dim == 1:
        vals = g.evaluate(_midpoints(corner[0], side, res))
        return float(np.sum(np.abs(vals) ** p) * side / res)
    ax0 = _midpoints(corner[0], side, res)
    ax1 = _midpoints(corner[1], side, res)
    vals = g.evaluate_grid(ax0, ax1)
    return float(np.sum(np.abs(vals) ** p) * (side / res) ** 2)


def ft_lp_on_cube(g, p, cube, resolution=64):
    """Midpoint approximation of (int_Q |g|^p)^{1/p} and its refinement delta.

    Returns (value at ``resolution``, |value(res) - value(2 res)|).
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2 points per axis")
    g = ft(g)
    if not isinstance(cube, DyadicCube):
        cube = DyadicCube(*cube)
    v1 = _cube_power_integral(g, p, cube, resolution) ** (1.0 / p)
    v2 = _cube_power_integral(g, p, cube, 2 * resolution) ** (1.0 / p)
    return v1, abs(v1 - v2)


def average_on_ball(g, r, xi, resolution=64):
    """A_r g(xi) by the midpoint rule (exact for constants)."""
    g = ft(g)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if g.dim == 1:
        ys = _midpoints(xi[0] - r, 2 * r, resolution)
        return complex(np.mean(g.evaluate(ys)))
    ax0 = _midpoints(xi[0] - r, 2 * r, resolution)
    ax1 = _midpoints(xi[1] - r, 2 * r, resolution)
    vals = g.evaluate_grid(ax0, ax1)
    X, Y = np.meshgrid(ax0 - xi[0], ax1 - xi[1], indexing="ij")
    inside = X ** 2 + Y ** 2 < r * r
    return complex(np.mean(vals[inside]))


def level_profile_ft(g, p, m_lo, m_hi, resolution):
    """Max over aligned cubes of level m in [-2^m_hi, 2^m_hi)^n of int_Q |g|^p.

    Samples g at the midpoints of a uniform grid with ``resolution`` points
    per side of a level-m_lo cube; coarser levels are block sums.
    Returns (levels, maxima, total integral over the window).
    """
    n = g.dim
    dy = 2.0 ** m_lo / resolution
    count = int(2 ** (m_hi + 1 - m_lo)) * resolution
    y0 = -(2.0 ** m_hi) + dy / 2
    if n == 1:
        vals = np.abs(g.evaluate_uniform(y0, dy, count)) ** p * dy
        base = vals.reshape(-1, resolution).sum(axis=1)
    else:
        ax = y0 + dy * np.arange(count)
        vals = np.abs(g.evaluate_grid(ax, ax)) ** p * dy * dy
        k = count // resolution
        base = vals.reshape(k, resolution, k, resolution).sum(axis=(1, 3))
    levels, maxima = [], []
    cur = base
    for m in range(m_lo, m_hi + 1):
        levels.append(m)
        maxima.append(float(cur.max()))
        if m == m_hi:
            break
        if n == 1:
            cur = cur.reshape(-1, 2).sum(axis=1)
        else:
            k = cur.shape[0] // 2
            cur = cur.reshape(k, 2, k, 2).sum(axis=(1, 3))
    return np.array(levels), np.array(maxima), float(base.sum())


def morrey_from_profile(levels, maxima, p, q, weight):
    terms = weight.dyadic(levels) * maxima ** (1.0 / p)
    return _lq(terms, q), terms


def default_window(g):
    """(m_lo, m_hi) of aligned levels that capture the features of g."""
    small, large = g.natural_scales()
    if g.dim == 1:
        m_hi = large + 3
        return min(m_hi - 13, small - 3), m_hi
    m_hi = large + 2
    return m_hi - 6, m_hi


def morrey_norm_ft(g, prm, *, weight=None, m_range=None, resolution=64, max_resolution=1024,
                   rel_tol=1e-4, weights=None):
    """Morrey norm of a Fourier-side function over aligned cubes inside a window.

    The window is [-2^m_hi, 2^m_hi)^n with levels m_lo..m_hi; only cubes in
    the window are used, so the value is a lower bound for the full
    supremum (q = inf) or sum (q < inf).  The resolution doubles until the
    value changes by less than ``rel_tol`` relative, or ``max_resolution``
    is reached.  With ``weights`` (a list) the same samples serve several
    weights and a list of results is returned.
    """
    g = ft(g)
    prm = _as_params(prm, g.dim)
    ws = weights if weights is not None else [weight if weight is not None
                                              else Weight.power(-prm.lam)]
    m_lo, m_hi = m_range if m_range is not None else default_window(g)
    res = int(resolution)
    prev = level_profile_ft(g, prm.p, m_lo, m_hi, res)
    history = []
    while True:
        cur = level_profile_ft(g, prm.p, m_lo, m_hi, 2 * res)
        v_prev = [morrey_from_profile(prev[0], prev[1], prm.p, prm.q, w)[0] for w in ws]
        v_cur = [morrey_from_profile(cur[0], cur[1], prm.p, prm.q, w)[0] for w in ws]
        delta = max(abs(a - b) / max(b, 1e-300) for a, b in zip(v_prev, v_cur))
        history.append((2 * res, v_cur, delta, v_prev))
        res *= 2
        if delta < rel_tol or 2 * res > max_resolution:
            break
        prev = cur
    out = []
    for w, v in zip(ws, v_cur):
        tail = g.mass_bound * float(w.dyadic(m_lo - 1)) * 2.0 ** ((m_lo - 1) * g.dim / prm.p)
        diag = {"resolution": res, "refinement_delta": delta, "history": history,
                "levels": (m_lo, m_hi), "profile": cur[1], "window_integral": cur[2]}
        out.append(NormResult(v, "morrey-ft", {"p": prm.p, "q": prm.q, "lambda": prm.lam,
                                               "weight": w.name},
                              lower_bound=True, tail_estimate=tail, m_range=(m_lo, m_hi),
                              diagnostics=diag))
    return out if weights is not None else out[0]


def campanato_seminorm_sampled(g, prm, *, weight=None, lattice_shift=3, k_range=None,
                               full=False, region=None, resolution=16):
    """Campanato seminorm of a 1-D evaluator from uniform samples.

    Balls B_{2^k}(x) with x on the lattice of spacing 2^{k - lattice_shift}
    are taken inside ``region``; averages and oscillations use the midpoint
    rule with ``resolution`` samples per radius at the smallest level.
    """
    if not isinstance(g, FourierEvaluable):
        g = ClosedForm(g) if callable(g) else ft(g)
    if g.dim != 1:
        raise ValueError("the sampled Campanato seminorm is implemented in 1-D")
    prm = _as_params(prm, 1)
    w = weight if weight is not None else Weight.power(-prm.lam)
    small, large = g.natural_scales()
    if k_range is None:
        k_range = (small - 3, large + 1)
    k_lo, k_hi = int(k_range[0]), int(k_range[1])
    if region is None:
        half = 2.0 ** (k_hi + 2)
        region = (-half, half)
    a, b = float(region[0]), float(region[1])
    dx = 2.0 ** k_lo / resolution
    count = int(math.floor((b - a) / dx))
    vals = np.ascontiguousarray(g.evaluate_uniform(a + dx / 2, dx, count), dtype=np.complex128)
    ks, Os = [], []
    for k in range(k_lo, k_hi + 1):
        R = int(round(2.0 ** k / dx))
        if 2 * R > count:
            break
        stride = max(1, R >> lattice_shift)
        best = _kernels.osc_sampled(vals, R, stride, R, count - R, float(prm.p))
        ks.append(k)
        Os.append((best * 2.0 * 2.0 ** k) ** (1.0 / prm.p))
    ks, Os = np.array(ks), np.array(Os)
    val = _lq(w.dyadic(ks) * Os, prm.q) if ks.size else 0.0
    if full:
        R = int(round(1.0 / dx))
        if 0 < 2 * R <= count:
            dens = np.abs(vals) ** prm.p * dx
            c = np.concatenate([[0.0], np.cumsum(dens)])
            val += float(np.max(c[2 * R:] - c[:-2 * R])) ** (1.0 / prm.p)
    return NormResult(val, "campanato-sampled", {"p": prm.p, "q": prm.q, "lambda": prm.lam,
                                                 "weight": w.name},
                      lower_bound=True, m_range=(k_lo, k_hi),
                      diagnostics={"profile": (ks, Os), "region": (a, b), "dx": dx})
