"""Hot loops, compiled with numba when available.

Set ``MCT_DISABLE_NUMBA=1`` to force the pure numpy implementations.  Both
paths compute the same quantities; the numpy versions trade memory for
vectorization and are the reference for the benchmark in ``benchmarks/``.
"""

import math
import os

import numpy as np

_disabled = os.environ.get("MCT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError("numba disabled by environment")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Exponential sums on uniform grids:  S(y_i) = sum_j c_j exp(-2 pi i x_j y_i)
# with y_i = y0 + i*dy.  Phases are advanced by rotation and re-anchored every
# 512 steps so the accumulated rounding stays far below quadrature error.
# The compiled versions sum over cells with Kahan compensation.
# ---------------------------------------------------------------------------

def _expsum_uniform_np(y0, dy, count, xs, coefs):
    out = np.empty(count, dtype=np.complex128)
    chunk = max(1, 2_000_000 // max(1, xs.size))
    for s in range(0, count, chunk):
        y = y0 + dy * np.arange(s, min(count, s + chunk))
        out[s:s + y.size] = np.exp(-1j * TWO_PI * np.outer(y, xs)) @ coefs
    return out


def _expsum_points_np(ys, xs, coefs):
    out = np.empty(ys.size, dtype=np.complex128)
    chunk = max(1, 2_000_000 // max(1, xs.size))
    for s in range(0, ys.size, chunk):
        y = ys[s:s + chunk]
        out[s:s + y.size] = np.exp(-1j * TWO_PI * np.outer(y, xs)) @ coefs
    return out


def _osc_sampled_np(g, radius_pts, stride, first, last, p):
    # centers sit on sample boundaries c, ball = samples [c - R, c + R)
    best = 0.0
    n = 2 * radius_pts
    for c in range(first, last + 1, stride):
        seg = g[c - radius_pts:c + radius_pts]
        avg = seg.mean()
        val = (np.abs(seg - avg) ** p).sum() / n
        if val > best:
            best = val
    return best


def _modulus_sampled_np(g, max_shift):
    best = 0.0
    for s in range(1, max_shift + 1):
        d = np.abs(g[s:] - g[:-s]).max()
        if d > best:
            best = d
    return best


def _interval_osc_np(lo, hi, coefs, centers, r, p):
    """For each center x, (avg, L_p^p of f - avg) over (x - r, x + r) in 1-D."""
    a = centers[:, None] - r
    b = centers[:, None] + r
    ov = np.clip(np.minimum(b, hi[None, :]) - np.maximum(a, lo[None, :]), 0.0, None)
    width = 2.0 * r
    avg = (ov * coefs[None, :]).sum(axis=1) / width
    covered = ov.sum(axis=1)
    dev = (ov * np.abs(coefs[None, :] - avg[:, None]) ** p).sum(axis=1)
    dev += np.abs(avg) ** p * np.clip(width - covered, 0.0, None)
    return avg, dev


def _rect_disk_area_scalar(x0, x1, y0, y1, R):
    """Exact area of [x0,x1] x [y0,y1] intersected with the disk |z| < R."""
    x0 = float(x0)
    x1 = float(x1)
    y0 = float(y0)
    y1 = float(y1)
    R = float(R)
    if R <= 0.0:
        return 0.0
    a = max(x0, -R)
    b = min(x1, R)
    if b <= a or y1 <= -R or y0 >= R:
        return 0.0
    # breakpoints where the circle crosses y = y0 or y = y1
    pts = np.empty(6)
    pts[0] = a
    pts[1] = b
    npts = 2
    for yy in (y0, y1):
        if abs(yy) < R:
            t = math.sqrt(R * R - yy * yy)
            if a < t < b:
                pts[npts] = t
                npts += 1
            if a < -t < b:
                pts[npts] = -t
                npts += 1
    pts = np.sort(pts[:npts])
    total = 0.0
    R2 = R * R
    for i in range(npts - 1):
        u = pts[i]
        v = pts[i + 1]
        if v <= u:
            continue
        xm = 0.5 * (u + v)
        s = math.sqrt(max(R2 - xm * xm, 0.0))
        top_is_s = s <= y1
        bot_is_s = -s >= y0
        top = s if top_is_s else y1
        bot = -s if bot_is_s else y0
        if top <= bot:
            continue
        su = math.sqrt(max(R2 - u * u, 0.0))
        sv = math.sqrt(max(R2 - v * v, 0.0))
        Fu = 0.5 * (u * su + R2 * math.asin(max(-1.0, min(1.0, u / R))))
        Fv = 0.5 * (v * sv + R2 * math.asin(max(-1.0, min(1.0, v / R))))
        arc = Fv - Fu
        piece = (arc if top_is_s else y1 * (v - u)) - (-arc if bot_is_s else y0 * (v - u))
        total += piece
    return total


def _ball_osc_2d_np(lo0, hi0, lo1, hi1, coefs, cx, cy, r, p):
    """2-D analogue of interval_osc with exact disk-rectangle overlaps."""
    k = cx.size
    avg = np.zeros(k, dtype=np.complex128)
    dev = np.zeros(k)
    area_b = math.pi * r * r
    for t in range(k):
        ov = _rect_disk_areas_np(lo0 - cx[t], hi0 - cx[t], lo1 - cy[t], hi1 - cy[t], r)
        A = (ov * coefs).sum() / area_b
        d = (ov * np.abs(coefs - A) ** p).sum()
        rest = area_b - ov.sum()
        if rest > 0.0:
            d += abs(A) ** p * rest
        avg[t] = A
        dev[t] = d
    return avg, dev


def _rect_disk_areas_np(x0, x1, y0, y1, R):
    out = np.empty(x0.size)
    for i in range(x0.size):
        out[i] = _rect_disk_area_scalar(x0[i], x1[i], y0[i], y1[i], R)
    return out


if HAS_NUMBA:

    @njit(cache=True)
    def _expsum_uniform_nb(y0, dy, count, xs, coefs):
        out = np.zeros(count, dtype=np.complex128)
        comp = np.zeros(count, dtype=np.complex128)
        for j in range(xs.size):
            c = coefs[j]
            x = xs[j]
            step = complex(math.cos(-TWO_PI * x * dy), math.sin(-TWO_PI * x * dy))
            i = 0
            while i < count:
                ph = -TWO_PI * x * (y0 + dy * i)
                z = complex(math.cos(ph), math.sin(ph)) * c
                stop = min(count, i + 512)
                while i < stop:
                    # Kahan summation over the cells
                    yk = z - comp[i]
                    t = out[i] + yk
                    comp[i] = (t - out[i]) - yk
                    out[i] = t
                    z *= step
                    i += 1
        return out

    @njit(cache=True)
    def _expsum_points_nb(ys, xs, coefs):
        out = np.zeros(ys.size, dtype=np.complex128)
        for i in range(ys.size):
            acc = 0j
            comp = 0j
            for j in range(xs.size):
                ph = -TWO_PI * xs[j] * ys[i]
                yk = coefs[j] * complex(math.cos(ph), math.sin(ph)) - comp
                t = acc + yk
                comp = (t - acc) - yk
                acc = t
            out[i] = acc
        return out

    @njit(cache=True)
    def _osc_sampled_nb(g, radius_pts, stride, first, last, p):
        best = 0.0
        n = 2 * radius_pts
        c = first
        while c <= last:
            avg = 0j
            for i in range(c - radius_pts, c + radius_pts):
                avg += g[i]
            avg /= n
            acc = 0.0
            for i in range(c - radius_pts, c + radius_pts):
                acc += abs(g[i] - avg) ** p
            acc /= n
            if acc > best:
                best = acc
            c += stride
        return best

    @njit(cache=True)
    def _modulus_sampled_nb(g, max_shift):
        # compare squared moduli, one sqrt at the end
        re = g.real.copy()
        im = g.imag.copy()
        best = 0.0
        m = g.size
        for s in range(1, max_shift + 1):
            for i in range(m - s):
                a = re[i + s] - re[i]
                b = im[i + s] - im[i]
                d = a * a + b * b
                if d > best:
                    best = d
        return math.sqrt(best)

    @njit(cache=True)
    def _interval_osc_nb(lo, hi, coefs, centers, r, p):
        k = centers.size
        avg = np.zeros(k, dtype=np.complex128)
        dev = np.zeros(k)
        width = 2.0 * r
        # cells are sorted by their left end; find the overlapping window
        for t in range(k):
            a = centers[t] - r
            b = centers[t] + r
            j0 = np.searchsorted(hi, a, side="right")
            acc = 0j
            cov = 0.0
            j = j0
            while j < lo.size and lo[j] < b:
                ov = min(b, hi[j]) - max(a, lo[j])
                if ov > 0.0:
                    acc += ov * coefs[j]
                    cov += ov
                j += 1
            A = acc / width
            d = 0.0
            j = j0
            while j < lo.size and lo[j] < b:
                ov = min(b, hi[j]) - max(a, lo[j])
                if ov > 0.0:
                    d += ov * abs(coefs[j] - A) ** p
                j += 1
            rest = width - cov
            if rest > 0.0:
                d += abs(A) ** p * rest
            avg[t] = A
            dev[t] = d
        return avg, dev

    _rect_disk_area_nb = njit(cache=True)(_rect_disk_area_scalar)

    @njit(cache=True)
    def _rect_disk_areas_nb(x0, x1, y0, y1, R):
        out = np.empty(x0.size)
        for i in range(x0.size):
            out[i] = _rect_disk_area_nb(x0[i], x1[i], y0[i], y1[i], R)
        return out

    @njit(cache=True)
    def _ball_osc_2d_nb(lo0, hi0, lo1, hi1, coefs, cx, cy, r, p):
        k = cx.size
        m = coefs.size
        avg = np.zeros(k, dtype=np.complex128)
        dev = np.zeros(k)
        area_b = math.pi * r * r
        ov = np.empty(m)
        for t in range(k):
            acc = 0j
            cov = 0.0
            for j in range(m):
                a = _rect_disk_area_nb(lo0[j] - cx[t], hi0[j] - cx[t], lo1[j] - cy[t],
                                       hi1[j] - cy[t], r)
                ov[j] = a
                acc += a * coefs[j]
                cov += a
            A = acc / area_b
            d = 0.0
            for j in range(m):
                if ov[j] > 0.0:
                    d += ov[j] * abs(coefs[j] - A) ** p
            rest = area_b - cov
            if rest > 0.0:
                d += abs(A) ** p * rest
            avg[t] = A
            dev[t] = d
        return avg, dev

    expsum_uniform = _expsum_uniform_nb
    expsum_points = _expsum_points_nb
    osc_sampled = _osc_sampled_nb
    modulus_sampled = _modulus_sampled_nb
    rect_disk_areas = _rect_disk_areas_nb
    rect_disk_area = _rect_disk_area_nb

    def interval_osc(lo, hi, coefs, centers, r, p):
        return _interval_osc_nb(lo, hi, coefs.astype(np.complex128), centers, float(r), float(p))

    def ball_osc_2d(lo0, hi0, lo1, hi1, coefs, cx, cy, r, p):
        return _ball_osc_2d_nb(lo0, hi0, lo1, hi1, coefs.astype(np.complex128), cx, cy,
                               float(r), float(p))

else:
    expsum_uniform = _expsum_uniform_np
    expsum_points = _expsum_points_np
    osc_sampled = _osc_sampled_np
    modulus_sampled = _modulus_sampled_np
    rect_disk_areas = _rect_disk_areas_np
    rect_disk_area = _rect_disk_area_scalar
    interval_osc = _interval_osc_np
    ball_osc_2d = _ball_osc_2d_np


NUMPY_KERNELS = {
    "expsum_uniform": _expsum_uniform_np,
    "expsum_points": _expsum_points_np,
    "osc_sampled": _osc_sampled_np,
    "modulus_sampled": _modulus_sampled_np,
    "rect_disk_areas": _rect_disk_areas_np,
    "interval_osc": _interval_osc_np,
    "ball_osc_2d": _ball_osc_2d_np,
}
