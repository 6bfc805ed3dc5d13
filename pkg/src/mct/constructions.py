"""Example and counterexample families.

Each builder returns a StepFunction where the object is a step function
and a ClosedForm evaluator where only the transform is needed.  The
registry at the bottom maps family names to builders for the CLI.
"""

import math
import warnings

import numpy as np
from scipy import special

from .fourier import ClosedForm
from .grid import StepFunction, box

TWO_PI = 2.0 * math.pi


def _tensor(points, coefs, dim, level=0):
    """Tensor product of a 1-D list of cells with itself, dim times."""
    if dim == 1:
        return StepFunction(1, level, {(int(k),): complex(c) for k, c in zip(points, coefs)})
    if dim == 2:
        cells = {}
        for k1, c1 in zip(points, coefs):
            for k2, c2 in zip(points, coefs):
                cells[(int(k1), int(k2))] = complex(c1) * complex(c2)
        return StepFunction(2, level, cells)
    raise ValueError("only dimensions 1 and 2 are supported")


# ---------------------------------------------------------------------------
# lacunary sums
# ---------------------------------------------------------------------------

def lacunary_product(N, dim=1):
    """prod_j g_N(x_j) with g_N = sum_{k=1}^N chi_(2^k, 2^k + 1)."""
    N = int(N)
    if not 1 <= N <= 24:
        raise ValueError("N must lie in 1..24")
    pts = [2 ** k for k in range(1, N + 1)]
    return _tensor(pts, [1.0] * N, dim)


def _sinc2_cos_integral(d):
    """int_0^1 sinc(y)^2 cos(2 pi d y) dy for integers d >= 0."""
    d = np.abs(np.asarray(d, dtype=float))

    def K(a):
        # int_0^1 (1 - cos 2 pi a y) / (2 pi^2 y^2) dy for integer a
        return a * special.sici(TWO_PI * a)[0] / math.pi

    out = -K(d) + 0.5 * K(d + 1) + 0.5 * K(np.abs(d - 1))
    # second differences of a nearly linear function: pure rounding past 2^20
    return np.where(d > 2.0 ** 20, 0.0, out)


def lacunary_fourier_l2(N, dim=1):
    """||f_N^||_{L_2((0,1)^dim)} for the lacunary product, by Parseval on the cells.

    |g_N^(y)|^2 = sinc(y)^2 |sum_k e^{-2 pi i 2^k y}|^2, so the square of the
    norm is N I(0) + 2 sum_{j<k} I(2^k - 2^j) with I(d) the cosine moment of
    sinc^2 over (0, 1).
    """
    N = int(N)
    ks = np.arange(1, N + 1)
    tot = N * float(_sinc2_cos_integral(0))
    for j in range(N):
        d = 2.0 ** ks[j + 1:] - 2.0 ** ks[j]
        tot += 2.0 * float(np.sum(_sinc2_cos_integral(d)))
    return math.sqrt(tot) ** dim


# ---------------------------------------------------------------------------
# Rudin-Shapiro polynomials
# ---------------------------------------------------------------------------

def rudin_shapiro(length):
    """First ``length`` Rudin-Shapiro signs; length must be a power of 2."""
    length = int(length)
    if length < 1 or length & (length - 1):
        raise ValueError(f"Rudin-Shapiro length must be a power of 2, got {length}")
    P = np.array([1.0])
    Q = np.array([1.0])
    while P.size < length:
        P, Q = np.concatenate([P, Q]), np.concatenate([P, -Q])
    return P


def ultraflat_counterexample(N):
    """f_N = eps_n on [n, n+1), n = 0..N, with Rudin-Shapiro signs (N + 1 = 2^j)."""
    eps = rudin_shapiro(int(N) + 1)
    return StepFunction(1, 0, {(n,): complex(e) for n, e in enumerate(eps)})


def polynomial_eval(coefs, ys):
    """P(y) = sum_n coefs[n] e^{-2 pi i n y}."""
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    z = np.exp(-1j * TWO_PI * ys)
    out = np.zeros(ys.size, dtype=complex)
    for c in np.asarray(coefs)[::-1]:
        out = out * z + c
    return out


def polynomial_l2_interval(coefs, a, b):
    """||P||_{L_2(a, b)} exactly, from the autocorrelation of the coefficients."""
    c = np.asarray(coefs, dtype=complex)
    n = c.size
    R = np.correlate(c, c, mode="full")  # R[n-1+d] = sum_j c_{j+d} conj(c_j)
    d = np.arange(-(n - 1), n, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        mom = np.where(d == 0, b - a,
                       (np.exp(-1j * TWO_PI * d * b) - np.exp(-1j * TWO_PI * d * a))
                       / (-1j * TWO_PI * np.where(d == 0, 1.0, d)))
    val = float(np.real(np.sum(R * mom)))
    return math.sqrt(max(val, 0.0))


def box_factor(ys):
    """(1 - e^{-2 pi i y}) / (2 pi i y): the transform of chi_[0,1)."""
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    return np.exp(-1j * math.pi * ys) * np.sinc(ys)


A2_INTERVAL = (1.0 / (4.0 * math.pi), 1.0 / (2.0 * math.pi))


def rudin_shapiro_lower(N, beta=0.0):
    """Certified lower bound for ||y|^{-beta} f_N^||_{L_2} on the test interval.

    f_N^ = box * P_N and |y|^{-beta}|box(y)| decreases on the interval, so
    its value at the right end times ||P_N||_{L_2(I)} is a lower bound.
    """
    a, b = A2_INTERVAL
    eps = rudin_shapiro(int(N) + 1)
    m = b ** (-beta) * abs(float(np.sinc(b)))
    return m * polynomial_l2_interval(eps, a, b)


# ---------------------------------------------------------------------------
# Pitt necessity families
# ---------------------------------------------------------------------------

def modulated_box(N, dim=1):
    """Exact transform of prod_j e^{2 pi i N x_j} chi_(1,2)(x_j)."""
    N = float(N)

    def one(s):
        u = s - N
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.exp(-TWO_PI * 1j * u) * (1 - np.exp(-TWO_PI * 1j * u)) / (TWO_PI * 1j * u)
        return np.where(np.abs(u) < 1e-12, np.exp(-TWO_PI * 1j * u * 1.5), val)

    if dim == 1:
        fn = one
    elif dim == 2:
        def fn(ys):
            return one(ys[:, 0]) * one(ys[:, 1])
    else:
        raise ValueError("only dimensions 1 and 2 are supported")
    top = max(0, math.ceil(math.log2(abs(N) + 2)))
    return ClosedForm(fn, dim=dim, mass_bound=1.0, name=f"modulated-box(N={N:g})",
                      scales=(-1, top))


def _grid_level(x):
    """Coarsest level on which the real x is a grid point."""
    for L in range(0, -53, -1):
        if float(x) * 2.0 ** (-L) == math.floor(float(x) * 2.0 ** (-L)):
            return L
    raise ValueError(f"{x} is not a dyadic rational")


def shifted_box(N, dim=1):
    """chi_(N, N+1)^dim as a step function (N a dyadic rational)."""
    L = _grid_level(N)
    return box([N] * dim, [N + 1] * dim, L)


def log_singular(gamma, p, dim=1, level=None):
    """Step sampling of |x|^{-gamma - n/p} / |log |x|| on the ball of radius 1/(2 pi)."""
    n = dim
    if gamma >= n * (1 - 1 / p):
        raise ValueError("this profile is not integrable against the weight |x|^gamma "
                         "for gamma >= n/p'")
    if level is None:
        level = -20 if dim == 1 else -8
    h = 2.0 ** level
    R = 1.0 / TWO_PI
    k = int(math.ceil(R / h))
    js = np.arange(-k, k)
    mids = (js + 0.5) * h
    e = gamma + n / p

    def prof(r):
        return r ** (-e) / np.abs(np.log(r))

    if dim == 1:
        keep = np.abs(mids) < R
        vals = prof(np.abs(mids[keep]))
        return StepFunction(1, level, {(int(j),): complex(v) for j, v in zip(js[keep], vals)})
    X, Y = np.meshgrid(mids, mids, indexing="ij")
    J1, J2 = np.meshgrid(js, js, indexing="ij")
    r = np.hypot(X, Y)
    keep = r < R
    vals = prof(r[keep])
    return StepFunction(2, level, {(int(a), int(b)): complex(v)
                                   for a, b, v in zip(J1[keep], J2[keep], vals)})


# ---------------------------------------------------------------------------
# sharpness and GM examples
# ---------------------------------------------------------------------------

def sharpness_window(p, lam, n=1):
    """Open alpha-interval (1 - 1/s - beta, 1 - 1/s) for the sharpness example."""
    inv_s = 1 / p - lam / n
    beta = lam - max(0.0, n / p - n / 2)
    return 1 - inv_s - beta, 1 - inv_s


def sharpness_example(alpha, K, p=None, lam=None):
    """sum_{k=1}^K k^{-alpha} chi_[2^{k-1}, 2^{k-1} + 1)."""
    K = int(K)
    if not 1 <= K <= 64:
        raise ValueError("K must lie in 1..64")
    if p is not None and lam is not None:
        lo, hi = sharpness_window(p, lam)
        if not lo < alpha < hi:
            warnings.warn(f"alpha = {alpha} is outside ({lo:g}, {hi:g}) for p = {p}, "
                          f"lambda = {lam}", stacklevel=2)
    ks = np.arange(1, K + 1)
    return StepFunction(1, 0, {(int(2 ** (k - 1)),): complex(float(k) ** -alpha) for k in ks})


def gm_radial(theta, level=-16):
    """Nonincreasing profile t^{-theta} on (0, 1), sampled at cell midpoints."""
    if theta <= 0 or theta >= 1:
        raise ValueError("theta must lie in (0, 1) for a 1-D profile")
    h = 2.0 ** level
    n = 2 ** (-level)
    js = np.arange(n)
    vals = ((js + 0.5) * h) ** (-theta)
    return StepFunction(1, level, {(int(j),): complex(v) for j, v in zip(js, vals)})


def radial_extension(f0):
    """Even 1-D function x -> f0(|x|) from a profile on (0, inf)."""
    cells = {}
    for j, c in zip(f0.idx[:, 0], f0.coef):
        if j >= 0:
            cells[(int(j),)] = complex(c)
            cells[(int(-j - 1),)] = complex(c)
    return StepFunction(1, f0.level, cells)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

FAMILIES = {
    "lacunary": (lacunary_product, {"N": int, "dim": int}),
    "ultraflat": (ultraflat_counterexample, {"N": int}),
    "modulated-box": (modulated_box, {"N": float, "dim": int}),
    "shifted-box": (shifted_box, {"N": float, "dim": int}),
    "log-singular": (log_singular, {"gamma": float, "p": float, "dim": int, "level": int}),
    "sharpness": (sharpness_example, {"alpha": float, "K": int, "p": float, "lam": float}),
    "gm-radial": (gm_radial, {"theta": float, "level": int}),
}


def make_family(name, **params):
    """Build a registered family from string or typed parameters."""
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    fn, types = FAMILIES[name]
    kw = {}
    for k, v in params.items():
        if k not in types:
            raise KeyError(f"family {name!r} takes {sorted(types)}, not {k!r}")
        kw[k] = types[k](v)
    return fn(**kw)
