"""Special functions: complex log-Gamma/digamma, zeta on the 1-line, and
Bessel functions of imaginary order.

K of imaginary order is only ever produced in exponentially rescaled form
K~(t, x) = e^{pi t} K_{2it}(x); the raw function underflows long before the
spectral parameters of interest, while every consumer pairs K with
sinh(pi t), so the rescaled product is the numerically meaningful object.

Evaluation routes:

* ``integral``: K~ = e^{pi t - x} * int_0^umax e^{-x(cosh u - 1)} cos(2tu) du.
  Well conditioned only while pi*t - x is small; the route is used for
  pi*t <= x + 16, which in particular covers all real-order sanity checks.
* ``series``: K~ = -2 pi Im(e^{-pi t} I_{2it}(x)) / (1 - e^{-4 pi t}), with
  the modified-Bessel series evaluated in rescaled form.  Stable exactly
  where the integral route is not.
* ``asymptotic``: the uniform large-order expansion with phase
  phi_Y(t) = pi/4 + 2t arccosh(2t/Y) - sqrt(4t^2 - Y^2) and Debye-polynomial
  corrections.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .quadrature import panel_nodes as _panel_nodes

EULER_GAMMA = 0.5772156649015329

# ---------------------------------------------------------------------------
# log Gamma / digamma

# B_{2k} / (2k (2k-1)) for the Stirling series
_STIRLING = (
    1.0 / 12,
    -1.0 / 360,
    1.0 / 1260,
    -1.0 / 1680,
    1.0 / 1188,
    -691.0 / 360360,
    1.0 / 156,
    -3617.0 / 122400,
    43867.0 / 244188,
)

_LOG_2PI = math.log(2.0 * math.pi)


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma, off the nonpositive real axis."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise ValueError(f"log_gamma undefined on the nonpositive real axis (z={z})")
    shift = 0.0 + 0.0j
    while z.real < 12.0:
        shift += cmath.log(z)
        z += 1.0
    out = (z - 0.5) * cmath.log(z) - z + 0.5 * _LOG_2PI
    w = 1.0 / z
    w2 = w * w
    p = w
    for c in _STIRLING:
        out += c * p
        p *= w2
    return out - shift


def _log_gamma_arr(z: np.ndarray) -> np.ndarray:
    """Vectorized log_gamma for arrays off the nonpositive real axis."""
    z = np.asarray(z, dtype=complex).copy()
    shift = np.zeros_like(z)
    for _ in range(64):
        mask = z.real < 12.0
        if not mask.any():
            break
        shift[mask] += np.log(z[mask])
        z[mask] += 1.0
    out = (z - 0.5) * np.log(z) - z + 0.5 * _LOG_2PI
    w = 1.0 / z
    w2 = w * w
    p = w.copy()
    for c in _STIRLING:
        out += c * p
        p = p * w2
    return out - shift


# -B_{2k}/(2k) for the digamma asymptotic series
_DIGAMMA = (
    -1.0 / 12,
    1.0 / 120,
    -1.0 / 252,
    1.0 / 240,
    -1.0 / 132,
    691.0 / 32760,
    -1.0 / 12,
)


def digamma(z: complex) -> complex:
    """Gamma'/Gamma on Re z > 0."""
    z = complex(z)
    if z.real <= 0.0:
        raise ValueError(f"digamma requires Re z > 0, got {z}")
    out = 0.0 + 0.0j
    while z.real < 12.0:
        out -= 1.0 / z
        z += 1.0
    out += cmath.log(z) - 0.5 / z
    w2 = 1.0 / (z * z)
    p = w2
    for c in _DIGAMMA:
        out += c * p
        p *= w2
    return out


# ---------------------------------------------------------------------------
# Riemann zeta by Euler-Maclaurin

_B2K = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
)

_EM_FACTORIALS = tuple(math.factorial(2 * k) for k in range(1, 13))


def zeta_em(s: complex, nterms: int | None = None) -> complex:
    """zeta(s) by Euler-Maclaurin for Re s > 0, s != 1 (general entry point)."""
    s = complex(s)
    if s == 1.0:
        raise ValueError("zeta has a pole at s = 1")
    if s.real <= 0.0:
        raise ValueError(f"zeta_em requires Re s > 0, got {s}")
    N = nterms if nterms is not None else max(32, int(0.45 * abs(s.imag)) + 30)
    ns = np.arange(1, N + 1, dtype=float)
    tot = complex(np.sum(np.exp(-s * np.log(ns))))
    tot += N ** (1 - s) / (s - 1) - 0.5 * N ** (-s.real) * N ** (-1j * s.imag)
    fac = s
    npow = N ** (-s - 1)
    tot += _B2K[0] / 2.0 * fac * npow
    for k in range(2, 13):
        fac = fac * (s + 2 * k - 3) * (s + 2 * k - 2)
        npow = npow / (N * N)
        tot += _B2K[k - 1] / _EM_FACTORIALS[k - 1] * fac * npow
    return tot


def zeta_em_arr(s: np.ndarray) -> np.ndarray:
    """Vectorized zeta_em with a common truncation for the whole array."""
    s = np.asarray(s, dtype=complex)
    N = max(32, int(0.45 * float(np.max(np.abs(s.imag)))) + 30)
    tot = np.zeros_like(s)
    logn = np.log(np.arange(1, N + 1, dtype=float))
    for start in range(0, N, 4096):
        block = logn[start : start + 4096]
        tot += np.exp(-np.multiply.outer(s, block)).sum(axis=1)
    tot += N ** (1 - s) / (s - 1) - 0.5 * np.exp(-s * math.log(N))
    fac = s.copy()
    npow = np.exp(-(s + 1) * math.log(N))
    tot += _B2K[0] / 2.0 * fac * npow
    for k in range(2, 13):
        fac = fac * (s + 2 * k - 3) * (s + 2 * k - 2)
        npow = npow / (N * N)
        tot += _B2K[k - 1] / _EM_FACTORIALS[k - 1] * fac * npow
    return tot


ZETA_T_LIMIT = 1.0e6


def zeta_one_line(t: float) -> complex:
    """zeta(1 + 2it) for 0 < |t| <= 1e6."""
    if t == 0.0:
        raise ValueError("zeta(1) pole: t = 0 not allowed")
    if abs(t) > ZETA_T_LIMIT:
        raise ValueError(f"|t| = {abs(t)} exceeds the supported range {ZETA_T_LIMIT}")
    return zeta_em(complex(1.0, 2.0 * t))


def zeta_one_line_arr(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t == 0.0):
        raise ValueError("zeta(1) pole: t = 0 not allowed")
    return zeta_em_arr(1.0 + 2j * t)


# ---------------------------------------------------------------------------
# Bessel functions of imaginary order


@dataclass(frozen=True)
class BesselEval:
    value: complex
    method: str  # 'series' | 'integral' | 'asymptotic'
    est_error: float


JI_T_LIMIT = 200.0

# amplification beyond which the alternating J series has shed too many digits
_SERIES_AMP_LIMIT = 1.0e10


def _ji_series_scaled_arr(t, x: float, kind: str):
    """e^{-pi|t|} J_{2it}(x) (kind='J') or e^{-pi|t|} I_{2it}(x) (kind='I').

    Returns (values, amplification) where amplification is the ratio of the
    largest term magnitude to the result magnitude (cancellation tracker).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    sign = 1.0 if kind == "I" else -1.0
    nu = 2j * t
    term = np.exp(-math.pi * np.abs(t) + nu * math.log(x / 2.0) - _log_gamma_arr(1.0 + nu))
    tot = term.copy()
    peak = np.abs(term)
    x24 = sign * (x / 2.0) ** 2
    for k in range(2000):
        term = term * (x24 / ((k + 1.0) * (nu + k + 1.0)))
        tot += term
        np.maximum(peak, np.abs(term), out=peak)
        if k > 8 and np.max(np.abs(term)) < 1e-18 * max(float(np.max(np.abs(tot))), 1e-280):
            break
    amp = peak / np.maximum(np.abs(tot), 1e-280)
    return tot, amp


def _j_integral_scaled(t: float, x: float) -> tuple[complex, float]:
    """e^{-pi|t|} J_{2it}(x) by the chirped integral representation.

    Substituting sin(theta) = e^{-w^2} in the Poisson-type representation
    turns it into int_0^inf e^{-4itw^2} g(w) dw with g smooth and Gaussian
    tailed; node density follows the chirp frequency 8|t|w + x.
    """
    ta = abs(t)
    wmax = 6.5
    cycles = (4.0 * ta * wmax * wmax + 1.6 * x) / (2.0 * math.pi)
    panels = max(8, int(1.3 * cycles) + 4)

    def eval_panels(p):
        w, wt = _panel_nodes(0.0, wmax, p)
        e2 = np.exp(-2.0 * w * w)
        root = np.sqrt(1.0 - e2)
        g = np.empty_like(w)
        small = root < 1e-8
        g[~small] = 2.0 * w[~small] * np.exp(-w[~small] ** 2) / root[~small] * np.cos(x * root[~small])
        g[small] = math.sqrt(2.0)
        phase = np.exp(-4j * ta * w * w)
        return complex(np.sum(wt * g * phase))

    coarse = eval_panels(panels)
    fine = eval_panels(2 * panels)
    pref = cmath.exp(
        -math.pi * ta + 2j * ta * math.log(x / 2.0) - log_gamma(0.5 + 2j * ta)
    ) * (2.0 / math.sqrt(math.pi))
    val = pref * fine
    err = abs(pref) * abs(fine - coarse)
    if t < 0:
        val = val.conjugate()
    return val, err


def bessel_ji_imag(kind: str, t: float, x: float) -> BesselEval:
    """J_{2it}(x) or I_{2it}(x), raw (unscaled), for |t| <= 200."""
    if kind not in ("J", "I"):
        raise ValueError(f"kind must be 'J' or 'I', got {kind!r}")
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    if abs(t) > JI_T_LIMIT:
        raise ValueError(f"|t| = {abs(t)} exceeds the supported range {JI_T_LIMIT}")
    scale = math.exp(math.pi * abs(t))
    vals, amp = _ji_series_scaled_arr(np.array([t]), x, kind)
    v, a = complex(vals[0]), float(amp[0])
    if kind == "J" and a > _SERIES_AMP_LIMIT:
        v, err = _j_integral_scaled(t, x)
        return BesselEval(value=v * scale, method="integral", est_error=err * scale)
    est = a * 3e-16 * abs(v) * scale
    return BesselEval(value=v * scale, method="series", est_error=est)


def bessel_i_real(nu: float, x: float) -> float:
    """I_nu(x) for real nu > -1 by the ascending series (all terms positive)."""
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    term = math.exp(nu * math.log(x / 2.0) - math.lgamma(nu + 1.0))
    tot = term
    for k in range(500):
        term *= (x / 2.0) ** 2 / ((k + 1.0) * (nu + k + 1.0))
        tot += term
        if term < 1e-18 * tot:
            break
    return tot


def _k_umax(x: float, extra: float = 0.0) -> float:
    """Truncation point: e^{-x(cosh u - 1)} below 1e-20 with margin for growth."""
    u = math.acosh(1.0 + 46.0 / x)
    if extra > 0.0:
        while x * (math.cosh(u) - 1.0) - extra * u < 46.0:
            u += 0.5
    return max(10.0, u)


def bessel_k_real(nu: float, x: float) -> float:
    """K_nu(x) for real nu >= 0 by the cosh-kernel quadrature."""
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    umax = _k_umax(x, extra=nu)

    def eval_panels(p):
        u, w = _panel_nodes(0.0, umax, p, order=32)
        return float(np.sum(w * np.exp(-x * (np.cosh(u) - 1.0)) * np.cosh(nu * u)))

    panels = 8
    prev = eval_panels(panels)
    for _ in range(8):
        panels *= 2
        cur = eval_panels(panels)
        if abs(cur - prev) <= 1e-13 * max(abs(cur), 1e-300) + 1e-300:
            prev = cur
            break
        prev = cur
    return math.exp(-x) * prev


_QUAD_ROUTE_MARGIN = 16.0


def _k_quad_scaled_arr(t, x: float):
    """Integral-route K~ for an array of t with pi*t <= x + margin.

    The node family depends on x only (sized for the largest admissible t of
    this route), so the result is a fixed deterministic function of (t, x)
    regardless of how callers batch their evaluation points.
    Returns (values, est_errors).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    umax = _k_umax(x)
    t_route_max = (x + _QUAD_ROUTE_MARGIN) / math.pi
    cycles = 2.0 * t_route_max * umax / (2.0 * math.pi)
    panels = max(8, int(1.3 * cycles) + 4)
    u1, w1 = _panel_nodes(0.0, umax, panels)
    u2, w2 = _panel_nodes(0.0, umax, 2 * panels)
    coarse = kernels.k_quad_factored(np.ascontiguousarray(t), x, u1, w1)
    fine = kernels.k_quad_factored(np.ascontiguousarray(t), x, u2, w2)
    scale = np.exp(math.pi * t - x)
    return scale * fine, scale * np.abs(fine - coarse)


def _k_series_scaled_arr(t, x: float):
    """Series-route K~ for an array of t with pi*t > x + margin."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    ivals, amp = _ji_series_scaled_arr(t, x, "I")
    denom = 1.0 - np.exp(-4.0 * math.pi * t)
    vals = -2.0 * math.pi * ivals.imag / denom
    est = 2.0 * math.pi * amp * np.abs(ivals) * 3e-16 / denom
    return vals, est


# Near the turning point x ~ 2t neither double-precision route has digits
# left: the integral loses e^{pi t - x} of significance and the series about
# as much through its alternating peak.  Inputs in the wedge are rejected
# (Airy-type uniform expansions are out of scope).
_TURNING_SERIES_LIMIT = 1.9


def turning_wedge(t, x: float):
    t = np.asarray(t, dtype=float)
    return (math.pi * t > x + _QUAD_ROUTE_MARGIN) & (x > _TURNING_SERIES_LIMIT * t)


def bessel_k_imag_scaled(t: float, x: float) -> BesselEval:
    """e^{pi t} K_{2it}(x) for t >= 0, x > 0 (real-valued)."""
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if math.pi * t <= x + _QUAD_ROUTE_MARGIN:
        vals, errs = _k_quad_scaled_arr(np.array([t]), x)
        return BesselEval(value=float(vals[0]), method="integral", est_error=float(errs[0]))
    if x > _TURNING_SERIES_LIMIT * t:
        raise ValueError(
            f"(t={t}, x={x}) lies in the turning-point wedge x ~ 2t where no "
            "double-precision route applies; rejected"
        )
    vals, errs = _k_series_scaled_arr(np.array([t]), x)
    return BesselEval(value=float(vals[0]), method="series", est_error=float(errs[0]))


def ktilde_arr(t, x: float, wedge: str = "raise") -> np.ndarray:
    """Routed vector evaluation of K~(t, x) = e^{pi t} K_{2it}(x), t >= 0.

    ``wedge`` controls turning-zone elements: "raise" (default) or "zero"
    (callers that have verified the wedge carries negligible weight).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty_like(t)
    quad = math.pi * t <= x + _QUAD_ROUTE_MARGIN
    bad = turning_wedge(t, x)
    if bad.any():
        if wedge == "raise":
            raise ValueError(
                f"{int(bad.sum())} evaluation points fall in the turning-point "
                f"wedge x ~ 2t at x={x}; rejected"
            )
        out[bad] = 0.0
    series = ~quad & ~bad
    if quad.any():
        out[quad] = _k_quad_scaled_arr(t[quad], x)[0]
    if series.any():
        out[series] = _k_series_scaled_arr(t[series], x)[0]
    return out


# beyond this amplification the alternating J series has shed ~10 digits and
# the chirped integral representation takes over element-wise
_J_PATCH_AMP = 1.0e10


def jtilde_arr(t, x: float) -> np.ndarray:
    """Vector evaluation of e^{-pi t} J_{2it}(x) for t >= 0 (complex)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    vals, amp = _ji_series_scaled_arr(t, x, "J")
    bad = np.nonzero(amp > _J_PATCH_AMP)[0]
    for i in bad:
        vals[i] = _j_integral_scaled(float(t[i]), x)[0]
    return vals


# ---------------------------------------------------------------------------
# Uniform asymptotic for K of imaginary order


def phase_phi(t: float, Y: float) -> float:
    """phi_Y(t) = pi/4 + 2t arccosh(2t/Y) - sqrt(4t^2 - Y^2), for 2t >= Y."""
    if Y <= 0.0:
        raise ValueError(f"Y must be positive, got {Y}")
    if 2.0 * t < Y:
        raise ValueError(f"phase requires 2t >= Y, got t={t}, Y={Y}")
    return math.pi / 4.0 + 2.0 * t * math.acosh(2.0 * t / Y) - math.sqrt(4.0 * t * t - Y * Y)


def _debye_u1(p: float) -> float:
    return (3.0 * p - 5.0 * p**3) / 24.0


def _debye_u2(p: float) -> float:
    return (81.0 * p**2 - 462.0 * p**4 + 385.0 * p**6) / 1152.0


ASYM_T_MIN = 10.0
ASYM_ERR_CONST = 5.0


def bessel_k_asymptotic(t: float, Y: float, err_const: float = ASYM_ERR_CONST) -> BesselEval:
    """e^{pi t}-rescaled uniform asymptotic of K_{2it}(Y), for Y < t/2, t >= 10.

    The leading term carries an O(1/t) correction with an oscillating
    coefficient; the first two Debye corrections are included so the value is
    usable at desk scale, while est_error keeps the configured O(1/t)
    envelope.
    """
    if Y <= 0.0:
        raise ValueError(f"Y must be positive, got {Y}")
    if t < ASYM_T_MIN:
        raise ValueError(f"asymptotic path requires t >= {ASYM_T_MIN}, got {t}")
    if Y >= t / 2.0:
        raise ValueError(f"asymptotic path requires Y < t/2, got Y={Y}, t={t}")
    nu = 2.0 * t
    q = math.sqrt(nu * nu - Y * Y)
    phi = phase_phi(t, Y)
    p = nu / q
    val = math.sqrt(2.0 * math.pi) / math.sqrt(q) * (
        math.sin(phi) * (1.0 - _debye_u2(p) / (nu * nu))
        + math.cos(phi) * _debye_u1(p) / nu
    )
    return BesselEval(value=val, method="asymptotic", est_error=err_const / t)
