"""Both sides of the trace identity over even forms: the Gaussian window,
the three Bessel transforms, the continuous (Eisenstein) term, the
Kloosterman geometric side with a certified tail bound, and the spectral
side over an ingested dataset.

All quadratures are deterministic (fixed node families, global doubling),
so repeated runs are bitwise identical.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import divisors, kloosterman, tau
from .errors import IncompleteDataError, InsufficientCutoffError
from .hecke import KIM_SARNAK_THETA
from .maass_data import Dataset
from .quadrature import adaptive_gauss, converge_simpson, panel_nodes
from .specfun import jtilde_arr, ktilde_arr, zeta_one_line_arr

# Quadrature window: h is below 1e-62 once |t -+ T| > 12 M.
DOMAIN_WIDTH = 12.0
EISENSTEIN_EXCISION = 1e-3


@dataclass(frozen=True)
class GaussianWindow:
    """h(t) = exp(-(t-T)^2/M^2) + exp(-(t+T)^2/M^2) with 0 < M < T."""

    T: float
    M: float

    def __post_init__(self):
        if not (0.0 < self.M < self.T):
            raise ValueError(f"window requires 0 < M < T, got T={self.T}, M={self.M}")

    def h(self, t):
        t = np.asarray(t, dtype=float)
        return np.exp(-(((t - self.T) / self.M) ** 2)) + np.exp(-(((t + self.T) / self.M) ** 2))

    @property
    def t_max(self) -> float:
        return self.T + DOMAIN_WIDTH * self.M


def transform_H(window, rule: str = "gauss") -> float:
    """(1/8 pi^2) integral of h(t) tanh(pi t) t over the real line."""

    def f(t):
        return window.h(t) * np.tanh(math.pi * t) * t

    b = window.t_max
    if rule == "gauss":
        val, _ = adaptive_gauss(f, 0.0, b, start_panels=max(8, int(b / max(window.M, 1.0))))
    elif rule == "simpson":
        val = converge_simpson(f, 0.0, b)
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return 2.0 * val / (8.0 * math.pi**2)


def _osc_panels(window, x: float) -> int:
    """Starting panel count resolving the Bessel-phase oscillation.

    GL32 panels hold several cycles each at full accuracy; the doubling
    refinement covers the slack.
    """
    b = window.t_max
    freq = 2.0 * math.log(max(4.0 * b / x, 2.72)) + 2.0
    cycles = freq * b / (2.0 * math.pi)
    return max(8, int(cycles / 3.0) + 4)


def transform_Hpm(
    kind: str, window, x: float, rule: str = "gauss",
    rel_tol: float = 1e-9, abs_tol: float = 1e-12,
) -> float:
    """The two Bessel transforms of the window against J_{2it} / K_{2it}.

    plus:  (i/2 pi) int J_{2it}(x) h(t) t / cosh(pi t) dt, folded onto t > 0
           via J_{2it} - J_{-2it} = 2i Im J_{2it} (real output).
    minus: (1/pi^2) int K_{2it}(x) sinh(pi t) h(t) t dt, evaluated with the
           rescaled kernel: sinh(pi t) K_{2it} = (1 - e^{-2 pi t}) K~ / 2.
    """
    if isinstance(window, GaussianWindow):
        return _hpm_cached(kind, window.T, window.M, x, rule, rel_tol, abs_tol)
    return _hpm_eval(kind, window, x, rule, rel_tol, abs_tol)


@lru_cache(maxsize=4096)
def _hpm_cached(kind, T, M, x, rule, rel_tol, abs_tol) -> float:
    return _hpm_eval(kind, GaussianWindow(T=T, M=M), x, rule, rel_tol, abs_tol)


def _hpm_eval(kind: str, window, x: float, rule: str, rel_tol: float, abs_tol: float) -> float:
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    if kind not in ("plus", "minus"):
        raise ValueError(f"kind must be 'plus' or 'minus', got {kind!r}")
    b = window.t_max

    if kind == "minus":
        # turning-zone nodes (x ~ 2t) are only tolerable when the window
        # gives them no weight; otherwise the transform is not computable
        # in double precision and we say so
        from .specfun import _QUAD_ROUTE_MARGIN, _TURNING_SERIES_LIMIT

        w_lo = (x + _QUAD_ROUTE_MARGIN) / math.pi
        w_hi = x / _TURNING_SERIES_LIMIT
        if w_lo < min(w_hi, b):
            samples = np.linspace(max(0.0, w_lo), min(w_hi, b), 64)
            if float(np.max(window.h(samples))) > 1e-12:
                raise ValueError(
                    f"H-minus at x={x}: the window weights the turning-point "
                    f"wedge t in [{w_lo:.2f}, {w_hi:.2f}] where K_(2it)(x) has "
                    "no double-precision route; rejected"
                )

        def f(t):
            return (
                ktilde_arr(t, x, wedge="zero")
                * (1.0 - np.exp(-2.0 * math.pi * t)) * window.h(t) * t / math.pi**2
            )

    else:

        def f(t):
            jt = jtilde_arr(t, x).imag
            return -(1.0 / math.pi) * jt * 2.0 / (1.0 + np.exp(-2.0 * math.pi * t)) * window.h(t) * t

    if rule == "gauss":
        val, _ = adaptive_gauss(
            f, 0.0, b, rel_tol=rel_tol, abs_tol=abs_tol, start_panels=_osc_panels(window, x)
        )
    elif rule == "simpson":
        val = converge_simpson(
            f, 0.0, b, n0=64 * _osc_panels(window, x), rel_tol=rel_tol, abs_tol=abs_tol
        )
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return val


def tau_generalized(t: float, n: int) -> float:
    """tau_{it}(n) = sum_{ab=n} (a/b)^{it}, real by divisor pairing."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    logn = math.log(n)
    return float(sum(math.cos(t * (2.0 * math.log(d) - logn)) for d in divisors(n)))


def _tau_arr(t: np.ndarray, n: int) -> np.ndarray:
    logn = math.log(n)
    out = np.zeros_like(t)
    for d in divisors(n):
        out += np.cos(t * (2.0 * math.log(d) - logn))
    return out


@dataclass(frozen=True)
class EisensteinTerm:
    value: float
    tail_estimate: float
    t_cut: float


# |zeta(1+2it)|^{-1} <= ZETA_INV_ENVELOPE * log(2+|t|) on desk-scale grids.
ZETA_INV_ENVELOPE = 3.0


def eisenstein_term(window, m: int, n: int, t_cut: float, rule: str = "gauss") -> EisensteinTerm:
    """(1/4 pi) int_{|t|<=t_cut} tau_{it}(m) tau_{it}(n) h(t) / |zeta(1+2it)|^2 dt.

    A symmetric excision around the zeta pole at t = 0 is bridged by Simpson
    with the integrand's limit 0 there (|zeta(1+2it)|^{-2} ~ 4t^2).
    """
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    if t_cut < window.T + 8.0 * window.M:
        raise InsufficientCutoffError(
            f"t_cut={t_cut} below T + 8M = {window.T + 8.0 * window.M}"
        )
    eps = EISENSTEIN_EXCISION

    def f(t):
        z = zeta_one_line_arr(t)
        return _tau_arr(t, m) * _tau_arr(t, n) * window.h(t) / np.abs(z) ** 2

    if rule == "gauss":
        body, _ = adaptive_gauss(f, eps, t_cut, start_panels=max(32, int(t_cut)))
    elif rule == "simpson":
        body = converge_simpson(f, eps, t_cut, n0=max(2048, 8 * int(t_cut)))
    else:
        raise ValueError(f"unknown rule {rule!r}")
    # Simpson across [-eps, eps] with the limit value 0 at t = 0 (even integrand)
    bridge = (eps / 3.0) * 2.0 * float(f(np.array([eps]))[0])
    # crude certified tail: h decay against the log^2 envelope of 1/|zeta|^2
    tt, ww = panel_nodes(t_cut, t_cut + DOMAIN_WIDTH * window.M, 64)
    tail = (
        2.0
        * tau(m)
        * tau(n)
        * ZETA_INV_ENVELOPE**2
        * float(np.dot(ww, np.log(2.0 + tt) ** 2 * window.h(tt)))
    )
    return EisensteinTerm(
        value=(2.0 * body + bridge) / (4.0 * math.pi),
        tail_estimate=tail / (4.0 * math.pi),
        t_cut=t_cut,
    )


# ---------------------------------------------------------------------------
# Geometric (Kloosterman) side

_ENVELOPE_SAFETY = 2.0


@lru_cache(maxsize=32)
def _transform_envelope(T: float, M: float, x_hi: int) -> float:
    """Measured constant A with |H^+-(x)| <= A x for 0 < x <= x_hi.

    A carries a 2x safety factor, so percent-level transform accuracy is
    plenty here (looser tolerances than the report-grade transforms).
    """
    window = GaussianWindow(T=T, M=M)
    grid = [0.05, 0.15, 0.35, 0.7, 1.0]
    x = 1.0
    while x < x_hi:
        x *= 1.5
        grid.append(min(x, float(x_hi)))
    best = 0.0
    for xv in grid:
        best = max(
            best,
            abs(transform_Hpm("plus", window, xv, rel_tol=1e-6, abs_tol=1e-10 * xv)) / xv,
            abs(transform_Hpm("minus", window, xv, rel_tol=1e-6, abs_tol=1e-10 * xv)) / xv,
        )
    return _ENVELOPE_SAFETY * best


def _tau_sum_tail(X: int) -> float:
    """Certified bound on sum_{c > X} tau(c) c^{-3/2} via D(y) <= y(log y + 2)."""
    return 3.0 * (math.log(X) + 4.0) / math.sqrt(X)


@dataclass(frozen=True)
class GeometricSide:
    kloosterman_J: float
    kloosterman_K: float
    tail_bound: float
    c_max: int


def geometric_side(window, m: int, n: int, c_max: int) -> GeometricSide:
    """sum_{c <= c_max} (1/2c)[S(m,n;c) H+(4 pi sqrt(mn)/c) + S(-m,n;c) H-(...)]
    plus a Weil-certified bound on the omitted c > c_max remainder."""
    if c_max < 1:
        raise ValueError(f"c_max must be >= 1, got {c_max}")
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    sqmn = math.sqrt(m * n)
    acc_j = 0.0
    acc_k = 0.0
    for c in range(1, c_max + 1):
        xc = 4.0 * math.pi * sqmn / c
        acc_j += kloosterman(m, n, c) * transform_Hpm("plus", window, xc) / (2.0 * c)
        acc_k += kloosterman(-m, n, c) * transform_Hpm("minus", window, xc) / (2.0 * c)
    x_next = 4.0 * math.pi * sqmn / (c_max + 1)
    A = _transform_envelope(window.T, window.M, max(1, math.ceil(x_next)))
    g = math.gcd(m, n)
    tail = A * 4.0 * math.pi * sqmn * math.sqrt(g) * _tau_sum_tail(c_max)
    return GeometricSide(kloosterman_J=acc_j, kloosterman_K=acc_k, tail_bound=tail, c_max=c_max)


# ---------------------------------------------------------------------------
# Spectral side


def gaussian_weighted_sum(dataset: Dataset, T: float, M: float, values) -> float:
    """sum over forms (ascending tj) of exp(-(tj-T)^2/M^2) nu1sq * value.

    The summation order is pinned here; the moment estimators reuse this
    exact path so the n = 0 moment equals the orthogonality estimator
    bit-for-bit.
    """
    total = 0.0
    for form, v in zip(dataset.forms, values):
        if form.nu1sq is None:
            raise IncompleteDataError(f"form tj={form.tj} has no nu1sq weight")
        total += math.exp(-(((form.tj - T) / M) ** 2)) * form.nu1sq * v
    return total


def _gauss_2t_integral(b: float, center: float, M: float) -> float:
    """int_b^inf exp(-(t-center)^2/M^2) * 2t dt, closed form."""
    beta = (b - center) / M
    return M * M * math.exp(-beta * beta) + math.sqrt(math.pi) * M * center * math.erfc(beta)


def _weyl_outside_mass(window, lo: float, hi: float) -> float:
    """Envelope of the nu1sq-weighted mass of h outside [lo, hi] via the
    quadratic counting law (density 2t/pi^2)."""
    total = 0.0
    for center in (window.T, -window.T):
        upper = _gauss_2t_integral(hi, center, window.M)
        from_zero = _gauss_2t_integral(0.0, center, window.M)
        above_lo = _gauss_2t_integral(lo, center, window.M)
        total += upper + (from_zero - above_lo)
    return total / math.pi**2


def spectral_side(dataset: Dataset, window, m: int, n: int) -> tuple[float, float]:
    """sum' h(tj) nu1sq lambda(m) lambda(n) over forms inside the completeness
    window, plus a truncation bound for the spectrum outside it."""
    if dataset.completeness_window is None:
        raise IncompleteDataError("dataset carries no completeness window")
    lo, hi = dataset.completeness_window
    total = 0.0
    for form in dataset.forms:
        if form.tj < lo or form.tj > hi:
            continue
        if form.nu1sq is None:
            raise IncompleteDataError(f"form tj={form.tj} has no nu1sq weight")
        lam_m = form.hecke.lam(m)
        lam_n = form.hecke.lam(n)
        total += float(window.h(form.tj)) * form.nu1sq * lam_m * lam_n
    ks = (m * n) ** KIM_SARNAK_THETA * tau(m) * tau(n)
    bound = 2.0 * ks * _weyl_outside_mass(window, lo, hi)
    return total, bound


@dataclass(frozen=True)
class TraceReport:
    spectral: float
    eisenstein: float
    delta_term: float
    kloosterman_J: float
    kloosterman_K: float
    tail_bound: float
    spectral_truncation_bound: float
    residual: float


def trace_report(dataset: Dataset, window, m: int, n: int, c_max: int, t_cut: float | None = None) -> TraceReport:
    """Assemble both sides of the trace identity for one (m, n)."""
    if t_cut is None:
        t_cut = window.T + DOMAIN_WIDTH * window.M
    spec, trunc = spectral_side(dataset, window, m, n)
    eis = eisenstein_term(window, m, n, t_cut)
    delta = transform_H(window) if m == n else 0.0
    geo = geometric_side(window, m, n, c_max)
    residual = spec + eis.value - delta - geo.kloosterman_J - geo.kloosterman_K
    return TraceReport(
        spectral=spec,
        eisenstein=eis.value,
        delta_term=delta,
        kloosterman_J=geo.kloosterman_J,
        kloosterman_K=geo.kloosterman_K,
        tail_bound=geo.tail_bound + eis.tail_estimate,
        spectral_truncation_bound=trunc,
        residual=residual,
    )


# ---------------------------------------------------------------------------
# Orthogonality estimator

ORTHO_EPSILON = 0.1


@dataclass(frozen=True)
class OrthogonalityRecord:
    T: float
    M: float
    m: int
    n: int
    empirical: float
    predicted: float
    discrepancy: float
    note: str = "off-prediction discrepancy is O(M T^eps) with unspecified constant"


def orthogonality_estimate(dataset: Dataset, T: float, M: float, m: int, n: int) -> OrthogonalityRecord:
    """Gaussian-weighted pair correlation against the predicted diagonal
    M T delta_{m,n} / (4 pi^{3/2})."""
    if max(m, n) > T ** (1.0 - ORTHO_EPSILON):
        raise ValueError(
            f"max(m, n) = {max(m, n)} violates max <= T^(1-eps) = {T ** (1.0 - ORTHO_EPSILON):.3g}"
        )
    if not dataset.window_covers(T - 8.0 * M, T + 8.0 * M):
        raise IncompleteDataError(
            f"completeness window must cover [{T - 8 * M}, {T + 8 * M}]"
        )
    vals = [form.hecke.lam(m) * form.hecke.lam(n) for form in dataset.forms]
    empirical = gaussian_weighted_sum(dataset, T, M, vals)
    predicted = M * T / (4.0 * math.pi**1.5) if m == n else 0.0
    return OrthogonalityRecord(
        T=T, M=M, m=m, n=n, empirical=empirical, predicted=predicted,
        discrepancy=empirical - predicted,
    )
