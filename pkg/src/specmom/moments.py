"""Gaussian-weighted moments of the argument proxy, the empirical measure
with its Gaussian-distance statistic, and the exhaustive case enumeration
for the diagonal combinatorics of the moment expansion.

The proxy for the argument statistic defaults to the smoothed Dirichlet
polynomial (s_approx main term, GRH-default abscissa); the bare prime
polynomial m_poly is available as the lighter alternative.  Direct
evaluation of the L-functions themselves is out of scope.
"""

import math
from dataclasses import dataclass

from .dirichlet_poly import X_MIN, m_poly, s_approx
from .errors import CapacityError, IncompleteDataError
from .maass_data import Dataset
from .trace import gaussian_weighted_sum

TALLY_N_MAX = 8
TALLY_PRIMES_MAX = 6

# x = T^(delta/3) with this delta unless overridden (floored at X_MIN)
DEFAULT_DELTA = 0.05

E_E = math.exp(math.e)


def default_x(T: float, delta: float = DEFAULT_DELTA) -> float:
    return max(X_MIN, T ** (delta / 3.0))


def c_n(n: int) -> float:
    """Gaussian moment constants: n!/((n/2)! (2 pi)^n) for even n, else 0."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n % 2:
        return 0.0
    return math.factorial(n) / (math.factorial(n // 2) * (2.0 * math.pi) ** n)


def predicted_main(T: float, M: float, n: int) -> float:
    """(M T / 4 pi^{3/2}) C_n (log log T)^{n/2}."""
    if T <= E_E:
        raise ValueError(f"T must exceed e^e ~ 15.154, got {T}")
    if M <= 0:
        raise ValueError(f"M must be positive, got {M}")
    return M * T / (4.0 * math.pi**1.5) * c_n(n) * math.log(math.log(T)) ** (n / 2.0)


def _proxy_values(dataset: Dataset, t: float, x: float, proxy: str) -> list[float]:
    if proxy == "s_approx":
        return [s_approx(f, t, x).main for f in dataset.forms]
    if proxy == "m_poly":
        return [m_poly(f, t, x) for f in dataset.forms]
    raise ValueError(f"unknown proxy {proxy!r}")


@dataclass(frozen=True)
class MomentReport:
    n: int
    empirical: float
    predicted_main: float
    prediction_params: tuple[float, float, float, float]  # (T, M, t, x)
    proxy: str
    error_annotation: str = (
        "prediction error term O_{t,n}(MT (log log T)^{(n-1)/2}) carries an "
        "unspecified constant; not asserted"
    )


def weighted_moment(
    dataset: Dataset, T: float, M: float, t: float, x: float, n: int, proxy: str = "s_approx"
) -> MomentReport:
    """Gaussian-weighted empirical n-th moment of the proxy statistic."""
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not dataset.window_covers(T - 8.0 * M, T + 8.0 * M):
        raise IncompleteDataError(f"completeness window must cover [{T - 8 * M}, {T + 8 * M}]")
    dataset.require_nu1sq()
    if n == 0:
        vals = [1.0 for _ in dataset.forms]
    else:
        vals = [v**n for v in _proxy_values(dataset, t, x, proxy)]
    empirical = gaussian_weighted_sum(dataset, T, M, vals)
    return MomentReport(
        n=n,
        empirical=empirical,
        predicted_main=predicted_main(T, M, n),
        prediction_params=(T, M, t, x),
        proxy=proxy,
    )


def gaussian_cdf(s: float) -> float:
    """CDF of the limiting normal with mean 0 and variance 1/(2 pi^2)."""
    return 0.5 * (1.0 + math.erf(math.pi * s))


@dataclass(frozen=True)
class MeasureResult:
    samples: tuple[float, ...]
    weights: tuple[float, ...]
    gaussian_distance: float


def empirical_measure(
    dataset: Dataset, T: float, M: float, t: float, proxy: str = "s_approx", x: float | None = None
) -> MeasureResult:
    """Weighted samples of proxy/sqrt(log log T) over |tj - T| <= M, plus the
    sup distance between the weighted empirical CDF and the limit CDF."""
    if T <= E_E:
        raise ValueError(f"T must exceed e^e ~ 15.154, got {T}")
    if x is None:
        x = default_x(T)
    selected = [f for f in dataset.forms if abs(f.tj - T) <= M]
    if not selected:
        raise ValueError(f"no forms with |tj - {T}| <= {M}")
    sub = Dataset(forms=selected, completeness_window=dataset.completeness_window)
    sub.require_nu1sq()
    norm = math.sqrt(math.log(math.log(T)))
    raw = _proxy_values(sub, t, x, proxy)
    samples = [v / norm for v in raw]
    weights = [f.nu1sq for f in selected]
    return MeasureResult(
        samples=tuple(samples),
        weights=tuple(weights),
        gaussian_distance=weighted_cdf_distance(samples, weights),
    )


def weighted_cdf_distance(samples, weights) -> float:
    """sup over sample points of |weighted empirical CDF - limit CDF|.

    Invariant under global weight scaling and sample permutation (ties are
    grouped and summed exactly).
    """
    if len(samples) != len(weights) or not samples:
        raise ValueError("need equally many samples and weights, at least one")
    groups: dict[float, list[float]] = {}
    for s, w in zip(samples, weights):
        groups.setdefault(float(s), []).append(float(w))
    points = sorted(groups)
    masses = [math.fsum(groups[s]) for s in points]
    total = math.fsum(masses)
    if total <= 0:
        raise ValueError("total weight must be positive")
    dist = 0.0
    below = 0.0
    for s, mass in zip(points, masses):
        phi = gaussian_cdf(s)
        dist = max(dist, abs(below / total - phi))
        below += mass
        dist = max(dist, abs(below / total - phi))
    return dist


# ---------------------------------------------------------------------------
# Case enumeration for the moment combinatorics


def hecke_power_coeffs(e: int) -> list[int]:
    """Coefficients of lambda(p)^e in the lambda(p^k) basis, k = 0..e.

    Uses lambda(p) lambda(p^k) = lambda(p^{k+1}) + lambda(p^{k-1}).
    """
    coeffs = [1]  # lambda(p)^0 = lambda(1)
    for _ in range(e):
        nxt = [0] * (len(coeffs) + 1)
        for k, a in enumerate(coeffs):
            if a == 0:
                continue
            nxt[k + 1] += a
            if k >= 1:
                nxt[k - 1] += a
        coeffs = nxt
    return coeffs


@dataclass(frozen=True)
class CaseTally:
    counts: dict[str, int]  # 'I','II','III','IV' -> weighted tuple count
    case_iv_coefficient: float
    total_tuples: int


def _compositions(total: int, cells: int):
    """All ways to place `total` into `cells` ordered nonnegative slots."""
    if cells == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, cells - 1):
            yield (first,) + rest


def general_term_tally(primes: list[int], n: int) -> CaseTally:
    """Exhaustively enumerate the n-fold products of signed prime terms,
    grouped by exponent vectors, and classify them into diagonal cases.

    Case I:   some prime has exponents of opposite parity (no diagonal);
    Case II:  matched parity with some total exponent >= 4;
    Case III: all totals equal 2 with some one-sided pair;
    Case IV:  every prime appears once on each side -- the diagonal terms,
              whose collected coefficient is returned.
    """
    if n < 1 or n > TALLY_N_MAX:
        raise CapacityError(f"n must be in [1, {TALLY_N_MAX}], got {n}")
    if not primes or len(primes) > TALLY_PRIMES_MAX:
        raise CapacityError(f"need 1..{TALLY_PRIMES_MAX} primes, got {len(primes)}")
    primes = sorted(primes)
    r = len(primes)
    counts = {"I": 0, "II": 0, "III": 0, "IV": 0}
    coef = 0.0
    for comp in _compositions(n, 2 * r):
        mult = math.factorial(n)
        for e in comp:
            mult //= math.factorial(e)
        mv = comp[0::2]  # exponents on the p^{-1/2-it} side
        nv = comp[1::2]  # exponents on the p^{-1/2+it} side
        case = _classify(mv, nv)
        counts[case] += mult
        if case == "IV":
            prod = 1.0
            for p, a in zip(primes, mv):
                if a:
                    prod *= p
            coef += mult / (2.0 * math.pi) ** n / prod
    return CaseTally(counts=counts, case_iv_coefficient=coef, total_tuples=(2 * r) ** n)


def _classify(mv, nv) -> str:
    active = [(a, b) for a, b in zip(mv, nv) if a + b > 0]
    if any((a - b) % 2 for a, b in active):
        return "I"
    if any(a + b >= 4 for a, b in active):
        return "II"
    if any(a == 2 or b == 2 for a, b in active):
        return "III"
    return "IV"
