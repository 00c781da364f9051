"""Smoothed von Mangoldt weights, the adaptive abscissa sigma_x, the short
prime Dirichlet polynomial, and the smoothed approximation of the argument
statistic with its reported error budget.

The error fields of SApprox are the bracketed quantities of the underlying
bound; the absolute constants in front of them are unspecified, so they are
reported, never added to the main term.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import sieve, von_mangoldt
from .errors import IncompleteDataError
from .maass_data import MaassForm

X_MIN = 4.0


def lambda_x(n: int, x: float) -> float:
    """Piecewise-smoothed von Mangoldt weight supported on n < x^3."""
    if x < X_MIN:
        raise ValueError(f"x must be >= {X_MIN}, got {x}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lam = von_mangoldt(n)
    if lam == 0.0:
        return 0.0
    if n <= x:
        return lam
    x3 = x**3
    if n >= x3:
        return 0.0
    logn = math.log(n)
    logx = math.log(x)
    if n <= x * x:
        f = ((3 * logx - logn) ** 2 - 2.0 * (2 * logx - logn) ** 2) / (2.0 * logx * logx)
    else:
        f = (3 * logx - logn) ** 2 / (2.0 * logx * logx)
    return lam * f


@dataclass(frozen=True)
class SmoothingContext:
    """Cached Lambda_x weights over the prime powers up to x^3.

    Alongside the weight map the context carries flat arrays (ascending in n)
    so the Dirichlet sums vectorize: n, the index of the underlying prime,
    the power, the weight, and log n.
    """

    x: float
    cutoff: int  # floor(x^3)
    weights: dict[int, float]  # prime power n -> Lambda_x(n)
    prime_powers: tuple[tuple[int, int, int], ...]  # (n, p, m) ascending in n
    primes: tuple[int, ...] = ()
    sigma_policy: str = "grh_default"
    arrays: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def build(cls, x: float) -> "SmoothingContext":
        if x < X_MIN:
            raise ValueError(f"x must be >= {X_MIN}, got {x}")
        cutoff = int(x**3)
        flags = sieve(cutoff)
        primes = [int(p) for p in np.nonzero(flags)[0]]
        index = {p: i for i, p in enumerate(primes)}
        pps = []
        for p in primes:
            q, m = p, 1
            while q <= cutoff:
                pps.append((q, p, m))
                q *= p
                m += 1
        pps.sort()
        weights = {n: lambda_x(n, x) for (n, _, _) in pps}
        arrays = {
            "n": np.array([n for n, _, _ in pps], dtype=np.int64),
            "p_idx": np.array([index[p] for _, p, _ in pps], dtype=np.int64),
            "m": np.array([m for _, _, m in pps], dtype=np.int64),
            "w": np.array([weights[n] for n, _, _ in pps]),
            "logn": np.log(np.array([n for n, _, _ in pps], dtype=float)),
        }
        return cls(
            x=x, cutoff=cutoff, weights=weights, prime_powers=tuple(pps),
            primes=tuple(primes), arrays=arrays,
        )


@lru_cache(maxsize=16)
def _context(x: float) -> SmoothingContext:
    return SmoothingContext.build(x)


@dataclass(frozen=True)
class SigmaX:
    value: float
    policy: str  # 'grh_default' | 'from_zeros'
    fallback: bool = False  # from_zeros requested but no zero data supplied


def sigma_x(t: float, x: float, zeros=None) -> SigmaX:
    """Adaptive abscissa 1/2 + 2 max(|beta - 1/2|, 5/log x).

    ``zeros`` is an optional list of (beta, gamma) pairs; only zeros with
    |t - gamma| <= x^{3|beta-1/2|}/log x participate.  With no zero list the
    GRH default 1/2 + 10/log x applies; an explicitly empty list falls back
    to the default with the fallback flag set.
    """
    if x < X_MIN:
        raise ValueError(f"x must be >= {X_MIN}, got {x}")
    logx = math.log(x)
    grh = 0.5 + 10.0 / logx
    if zeros is None:
        return SigmaX(value=grh, policy="grh_default")
    if len(zeros) == 0:
        return SigmaX(value=grh, policy="from_zeros", fallback=True)
    best = 5.0 / logx
    for beta, gamma in zeros:
        dev = abs(beta - 0.5)
        if abs(t - gamma) <= x ** (3.0 * dev) / logx:
            best = max(best, dev)
    return SigmaX(value=0.5 + 2.0 * best, policy="from_zeros")


def _lambda_prime_vector(ctx: SmoothingContext, form: MaassForm) -> np.ndarray:
    pv = form.hecke.prime_values
    out = np.empty(len(ctx.primes))
    for i, p in enumerate(ctx.primes):
        if p not in pv:
            raise IncompleteDataError(f"missing Hecke eigenvalue for prime {p}")
        out[i] = pv[p]
    return out


def _cj_vector(ctx: SmoothingContext, form: MaassForm) -> np.ndarray:
    """C(p^m) = lambda(p^m) - lambda(p^{m-2}) on the context's prime powers,
    by the vectorized eigenvalue recursion over power levels."""
    lam1 = _lambda_prime_vector(ctx, form)
    a = ctx.arrays
    out = np.empty(len(a["n"]))
    mmax = int(a["m"].max())
    lam_prev = np.ones_like(lam1)  # lambda(p^0)
    lam_cur = lam1.copy()  # lambda(p^1)
    lam_prev2 = None  # lambda(p^{m-2})
    for m in range(1, mmax + 1):
        sel = a["m"] == m
        if m == 1:
            out[sel] = lam1[a["p_idx"][sel]]
        else:
            cvals = lam_cur - lam_prev2
            out[sel] = cvals[a["p_idx"][sel]]
        lam_prev2 = lam_prev
        lam_prev, lam_cur = lam_cur, lam1 * lam_cur - lam_prev
    return out


def m_poly(form: MaassForm, t: float, x: float) -> float:
    """Short Dirichlet polynomial (1/pi) Im sum_{p <= x^3} lambda(p) p^{-1/2-it}."""
    ctx = _context(x)
    a = ctx.arrays
    sel = a["m"] == 1
    lam = _lambda_prime_vector(ctx, form)[a["p_idx"][sel]]
    logp = a["logn"][sel]
    total = -float(np.sum(lam * np.sin(t * logp) * np.exp(-0.5 * logp)))
    return total / math.pi


@dataclass(frozen=True)
class SApprox:
    main: float
    err_poly: float
    err_log: float
    sigma_x_used: float


def s_approx(form: MaassForm, t: float, x: float, zeros=None) -> SApprox:
    """Smoothed Dirichlet-polynomial approximation of the argument statistic.

    main    = (1/pi) Im sum_{n <= x^3} C(n) Lambda_x(n) / (n^{sigma+it} log n)
    err_poly = (sigma - 1/2) |sum_{n <= x^3} C(n) Lambda_x(n) n^{-sigma-it}|
    err_log  = (sigma - 1/2) log(|t| + tj + 1)

    Sums run over prime powers only (the coefficients vanish elsewhere).
    """
    if t == 0.0:
        raise ValueError("t = 0 not allowed (approximation requires t != 0)")
    ctx = _context(x)
    sig = sigma_x(t, x, zeros)
    s = sig.value
    a = ctx.arrays
    c = _cj_vector(ctx, form)
    logn = a["logn"]
    cw = c * a["w"]
    decay = np.exp(-s * logn)
    re = np.cos(t * logn)
    im = -np.sin(t * logn)
    main_im = float(np.sum(cw / logn * decay * im))
    poly_re = float(np.sum(cw * decay * re))
    poly_im = float(np.sum(cw * decay * im))
    return SApprox(
        main=main_im / math.pi,
        err_poly=(s - 0.5) * math.hypot(poly_re, poly_im),
        err_log=(s - 0.5) * math.log(abs(t) + form.tj + 1.0),
        sigma_x_used=s,
    )
