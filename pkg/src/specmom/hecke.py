"""Hecke-eigenvalue algebra: extension to all n, Satake parameters, the
Dirichlet coefficients of -L'/L, and Kim-Sarnak certification."""

import math
from dataclasses import dataclass, field

from .arith import is_prime, primes_up_to, tau
from .errors import CapacityError, IncompleteDataError

N_MAX_CAP = 1_000_000

KIM_SARNAK_THETA = 7.0 / 64.0
KIM_SARNAK_TOL = 1e-9


def hecke_extend(prime_values: dict[int, float], N: int) -> dict[int, float]:
    """Extend lambda(p) to all n <= N via the Hecke recursion.

    lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1}), multiplicative
    across coprime factors, lambda(1) = 1.
    """
    if N > N_MAX_CAP:
        raise CapacityError(f"N={N} exceeds dense-table cap {N_MAX_CAP}")
    out = {1: 1.0}
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    for p in primes_up_to(N):
        if p not in prime_values:
            raise IncompleteDataError(f"missing Hecke eigenvalue for prime {p}")
        lam_p = prime_values[p]
        prev, cur = 1.0, lam_p
        q = p
        while q <= N:
            out[q] = cur
            q *= p
            prev, cur = cur, lam_p * cur - prev
    # multiplicative fill in ascending order: smallest prime power factor split
    for n in range(2, N + 1):
        if n in out:
            continue
        p = _smallest_prime_factor(n)
        q = p
        while n % (q * p) == 0:
            q *= p
        out[n] = out[q] * out[n // q]
    return out


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def satake(lambda_p: float) -> complex:
    """alpha with alpha + 1/alpha = lambda(p) and |alpha| >= 1.

    For |lambda| <= 2 the root on the closed upper half circle is returned
    (deterministic tie-break); otherwise the real root with sign matching
    lambda.
    """
    if not math.isfinite(lambda_p):
        raise ValueError(f"lambda(p) must be finite, got {lambda_p}")
    if abs(lambda_p) <= 2.0:
        return complex(lambda_p / 2.0, math.sqrt(max(0.0, 1.0 - (lambda_p / 2.0) ** 2)))
    disc = math.sqrt(lambda_p * lambda_p - 4.0)
    return complex((lambda_p + math.copysign(disc, lambda_p)) / 2.0, 0.0)


@dataclass
class HeckeSystem:
    """Eigenvalue data for one form: prime values plus derived tables."""

    prime_values: dict[int, float]
    extended: dict[int, float] = field(default_factory=dict)
    _satake: dict[int, complex] = field(default_factory=dict, repr=False)

    def extend(self, N: int) -> dict[int, float]:
        if not self.extended or max(self.extended) < N:
            self.extended = hecke_extend(self.prime_values, N)
        return self.extended

    def lam(self, n: int) -> float:
        if n == 1:
            return 1.0
        if n not in self.extended:
            self.extend(n)
        return self.extended[n]

    def alpha(self, p: int) -> complex:
        if p not in self._satake:
            if p not in self.prime_values:
                raise IncompleteDataError(f"missing Hecke eigenvalue for prime {p}")
            self._satake[p] = satake(self.prime_values[p])
        return self._satake[p]

    @property
    def coeff_limit(self) -> int:
        """Largest N with every prime <= N present."""
        if not self.prime_values:
            return 1
        limit = 1
        for p in primes_up_to(max(self.prime_values) + 1):
            if p not in self.prime_values:
                break
            limit = p
        # extendable through the gap up to the next missing prime
        n = limit
        while n + 1 <= N_MAX_CAP and not is_prime(n + 1):
            n += 1
        return n


def cj_coefficient(system: HeckeSystem, p: int, m: int) -> float:
    """Dirichlet coefficient of -L'/L at p^m: alpha^m + alpha^{-m}.

    Computed by the eigenvalue recursion C(p) = lambda(p),
    C(p^r) = lambda(p^r) - lambda(p^{r-2}).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if p not in system.prime_values:
        raise IncompleteDataError(f"missing Hecke eigenvalue for prime {p}")
    if m == 1:
        return system.prime_values[p]
    lam_p = system.prime_values[p]
    prev, cur = 1.0, lam_p  # lambda(p^0), lambda(p^1)
    for _ in range(m - 1):
        prev, cur = cur, lam_p * cur - prev
    # cur = lambda(p^m), prev = lambda(p^{m-1}); need lambda(p^{m-2})
    lam_m2 = lam_p * prev - cur
    return cur - lam_m2


def cj_from_satake(system: HeckeSystem, p: int, m: int) -> float:
    """Independent route: alpha^m + alpha^{-m} from the Satake parameter."""
    a = system.alpha(p)
    val = a**m + a ** (-m)
    return val.real


@dataclass(frozen=True)
class KimSarnakReport:
    n_checked: int
    violations: tuple[tuple[int, float, float], ...]  # (n, |lambda(n)|, bound)

    @property
    def ok(self) -> bool:
        return not self.violations


def kim_sarnak_certify(system: HeckeSystem, N: int) -> KimSarnakReport:
    """List all n <= N with |lambda(n)| > n^{7/64} tau(n) + tolerance."""
    ext = system.extend(N)
    bad = []
    for n in range(1, N + 1):
        bound = n**KIM_SARNAK_THETA * tau(n)
        ln = abs(ext[n])
        if ln > bound + KIM_SARNAK_TOL:
            bad.append((n, ln, bound))
    return KimSarnakReport(n_checked=N, violations=tuple(bad))
