"""Exact integer arithmetic: primes, von Mangoldt, divisors, Kloosterman sums.

Kloosterman sums are evaluated as real cosine sums over primitive residues
(the imaginary parts cancel under a <-> c-a pairing), with modular inverses
from the extended Euclidean algorithm and compensated summation for large
moduli.  Arguments are reduced mod c and ordered, so S(m,n;c) = S(n,m;c)
holds bit-for-bit.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import CapacityError

# Largest modulus accepted by kloosterman(); the O(c) unit tables above this
# point stop being desk-scale objects.
KLOOSTERMAN_C_LIMIT = 5_000_000


def sieve(limit: int) -> np.ndarray:
    """Boolean primality array of length limit+1."""
    if limit < 1:
        return np.zeros(max(limit + 1, 1), dtype=bool)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(limit: int) -> list[int]:
    return [int(p) for p in np.nonzero(sieve(limit))[0]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def von_mangoldt(n: int) -> float:
    """log p if n is a prime power p^m, else 0."""
    if n < 1:
        raise ValueError(f"von_mangoldt requires n >= 1, got {n}")
    if n == 1:
        return 0.0
    # strip the smallest prime factor and check n is a pure power of it
    p = 0
    m = n
    if m % 2 == 0:
        p = 2
    else:
        f = 3
        while f * f <= m:
            if m % f == 0:
                p = f
                break
            f += 2
        else:
            return math.log(m)  # n itself prime
    while m % p == 0:
        m //= p
    if m == 1:
        return math.log(p)
    return 0.0


def tau(n: int) -> int:
    """Number of divisors."""
    if n < 1:
        raise ValueError(f"tau requires n >= 1, got {n}")
    count = 1
    m = n
    for p in range(2, int(n**0.5) + 2):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            count *= e + 1
    if m > 1:
        count *= 2
    return count


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


@dataclass(frozen=True)
class PrimeTable:
    """Primes and von Mangoldt values up to a limit."""

    limit: int
    primes: tuple[int, ...]
    mangoldt: dict[int, float]

    @classmethod
    def build(cls, limit: int) -> "PrimeTable":
        ps = primes_up_to(limit)
        mang: dict[int, float] = {}
        for p in ps:
            q = p
            lp = math.log(p)
            while q <= limit:
                mang[q] = lp
                q *= p
        return cls(limit=limit, primes=tuple(ps), mangoldt=mang)


def gcd3(m: int, n: int, c: int) -> int:
    """gcd of |m|, |n|, c with the gcd(0, k) = k convention."""
    return math.gcd(math.gcd(abs(m), abs(n)), c)


def modinv(a: int, c: int) -> int:
    """Inverse of a mod c by the extended Euclidean algorithm."""
    r0, r1 = a % c, c
    s0, s1 = 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ValueError(f"{a} is not invertible mod {c}")
    return s0 % c


@lru_cache(maxsize=256)
def _unit_tables(c: int) -> tuple[np.ndarray, np.ndarray]:
    """Units mod c and their inverses, ascending, as int64 arrays."""
    if c == 1:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    mask = np.array([math.gcd(a, c) == 1 for a in range(c)], dtype=bool)
    units = np.nonzero(mask)[0].astype(np.int64)
    invs = np.array([modinv(int(a), c) for a in units], dtype=np.int64)
    return units, invs


def kloosterman(m: int, n: int, c: int) -> float:
    """S(m, n; c) = sum over primitive a mod c of e((ma + n*abar)/c).

    Real-valued; negative m/n are fine.  Inputs are reduced mod c and sorted
    so the m <-> n symmetry is exact.
    """
    if c < 1:
        raise ValueError(f"modulus must be positive, got c={c}")
    if c > KLOOSTERMAN_C_LIMIT:
        raise CapacityError(f"c={c} exceeds configured limit {KLOOSTERMAN_C_LIMIT}")
    if c == 1:
        return 1.0
    mr, nr = sorted((m % c, n % c))
    units, invs = _unit_tables(c)
    return kernels.kloost_sum(mr, nr, c, units, invs)


@dataclass(frozen=True)
class KloostermanResult:
    value: float
    c: int
    weil_bound: float
    certified: bool


WEIL_TOL = 1e-9


def weil_certify(m: int, n: int, c: int) -> KloostermanResult:
    """Evaluate S(m,n;c) and check it against (m,n,c)^(1/2) c^(1/2) tau(c)."""
    value = kloosterman(m, n, c)
    bound = math.sqrt(gcd3(m, n, c)) * math.sqrt(c) * tau(c)
    return KloostermanResult(
        value=value, c=c, weil_bound=bound, certified=abs(value) <= bound + WEIL_TOL
    )
