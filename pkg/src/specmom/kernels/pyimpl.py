"""NumPy implementations of the hot kernels (fallback backend)."""

import math

import numpy as np

# Above this modulus the cosine sum switches to exactly rounded summation so
# the 1e-9 oracle tolerance stays attainable.
_FSUM_THRESHOLD = 10_000


def kloost_sum(m: int, n: int, c: int, units: np.ndarray, invs: np.ndarray) -> float:
    """Sum of cos(2*pi*(m*a + n*abar)/c) over primitive residues a mod c.

    ``units`` and ``invs`` are matching int64 arrays of the units mod c and
    their modular inverses.
    """
    if c == 1:
        return 1.0
    r = (m * units + n * invs) % c
    theta = r * (2.0 * math.pi / c)
    vals = np.cos(theta)
    if c > _FSUM_THRESHOLD:
        return math.fsum(vals)
    return float(np.sum(vals))


def rs_mainsum(t: np.ndarray, theta: np.ndarray, nmax: int) -> np.ndarray:
    """Riemann-Siegel main sum for a block of t sharing truncation nmax."""
    out = np.zeros_like(t)
    for k in range(1, nmax + 1):
        out += math.pow(k, -0.5) * np.cos(theta - t * math.log(k))
    return 2.0 * out


def k_quad_factored(t: np.ndarray, x: float, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """sum_j w_j exp(-x(cosh u_j - 1)) cos(2 t_i u_j) for each t_i."""
    damp = w * np.exp(-x * (np.cosh(u) - 1.0))
    return np.cos(2.0 * np.outer(t, u)) @ damp
