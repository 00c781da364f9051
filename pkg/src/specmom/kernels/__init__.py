"""Hot numerical kernels with a compiled core and a NumPy fallback.

The compiled extension (``specmom.kernels._core``, Cython) is preferred when
it has been built; otherwise the pure-NumPy implementation is used.  Setting
the environment variable ``SPECMOM_FORCE_PY=1`` forces the fallback, which is
what the backend-equivalence tests and the benchmark harness rely on.

Both backends implement the same three primitives:

``kloost_sum(m, n, c, units, invs)``
    Compensated cosine sum over primitive residues for one Kloosterman sum.
``rs_mainsum(t, theta, nmax)``
    Riemann-Siegel main sum ``2 sum_{k<=nmax} cos(theta - t log k)/sqrt(k)``
    for a block of ``t`` values sharing one truncation length.
``k_quad_factored(t, x, u, w)``
    Quadrature form ``sum_j w_j exp(-x(cosh u_j - 1)) cos(2 t_i u_j)`` for a
    block of ``t`` values (the exponentially rescaled K-Bessel integral).
"""

import os

from . import pyimpl

_forced = os.environ.get("SPECMOM_FORCE_PY", "") not in ("", "0")

if not _forced:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = pyimpl
        BACKEND = "python"
else:
    _impl = pyimpl
    BACKEND = "python"

kloost_sum = _impl.kloost_sum
rs_mainsum = _impl.rs_mainsum
k_quad_factored = _impl.k_quad_factored


def backend_name() -> str:
    return BACKEND
