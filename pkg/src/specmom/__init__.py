"""specmom: numerical companions to the spectral argument-moment program.

Subpackages cover exact Kloosterman arithmetic, imaginary-order Bessel
evaluation, Hecke-eigenvalue algebra, dataset ingestion, the smoothed
Dirichlet-polynomial approximation, both sides of the trace identity, the
weighted moment estimators, and a self-contained Riemann-zeta ground-truth
lane.
"""

__version__ = "0.1.0"

from .kernels import backend_name

__all__ = ["__version__", "backend_name"]
