"""Optional compiled-kernel build.

The package is fully functional without the extension (a NumPy fallback is
selected at import time).  Building the extension speeds up the scalar hot
loops:

    python setup.py build_ext --inplace

If Cython or a C compiler is unavailable the build silently degrades to the
pure-Python wheel.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "specmom.kernels._core",
                ["src/specmom/kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
