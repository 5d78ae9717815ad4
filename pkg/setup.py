"""Builds the compiled per-pixel kernels.

The package works without the extension (a NumPy fallback is selected at
import time), but the compiled core is what meets the real-time throughput
target. Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "relight._kernels",
                ["src/relight/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
