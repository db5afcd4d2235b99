"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a pure-Python
backend is selected at import time); building it just makes the per-sample
hot paths faster. ``-ffp-contract=off`` keeps the compiled arithmetic
bit-identical to the pure backend so either one can be active.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "skyshot.kernels._fast",
                ["src/skyshot/kernels/_fast.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
