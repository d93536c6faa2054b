"""Build the optional compiled table checker.

Without Cython or a C compiler the package installs as pure Python and
``collectives._kernels`` falls back to the interpreted implementation.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "collectives._kernels._tablecheck",
                ["src/collectives/_kernels/_tablecheck.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
