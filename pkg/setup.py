"""Build script for the optional compiled Monte Carlo kernel.

The package is fully functional without the extension: a pure-Python
kernel with identical arithmetic is selected at import time when the
compiled one is absent.  ``-ffp-contract=off`` keeps the compiled kernel
bit-identical to the pure-Python one (no FMA contraction).
"""

from setuptools import setup
from setuptools.extension import Extension


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "ransomgame._kernel",
        ["src/ransomgame/_kernel.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
        optional=True,
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions())
