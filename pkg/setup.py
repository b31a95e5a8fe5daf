"""Build hook for the optional compiled kernel.

The package works without the extension (pure-Python kernels are selected at
import time); a failed compile must not fail the install.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "infobell._kernels.fast",
                sources=["src/infobell/_kernels/fast.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
