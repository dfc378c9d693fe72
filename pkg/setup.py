"""Build script for the optional compiled reduction kernel.

The package is pure Python except for one Cython extension holding the
boundary-matrix reduction inner loop.  If the extension cannot be built the
install still succeeds and the package falls back to the pure-Python kernel
at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext = Extension(
        "dowker._reduction_cy",
        ["src/dowker/_reduction_cy.pyx"],
        include_dirs=[numpy.get_include()],
        language="c++",
        optional=True,
    )
    ext_modules = cythonize([ext], language_level="3")
except ImportError:
    pass

setup(ext_modules=ext_modules)
