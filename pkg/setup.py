"""Build shim: compiles the optional derivation kernel when Cython and a C
compiler are available, otherwise installs the pure-Python package unchanged.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            "src/cha2/selfies_codec/_derive_cy.pyx",
        ],
        language_level=3,
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    include_dirs = []

setup(
    ext_modules=ext_modules,
    include_dirs=include_dirs,
)
