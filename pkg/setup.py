from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qsr/_enum_cy.pyx"],
        language_level=3,
    )
except ImportError:
    # The compiled kernel is optional; the pure-Python fallback is used.
    pass

setup(ext_modules=ext_modules)
