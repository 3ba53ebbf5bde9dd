"""Build script: compiles the optional term-arithmetic extension.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so any
failure to cythonize or compile downgrades to a source-only install
instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lcacohom/_poly_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"lcacohom: skipping compiled kernels ({exc!r}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
