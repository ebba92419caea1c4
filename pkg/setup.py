"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python fallback is
selected at import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("rqwork._backend._kernels",
                   ["src/rqwork/_backend/_kernels.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"rqwork: skipping compiled kernel ({exc})")

setup(ext_modules=ext_modules)
