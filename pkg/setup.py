"""Build script: compiles the optional fast kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import time), so any failure to cythonize or compile is
downgraded to a warning rather than aborting the install.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "rainbowforge._fastkernels",
                ["src/rainbowforge/_fastkernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001 - best effort, fallback exists
    warnings.warn(f"building without compiled kernels: {exc}")

setup(ext_modules=ext_modules)
