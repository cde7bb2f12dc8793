"""Build script: compiles the optional C kernel extension when Cython is available.

Set PERMWIT_PURE_PYTHON=1 to skip the extension entirely; the package then
runs on the pure-Python kernels.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PERMWIT_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("permwit._kernels_c", ["src/permwit/_kernels_c.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
