"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so the extension is marked optional and any build failure
degrades to the pure lane instead of breaking the install.  Set
MINIDISK_NO_EXT=1 to skip the compile entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MINIDISK_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "minidisk._kernels._core",
            ["src/minidisk/_kernels/_core.pyx"],
            extra_compile_args=["-O3"],
            optional=True,
        )
        ext_modules = cythonize([ext], language_level=3)
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
