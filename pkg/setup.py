"""Builds the optional Cython kernels; the package runs without them."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SIGMAU_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("sigmau._kernels", ["src/sigmau/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
