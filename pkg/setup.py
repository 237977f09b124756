"""Build script for the compiled kernel module.

The package works without the extension (pure-Python kernels take over),
so any build failure here should not be fatal for `pip install`. Set
HALLLAB_SKIP_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("HALLLAB_SKIP_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext = Extension(
            "halllab._speedups",
            sources=["src/halllab/_speedups.pyx"],
            include_dirs=[numpy.get_include()],
            extra_compile_args=["-O3"],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )
        ext_modules = cythonize(
            [ext],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
