"""Build script for the optional compiled kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a missing Cython or a failed compile should not make the
install fail.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "sumuncert._kernels",
                ["src/sumuncert/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
