"""Builds the optional Cython chain kernel.

The package works without it: ``emergent.kernels`` falls back to the
pure-Python implementation when the extension is missing.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "emergent._ckernels",
                ["src/emergent/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
