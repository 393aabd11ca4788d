"""Build script for the optional compiled kernels.

The Cython extension is optional: if Cython or a C compiler is unavailable the
package installs without it and ``mcinv.kernels`` falls back to pure Python.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "mcinv._ckernels",
                ["src/mcinv/_ckernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
