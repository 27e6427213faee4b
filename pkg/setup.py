"""Build script: compiles the optional Cython propagation core.

The extension is a pure speed-up; if the toolchain is unavailable the
package installs anyway and falls back to the NumPy kernels at import time.
"""
import warnings

import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Skip the extension (with a warning) instead of failing the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or toolchain missing
            warnings.warn(f"compiled kernels skipped: {exc}", stacklevel=1)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed, using the pure-Python "
                          f"kernels instead: {exc}", stacklevel=1)


extensions = [
    Extension(
        "heliumq._kernels._core",
        ["src/heliumq/_kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
except ImportError:
    warnings.warn("Cython not available; installing with pure-Python kernels only")
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
