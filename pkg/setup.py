"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension: sputterlab.gp.backend
falls back to the pure-NumPy kernels if the compiled module is missing or
fails to build (e.g. no C compiler on the target machine).
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise install pure-Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, cython missing, ...
            print(f"warning: compiled kernels skipped ({exc}); "
                  "using pure-NumPy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "using pure-NumPy fallback")


def extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "sputterlab.gp._kernels_cy",
        ["src/sputterlab/gp/_kernels_cy.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
