"""Build script: compiles the optional fast kernel extension when possible.

The package works without the extension (a pure-Python fallback is selected
at import time); the compiled core is what makes the larger enumeration
searches fast.  Build order of preference:

1. Cython present      -> cythonize src/ffgon/_kernels.pyx
2. pre-generated C file -> compile src/ffgon/_kernels.c directly
3. neither / no compiler -> install pure Python only
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


PYX = os.path.join("src", "ffgon", "_kernels.pyx")
C = os.path.join("src", "ffgon", "_kernels.c")


def extensions():
    if os.environ.get("FFGON_NO_EXT"):
        return []
    if os.path.exists(PYX):
        try:
            from Cython.Build import cythonize
            from setuptools import Extension

            return cythonize(
                [Extension("ffgon._kernels", [PYX], extra_compile_args=["-O3"])],
                language_level=3,
            )
        except ImportError:
            pass
    if os.path.exists(C):
        from setuptools import Extension

        return [Extension("ffgon._kernels", [C], extra_compile_args=["-O3"])]
    return []


class OptionalBuildExt(build_ext):
    """Degrade to a pure-Python install if the toolchain is missing."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler: fall back silently
            print(f"ffgon: skipping compiled kernels ({exc}); pure Python fallback in use")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"ffgon: failed to build {ext.name} ({exc}); pure Python fallback in use")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
