"""Build script: compiles the traversal kernels when Cython and a C
compiler are available, otherwise installs the pure-Python fallback only.

Force the fallback with COREMAINT_PURE_PYTHON=1.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension instead of failing the whole install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building the compiled kernels failed ({exc}); "
            "falling back to the pure-Python implementation",
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if os.environ.get("COREMAINT_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "coremaint._kernels_c",
                    ["src/coremaint/_kernels_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "initializedcheck": False,
                "cdivision": True,
            },
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass=cmdclass)
