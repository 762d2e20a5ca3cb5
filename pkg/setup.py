"""Build script: compiles the optional monomial kernel when possible.

The extension is a pure accelerator; any build failure (missing Cython,
missing compiler) downgrades to the Python fallback with a warning and
the install still succeeds.  Set QTOROIDAL_NO_EXT=1 to skip the attempt.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extension_modules():
    if os.environ.get("QTOROIDAL_NO_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        print("qtoroidal: Cython not available; using the pure-Python "
              "kernel", file=sys.stderr)
        return []
    return cythonize(
        [Extension("qtoroidal._kernel._speedups",
                   ["src/qtoroidal/_kernel/_speedups.pyx"])],
        language_level="3")


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print("qtoroidal: extension build skipped (%s); using the "
                  "pure-Python kernel" % exc, file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print("qtoroidal: building %s failed (%s); using the "
                  "pure-Python kernel" % (ext.name, exc), file=sys.stderr)


setup(ext_modules=extension_modules(),
      cmdclass={"build_ext": OptionalBuildExt})
