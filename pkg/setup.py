"""Optional compiled build.

When Cython and a C compiler are available, the hot modules are compiled
from their ``.py`` sources, with static types taken from the matching
``.pxd`` files. Without them (or with ``JELLY_PURE_PYTHON=1`` at build time)
the package installs as plain Python and behaves identically, only slower.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext

COMPILED = ["terms", "wire", "encode", "decode", "transcode"]


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, missing headers
            print(f"jelly: compiled build skipped ({exc}); using pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"jelly: could not compile {ext.name} ({exc}); using pure Python", file=sys.stderr)


def extensions():
    if os.environ.get("JELLY_PURE_PYTHON") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    sources = [os.path.join("src", "jelly", f"{name}.py") for name in COMPILED]
    return cythonize(
        sources,
        compiler_directives={"language_level": 3, "annotation_typing": False},
        quiet=True,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
