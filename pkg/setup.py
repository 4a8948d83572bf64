"""Build script: compiles the optional speedup extension when Cython is present.

The package is fully functional without the extension (a NumPy/pure-Python
fallback is selected at import time), so a failed or skipped extension build
must never fail the install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "isoloop._speedups",
                ["src/isoloop/_speedups.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
