"""Build hook: compile the optional scan-kernel extension when Cython is around.

The package is fully functional without it; `recolor._kernels` falls back to
the pure-Python twin at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/recolor/_kernels/_scan_c.pyx"],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
