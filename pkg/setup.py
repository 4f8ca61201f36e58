"""Build script for the optional compiled kernel module.

The package works without the extension (a NumPy fallback is selected at
import time), so a missing Cython or C compiler is not fatal: we just skip
the extension and install the pure-Python package.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [Extension("listdec._kernels", ["src/listdec/_kernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
