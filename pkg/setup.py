import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SOMPOW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("sompow._accel._core", ["src/sompow/_accel/_core.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: the pure-Python kernels in sompow._accel.fallback
        # are selected automatically at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
