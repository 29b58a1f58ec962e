import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ENTROSKETCH_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "entrosketch._kernel",
                    ["src/entrosketch/_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # pure-python fallback is selected at import time
        ext_modules = []

setup(ext_modules=ext_modules)
