import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("NPCSOURCE_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "npcsource._kernels",
                ["src/npcsource/_kernels.pyx"],
                extra_compile_args=["-O3"],
                # a failed compile falls back to the numpy kernels
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
