from setuptools import setup

# The compiled kernel is an optional speedup: if Cython (or a C compiler) is
# unavailable the package still installs and falls back to the pure-Python
# kernel at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/electiongame/_kernel.pyx"],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
