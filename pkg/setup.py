from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("stopset._accel", ["src/stopset/_accel.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

# The compiled core is optional: stopset.kernels falls back to the pure
# Python implementation when the extension is absent.
setup(ext_modules=ext_modules)
