from setuptools import Extension, setup

# The compiled kernel is optional: without it the package falls back to the
# numpy-based implementations in epw._kernels_py.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("epw._core", ["src/epw/_core.pyx"], optional=True)],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
