"""Build the optional compiled kernels.

The package works without the extension: gesturelab.kernels falls back to
the numpy implementation when the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("gesturelab._kernels", ["src/gesturelab/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
