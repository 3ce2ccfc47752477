import os

from setuptools import Extension, setup

# The compiled scan kernels are an optional fast path; the package works
# (more slowly) from the pure-Python fallback in epcover._kernels.pure.
# Set EPCOVER_PURE=1 to skip building the extension entirely.
ext_modules = []
if os.environ.get("EPCOVER_PURE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "epcover._core",
                    ["src/epcover/_core.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
