import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the numpy kernels
    cythonize = None

ext_modules = []
if cythonize is not None and os.environ.get("QORDER_PURE") != "1":
    ext_modules = cythonize(
        [
            Extension(
                "qorder.kernels._ckernels",
                ["src/qorder/kernels/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
