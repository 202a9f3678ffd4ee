import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "latgen._fastpath",
                ["src/latgen/_fastpath.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # The package works without the compiled core; latgen._kernels falls
    # back to the numpy implementation at import time.
    extensions = []

setup(ext_modules=extensions)
