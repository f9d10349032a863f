import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# The compiled stepper is optional: if the build fails the package falls
# back to the NumPy reference kernels at import time.
extensions = [
    Extension(
        "frontstab.kernels._core",
        sources=["src/frontstab/kernels/_core.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": "3",
        },
    )
)
