import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "bloodfv._kernels_c",
                ["src/bloodfv/_kernels_c.pyx"],
                include_dirs=[numpy.get_include()],
                # keep strict IEEE semantics so the compiled kernels agree
                # bit-for-bit with the numpy fallback
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
