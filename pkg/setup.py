import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("STCENSUS_SKIP_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "stcensus._kernels",
                ["src/stcensus/_kernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
