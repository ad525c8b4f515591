from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "dybe._ckernels",
        ["src/dybe/_ckernels.pyx"],
        extra_compile_args=["-O2"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
