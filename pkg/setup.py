from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# numpy implementations in qcollide._kernels_py when the extension is
# missing, so a failed Cython build must not block installation.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "qcollide._speedups",
                sources=["src/qcollide/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
