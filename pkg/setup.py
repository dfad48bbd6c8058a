import os

from setuptools import Extension, setup

# Set SEALTE_NO_EXT=1 to install the pure-Python fallback only.
ext_modules = []
if not os.environ.get("SEALTE_NO_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("sealte._maxmin_ext", ["src/sealte/_maxmin_ext.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
