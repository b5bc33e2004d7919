from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension("toric_split._ckernels", ["src/toric_split/_ckernels.pyx"])

setup(ext_modules=cythonize([ext], compiler_directives={"language_level": "3"}))
