# Builds the optional compiled kernels; the package works without them.
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ORBITKIT_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("orbitkit._kernels._fastcore",
                       ["src/orbitkit/_kernels/_fastcore.pyx"],
                       extra_compile_args=["-O3", "-ffp-contract=off"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
