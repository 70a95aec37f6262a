"""Build script: compiles the packed GF(2) elimination kernel when Cython
and a C compiler are available.  The package falls back to a numpy
implementation at import time if the extension is missing, so a failed
build is not fatal."""

import sys

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "diagclass._gf2_native",
                sources=["src/diagclass/_gf2_native.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_9_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover
    print(f"warning: building without native GF(2) kernel ({exc})", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
