"""Builds the optional compiled enumeration kernel.

The package works without it: when Cython or a C compiler is missing
the extension is skipped (Extension(optional=True)) and qpgdb.enumcore
falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "qpgdb._enumspeed",
                ["src/qpgdb/_enumspeed.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
