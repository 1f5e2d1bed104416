"""Build script: compiles the optional fast-kernel extension.

The package works without the extension (a pure-Python fallback with the
same semantics is selected at import time), so the extension is marked
optional and any build failure degrades gracefully.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "matred._speedups",
                ["src/matred/_speedups.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
