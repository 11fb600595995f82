"""Build script: compiles the optional Cython fast path.

The extension is marked optional; if Cython or a C compiler is missing the
package installs anyway and falls back to the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "wlaudit._ckernels",
                sources=["src/wlaudit/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

for ext in extensions:
    ext.optional = True

setup(ext_modules=extensions)
