import sys

from setuptools import setup

# The enumeration kernel is an optional speedup: if Cython or a C compiler
# is unavailable the package installs anyway and falls back to the pure
# Python backend in latloop/_shortvec_py.py.
ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("latloop._shortvec", ["src/latloop/_shortvec.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover
    print(f"latloop: building without compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
