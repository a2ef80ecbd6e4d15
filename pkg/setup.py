from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; infogeo._fallback takes over
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("infogeo._kernels", ["src/infogeo/_kernels.pyx"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
