import sys

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # the numpy fallback in qdft._pykernels is used instead
    ext_modules = []
else:
    # plain complex multiply; the Annex G inf/nan fix-ups cost a call per product
    flags = [] if sys.platform == "win32" else ["-O3", "-fcx-limited-range"]
    ext_modules = cythonize(
        [Extension("qdft._ckernels", ["src/qdft/_ckernels.pyx"],
                   include_dirs=[np.get_include()],
                   define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                   extra_compile_args=flags)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
