"""Pick the kernel implementation once, at import time."""

import os

from qdft import _pykernels

if os.environ.get("QDFT_PURE_PYTHON"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from qdft import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _pykernels
        BACKEND = "python"

hermite_recurrence = kernels.hermite_recurrence
exp_sum = kernels.exp_sum
dft_direct = kernels.dft_direct
