"""Select the kernel implementation at import time.

The compiled extension is used when it was built; set ``ETAPOWERS_PURE_PYTHON=1``
to force the numpy fallback.
"""

import os

from . import _purepy

if os.environ.get("ETAPOWERS_PURE_PYTHON", "") not in ("", "0"):
    kernels = _purepy
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _purepy
        BACKEND = "python"

sparse_convolve_i64 = kernels.sparse_convolve_i64
cornacchia_bulk = kernels.cornacchia_bulk
