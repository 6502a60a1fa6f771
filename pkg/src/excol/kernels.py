"""Select the compiled sweep kernel when available, else the numpy fallback.

Set EXCOL_FORCE_PYTHON=1 to skip the compiled extension (used by the
benchmark and by tests that compare both lanes).
"""

import os

from . import _sweep_np

if os.environ.get("EXCOL_FORCE_PYTHON"):
    count_support_masks = _sweep_np.count_support_masks
    BACKEND = "numpy"
else:
    try:
        from ._sweep_cy import count_support_masks

        BACKEND = "cython"
    except ImportError:
        count_support_masks = _sweep_np.count_support_masks
        BACKEND = "numpy"
