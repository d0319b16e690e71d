"""Kernel backend selection.

The compiled extension is used when it imported cleanly; otherwise the
numpy implementation takes over. Set GESTURELAB_FORCE_PYTHON_KERNELS=1 to
force the fallback (used by the benchmark and the cross-backend tests).
"""

from __future__ import annotations

import os

from gesturelab import _kernels_py

if os.environ.get("GESTURELAB_FORCE_PYTHON_KERNELS"):
    _impl = _kernels_py
else:
    try:
        from gesturelab import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
dtw_pair = _impl.dtw_pair
local_cost_matrix = _impl.local_cost_matrix
