"""Kernel backend selection: compiled extension if available, NumPy otherwise.

Set ``SPUTTERLAB_PURE_PYTHON=1`` to force the NumPy fallback (used by the
backend benchmark and by tests that compare the two implementations).
Per-run determinism holds within a backend; the two backends agree to a
few ulp but are not guaranteed bit-identical.
"""

from __future__ import annotations

import os

from . import _kernels_np

if os.environ.get("SPUTTERLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_np
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_np

BACKEND_NAME: str = _impl.BACKEND_NAME
matern52_cross = _impl.matern52_cross
matern52_train = _impl.matern52_train
