"""Kernel backend selection.

Prefers the compiled extension (qcollide._speedups) and falls back to the
pure numpy kernels when it is unavailable.  Set QCOLLIDE_PURE_PYTHON=1 to
force the fallback, e.g. for benchmarking or debugging.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QCOLLIDE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

collision_trajectory = _impl.collision_trajectory
rk4_propagate = _impl.rk4_propagate
