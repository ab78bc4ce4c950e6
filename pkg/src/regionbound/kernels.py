"""Kernel selection: compiled extension when available, pure Python otherwise.

Set REGIONBOUND_PURE=1 to force the pure-Python kernels.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("REGIONBOUND_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

IMPLEMENTATION: str = _impl.IMPLEMENTATION
mat_vec = _impl.mat_vec
mat_mat = _impl.mat_mat
column_sums = _impl.column_sums
