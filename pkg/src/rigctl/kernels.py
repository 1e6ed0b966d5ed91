"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``RIGCTL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("RIGCTL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND: str = _impl.NAME
route = _impl.route
can_add_edge = _impl.can_add_edge
rank_mod = _impl.rank_mod

__all__ = ["BACKEND", "route", "can_add_edge", "rank_mod", "_pykernels"]
