"""Kernel selection.

The compiled extension is used when it was built; otherwise the pure-Python
implementations are imported.  Setting ``TREELATTICE_PURE_PYTHON=1`` forces
the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("TREELATTICE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

bfs_distances = _impl.bfs_distances
expand_cover = _impl.expand_cover
tower_injective = _impl.tower_injective
tower_equivariance_failures = _impl.tower_equivariance_failures
tower_action_bijective = _impl.tower_action_bijective
tower_faithful_witnesses = _impl.tower_faithful_witnesses

__all__ = [
    "BACKEND",
    "bfs_distances",
    "expand_cover",
    "tower_injective",
    "tower_equivariance_failures",
    "tower_action_bijective",
    "tower_faithful_witnesses",
]
