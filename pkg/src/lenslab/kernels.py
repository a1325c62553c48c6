"""Backend selection for the search kernels.

The compiled extension is used when it imports; set ``LENSLAB_PURE_PYTHON=1``
to force the reference implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("LENSLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
associativity_violations = _impl.associativity_violations
enumerate_functors = _impl.enumerate_functors
enumerate_lifts = _impl.enumerate_lifts

__all__ = ["BACKEND", "associativity_violations", "enumerate_functors", "enumerate_lifts"]
