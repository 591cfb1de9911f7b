"""Kernel backend selection.

The compiled extension is used when it built; SOMPOW_PURE=1 forces the
pure-Python fallback (handy for benchmarking and debugging).  Both
backends implement the same three functions with identical results.
"""

import os

if os.environ.get("SOMPOW_PURE") == "1":
    from . import fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import fallback as _impl

        BACKEND = "python"

mat_mul_flat = _impl.mat_mul_flat
weighted_scan = _impl.weighted_scan
lrs_terms = _impl.lrs_terms

__all__ = ["BACKEND", "mat_mul_flat", "weighted_scan", "lrs_terms"]
