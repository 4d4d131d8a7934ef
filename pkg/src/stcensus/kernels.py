"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set STCENSUS_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the backend-equality tests).
"""
from __future__ import annotations

import os

if os.environ.get("STCENSUS_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
pair_type_census = _impl.pair_type_census
direction_spectra = _impl.direction_spectra


def available_backends() -> list[str]:
    out = ["python"]
    try:
        from . import _kernels  # noqa: F401

        out.insert(0, "compiled")
    except ImportError:
        pass
    return out
