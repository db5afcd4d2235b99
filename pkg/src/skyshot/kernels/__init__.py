"""Numeric kernels with a compiled fast path and a pure-Python fallback.

The compiled extension (Cython) is used when it imported cleanly; set
``SKYSHOT_PURE_KERNELS=1`` to force the pure backend. Both backends are
bit-identical (see pure.py), so the choice only affects speed.
"""

from __future__ import annotations

import os

import numpy as np

from . import pure as _pure

if os.environ.get("SKYSHOT_PURE_KERNELS"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND: str = _impl.BACKEND_NAME


def point_in_frustum(e, n, u, yaw_deg, pitch_deg, sensor_w, sensor_h, focal, te, tn, tu) -> bool:
    return _impl.point_in_frustum(e, n, u, yaw_deg, pitch_deg, sensor_w, sensor_h, focal, te, tn, tu)


def frustum_visible_count(samples: np.ndarray, sensor_w, sensor_h, focal, te, tn, tu) -> int:
    """samples: float64 array [n, 5] of (east, north, up, yaw_deg, pitch_deg)."""
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[1] != 5:
        raise ValueError("samples must have shape [n, 5]")
    return int(_impl.frustum_visible_count(samples, sensor_w, sensor_h, focal, te, tn, tu))


def bilinear_height(grid: np.ndarray, cell: float, e: float, n: float) -> float:
    return float(_impl.bilinear_height(grid, cell, e, n))


def bilinear_heights(grid: np.ndarray, cell: float, es: np.ndarray, ns: np.ndarray) -> np.ndarray:
    es = np.ascontiguousarray(es, dtype=np.float64)
    ns = np.ascontiguousarray(ns, dtype=np.float64)
    out = np.empty(es.shape[0], dtype=np.float64)
    _impl.bilinear_heights_into(grid, cell, es, ns, out)
    return out
