"""Pure-Python kernel implementations.

These mirror the compiled extension in ``_fast.pyx`` operation for
operation: same formulas, same evaluation order, no fused multiply-adds.
Either backend therefore produces bit-identical results and the two are
interchangeable at import time.
"""

from __future__ import annotations

import math

BACKEND_NAME = "pure"


def point_in_frustum(
    e: float,
    n: float,
    u: float,
    yaw_deg: float,
    pitch_deg: float,
    sensor_w: float,
    sensor_h: float,
    focal: float,
    te: float,
    tn: float,
    tu: float,
) -> bool:
    """True when target (te, tn, tu) is inside the camera frustum.

    Camera sits at (e, n, u), yaw in degrees clockwise from north, gimbal
    pitch in degrees below the horizontal. Horizontal half-FOV tangent is
    sensor_w / (2 * focal); the target must project in front of the camera
    and within both half-angles (boundary inclusive).
    """
    yaw = math.radians(yaw_deg)
    pitch = math.radians(pitch_deg)
    sy = math.sin(yaw)
    cy = math.cos(yaw)
    sp = math.sin(pitch)
    cp = math.cos(pitch)

    ve = te - e
    vn = tn - n
    vu = tu - u

    # forward = (sy*cp, cy*cp, -sp); right = (cy, -sy, 0); up = right x forward
    f = ve * (sy * cp) + vn * (cy * cp) + vu * (-sp)
    if f <= 0.0:
        return False
    r = ve * cy + vn * (-sy)
    w = ve * (sy * sp) + vn * (cy * sp) + vu * cp

    tan_half_w = sensor_w / (2.0 * focal)
    tan_half_h = sensor_h / (2.0 * focal)
    return abs(r) <= f * tan_half_w and abs(w) <= f * tan_half_h


def frustum_visible_count(samples, sensor_w, sensor_h, focal, te, tn, tu) -> int:
    """Count rows of samples[n, 5] = (e, n, u, yaw_deg, pitch_deg) that see the target."""
    count = 0
    for i in range(samples.shape[0]):
        if point_in_frustum(
            float(samples[i, 0]),
            float(samples[i, 1]),
            float(samples[i, 2]),
            float(samples[i, 3]),
            float(samples[i, 4]),
            sensor_w,
            sensor_h,
            focal,
            te,
            tn,
            tu,
        ):
            count += 1
    return count


def bilinear_height(grid, cell: float, e: float, n: float) -> float:
    """Bilinear interpolation on a row-major (north, east) height lattice.

    Caller guarantees 0 <= e <= (cols-1)*cell and 0 <= n <= (rows-1)*cell.
    """
    rows = grid.shape[0]
    cols = grid.shape[1]
    x = e / cell
    y = n / cell
    i = int(x)
    j = int(y)
    if i > cols - 2:
        i = cols - 2
    if j > rows - 2:
        j = rows - 2
    fx = x - i
    fy = y - j
    h00 = float(grid[j, i])
    h10 = float(grid[j, i + 1])
    h01 = float(grid[j + 1, i])
    h11 = float(grid[j + 1, i + 1])
    return (h00 * (1.0 - fx) + h10 * fx) * (1.0 - fy) + (h01 * (1.0 - fx) + h11 * fx) * fy


def bilinear_heights_into(grid, cell, es, ns, out) -> None:
    """Batch bilinear_height over parallel coordinate arrays, writing into out."""
    for k in range(es.shape[0]):
        out[k] = bilinear_height(grid, cell, float(es[k]), float(ns[k]))
