# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Must stay operation-for-operation identical to pure.py
(same formulas and evaluation order); the build disables FP contraction so
both backends return bit-identical doubles."""

from libc.math cimport sin, cos, fabs

BACKEND_NAME = "compiled"


cdef inline bint _in_frustum(double e, double n, double u,
                             double yaw_deg, double pitch_deg,
                             double sensor_w, double sensor_h, double focal,
                             double te, double tn, double tu) nogil:
    cdef double deg = 0.017453292519943295  # radians per degree, matches math.radians
    cdef double yaw = yaw_deg * deg
    cdef double pitch = pitch_deg * deg
    cdef double sy = sin(yaw)
    cdef double cy = cos(yaw)
    cdef double sp = sin(pitch)
    cdef double cp = cos(pitch)

    cdef double ve = te - e
    cdef double vn = tn - n
    cdef double vu = tu - u

    cdef double f = ve * (sy * cp) + vn * (cy * cp) + vu * (-sp)
    if f <= 0.0:
        return False
    cdef double r = ve * cy + vn * (-sy)
    cdef double w = ve * (sy * sp) + vn * (cy * sp) + vu * cp

    cdef double tan_half_w = sensor_w / (2.0 * focal)
    cdef double tan_half_h = sensor_h / (2.0 * focal)
    return fabs(r) <= f * tan_half_w and fabs(w) <= f * tan_half_h


def point_in_frustum(double e, double n, double u,
                     double yaw_deg, double pitch_deg,
                     double sensor_w, double sensor_h, double focal,
                     double te, double tn, double tu):
    return bool(_in_frustum(e, n, u, yaw_deg, pitch_deg,
                            sensor_w, sensor_h, focal, te, tn, tu))


def frustum_visible_count(double[:, ::1] samples,
                          double sensor_w, double sensor_h, double focal,
                          double te, double tn, double tu):
    cdef Py_ssize_t i
    cdef int count = 0
    for i in range(samples.shape[0]):
        if _in_frustum(samples[i, 0], samples[i, 1], samples[i, 2],
                       samples[i, 3], samples[i, 4],
                       sensor_w, sensor_h, focal, te, tn, tu):
            count += 1
    return count


cdef inline double _bilinear(double[:, ::1] grid, double cell,
                             double e, double n) nogil:
    cdef Py_ssize_t rows = grid.shape[0]
    cdef Py_ssize_t cols = grid.shape[1]
    cdef double x = e / cell
    cdef double y = n / cell
    cdef Py_ssize_t i = <Py_ssize_t>x
    cdef Py_ssize_t j = <Py_ssize_t>y
    if i > cols - 2:
        i = cols - 2
    if j > rows - 2:
        j = rows - 2
    cdef double fx = x - i
    cdef double fy = y - j
    cdef double h00 = grid[j, i]
    cdef double h10 = grid[j, i + 1]
    cdef double h01 = grid[j + 1, i]
    cdef double h11 = grid[j + 1, i + 1]
    return (h00 * (1.0 - fx) + h10 * fx) * (1.0 - fy) + (h01 * (1.0 - fx) + h11 * fx) * fy


def bilinear_height(double[:, ::1] grid, double cell, double e, double n):
    return _bilinear(grid, cell, e, n)


def bilinear_heights_into(double[:, ::1] grid, double cell,
                          double[::1] es, double[::1] ns, double[::1] out):
    cdef Py_ssize_t k
    for k in range(es.shape[0]):
        out[k] = _bilinear(grid, cell, es[k], ns[k])
