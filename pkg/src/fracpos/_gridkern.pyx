# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lane of the exhaustive 2x2 frame-grid kernel.

Same contract as `_grid_py.frame_pair_tables`; see that module for the
semantics.  The typed loops run the phase sweep in place instead of
materializing the full complex cross-term table the numpy lane builds, so
peak memory stays flat as the grid resolution grows.  Wall-clock is close
to the numpy lane on machines with a fast BLAS; `benchmarks/bench_kernels.py`
measures both.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, llround, sin

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925287


cdef inline double complex cconj(double complex z) noexcept:
    return z.real - 1j * z.imag


def frame_pair_tables(object w4_in, object a_grid_in, object b_grid_in, int n_phase):
    """Tables (q11, q22, gmin) over all frame pairs, each (F, F) float64."""
    w4_arr = np.ascontiguousarray(np.asarray(w4_in, dtype=np.complex128))
    if w4_arr.shape != (2, 2, 2, 2):
        raise ValueError("kernel expects a (2, 2, 2, 2) operator tensor")
    if n_phase < 1:
        raise ValueError("n_phase must be positive")
    cdef double complex[:, :, :, ::1] w4 = w4_arr
    cdef double[::1] a_grid = np.ascontiguousarray(np.asarray(a_grid_in, dtype=np.float64))
    cdef double[::1] b_grid = np.ascontiguousarray(np.asarray(b_grid_in, dtype=np.float64))

    cdef Py_ssize_t na = a_grid.shape[0]
    cdef Py_ssize_t nb = b_grid.shape[0]
    cdef Py_ssize_t count = na * nb

    frames1 = np.empty((count, 2), dtype=np.complex128)
    frames2 = np.empty((count, 2), dtype=np.complex128)
    cdef double complex[:, ::1] u1 = frames1
    cdef double complex[:, ::1] u2 = frames2

    cdef Py_ssize_t ia, ib, f, g, i, j, a, b
    cdef double ca, sa, bb
    cdef double complex eb
    for ia in range(na):
        ca = cos(a_grid[ia])
        sa = sin(a_grid[ia])
        for ib in range(nb):
            bb = b_grid[ib]
            eb = cos(bb) + 1j * sin(bb)
            f = ia * nb + ib
            u1[f, 0] = ca
            u1[f, 1] = sa * eb
            u2[f, 0] = -sa * cconj(eb)
            u2[f, 1] = ca

    # Per-u-frame 2x2 reductions of the operator tensor.
    r11_arr = np.empty((count, 2, 2), dtype=np.complex128)
    r22_arr = np.empty((count, 2, 2), dtype=np.complex128)
    r12_arr = np.empty((count, 2, 2), dtype=np.complex128)
    cdef double complex[:, :, ::1] r11 = r11_arr
    cdef double complex[:, :, ::1] r22 = r22_arr
    cdef double complex[:, :, ::1] r12 = r12_arr
    cdef double complex acc11, acc22, acc12, wi
    for f in range(count):
        for a in range(2):
            for b in range(2):
                acc11 = 0
                acc22 = 0
                acc12 = 0
                for i in range(2):
                    for j in range(2):
                        wi = w4[i, a, j, b]
                        acc11 = acc11 + cconj(u1[f, i]) * wi * u1[f, j]
                        acc22 = acc22 + cconj(u2[f, i]) * wi * u2[f, j]
                        acc12 = acc12 + cconj(u1[f, i]) * wi * u2[f, j]
                r11[f, a, b] = acc11
                r22[f, a, b] = acc22
                r12[f, a, b] = acc12

    q11_arr = np.empty((count, count), dtype=np.float64)
    q22_arr = np.empty((count, count), dtype=np.float64)
    gmin_arr = np.empty((count, count), dtype=np.float64)
    cdef double[:, ::1] q11 = q11_arr
    cdef double[:, ::1] q22 = q22_arr
    cdef double[:, ::1] gmin = gmin_arr

    cdef double complex v1a, v1b, v2a, v2b, z
    cdef double zr, zi, step, c_star, cval, best, trial
    cdef long long j0, jj, dj
    step = TWO_PI / n_phase
    for f in range(count):
        for g in range(count):
            v1a = u1[g, 0]
            v1b = u1[g, 1]
            v2a = u2[g, 0]
            v2b = u2[g, 1]
            q11[f, g] = (
                cconj(v1a) * (r11[f, 0, 0] * v1a + r11[f, 0, 1] * v1b)
                + cconj(v1b) * (r11[f, 1, 0] * v1a + r11[f, 1, 1] * v1b)
            ).real
            q22[f, g] = (
                cconj(v2a) * (r22[f, 0, 0] * v2a + r22[f, 0, 1] * v2b)
                + cconj(v2b) * (r22[f, 1, 0] * v2a + r22[f, 1, 1] * v2b)
            ).real
            z = (
                cconj(v1a) * (r12[f, 0, 0] * v2a + r12[f, 0, 1] * v2b)
                + cconj(v1b) * (r12[f, 1, 0] * v2a + r12[f, 1, 1] * v2b)
            )
            zr = z.real
            zi = z.imag
            c_star = 3.14159265358979323846 - atan2(zi, zr)
            j0 = llround(c_star / step)
            best = 1e308
            for dj in range(-1, 2):
                jj = (j0 + dj + n_phase) % n_phase
                cval = step * jj
                trial = cos(cval) * zr - sin(cval) * zi
                if trial < best:
                    best = trial
            gmin[f, g] = best
    return q11_arr, q22_arr, gmin_arr
