"""Pure-numpy lane of the exhaustive 2x2 frame-grid kernel.

Semantics shared with the compiled lane `_gridkern`: enumerate orthonormal
frame pairs u(a_u, b_u), v(a_v, b_v) over the given angle grids, tabulate
the diagonal pair forms q11, q22 and the cross term swept over an n_phase
point relative-phase grid.  The phase sweep is exact: the grid minimum of
cos(c) Re z - sin(c) Im z over c_j = 2 pi j / n_phase is attained next to
the continuous minimizer pi - arg z, so only three candidates are checked.
"""

from __future__ import annotations

import numpy as np


def _frame_tables(a_grid: np.ndarray, b_grid: np.ndarray):
    """Component tables of u1 = (cos a, e^{ib} sin a) and its fixed
    orthogonal complement u2 = (-e^{-ib} sin a, cos a), flattened."""
    ca = np.cos(a_grid)[:, None]
    sa = np.sin(a_grid)[:, None]
    eb = np.exp(1j * b_grid)[None, :]
    count = a_grid.size * b_grid.size
    u1 = np.empty((count, 2), dtype=complex)
    u2 = np.empty((count, 2), dtype=complex)
    u1[:, 0] = np.broadcast_to(ca, (a_grid.size, b_grid.size)).reshape(-1)
    u1[:, 1] = (sa * eb).reshape(-1)
    u2[:, 0] = (-sa * eb.conj()).reshape(-1)
    u2[:, 1] = u1[:, 0]
    return u1, u2


def _phase_grid_min(z: np.ndarray, n_phase: int) -> np.ndarray:
    """Exact min over the phase grid of Re(e^{ic} z), elementwise."""
    step = 2.0 * np.pi / n_phase
    c_star = np.pi - np.arctan2(z.imag, z.real)
    j0 = np.rint(c_star / step).astype(np.int64)
    best = np.full(z.shape, np.inf)
    for dj in (-1, 0, 1):
        j = (j0 + dj) % n_phase
        c = step * j
        np.minimum(best, np.cos(c) * z.real - np.sin(c) * z.imag, out=best)
    return best


def frame_pair_tables(w4: np.ndarray, a_grid, b_grid, n_phase: int):
    """Tables (q11, q22, gmin) over all frame pairs, each (F, F) float64
    with F = len(a_grid) * len(b_grid).

    q11[f, g] = <u1 x v1, W (u1 x v1)>, q22 likewise for the second columns,
    and gmin[f, g] is the phase-grid minimum of Re(e^{ic} <u1 x v1, W (u2 x v2)>).
    """
    w4 = np.asarray(w4, dtype=complex)
    if w4.shape != (2, 2, 2, 2):
        raise ValueError("kernel expects a (2, 2, 2, 2) operator tensor")
    a_grid = np.asarray(a_grid, dtype=float)
    b_grid = np.asarray(b_grid, dtype=float)
    if int(n_phase) < 1:
        raise ValueError("n_phase must be positive")
    u1, u2 = _frame_tables(a_grid, b_grid)

    r11 = np.einsum("fi,iajb,fj->fab", u1.conj(), w4, u1)
    r22 = np.einsum("fi,iajb,fj->fab", u2.conj(), w4, u2)
    r12 = np.einsum("fi,iajb,fj->fab", u1.conj(), w4, u2)

    count = u1.shape[0]
    k11 = np.einsum("ga,gb->gab", u1.conj(), u1).reshape(count, 4)
    k22 = np.einsum("ga,gb->gab", u2.conj(), u2).reshape(count, 4)
    k12 = np.einsum("ga,gb->gab", u1.conj(), u2).reshape(count, 4)

    q11 = (r11.reshape(count, 4) @ k11.T).real
    q22 = (r22.reshape(count, 4) @ k22.T).real
    z12 = r12.reshape(count, 4) @ k12.T
    gmin = _phase_grid_min(z12, int(n_phase))
    return q11, q22, gmin
