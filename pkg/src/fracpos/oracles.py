"""Brute-force grid oracles for cross-checking the optimizer and closed forms.

Independent of the multistart machinery: these enumerate explicit
parametrizations on dense grids (with deterministic local refinement) and
exist so the test suite can corroborate values computed elsewhere.  The
frame-grid tables come from a compiled lane when the extension built,
otherwise from a numpy lane with identical semantics; set the environment
variable FRACPOS_PURE_PYTHON before import to force the fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from .admissibility import FractionalLevel
from .linalg import require_hermitian

if os.environ.get("FRACPOS_PURE_PYTHON"):
    from . import _grid_py as _kernel

    _COMPILED = False
else:
    try:
        from . import _gridkern as _kernel  # type: ignore[attr-defined]

        _COMPILED = True
    except ImportError:
        from . import _grid_py as _kernel

        _COMPILED = False


def kernel_backend() -> str:
    """Which lane computes the frame-grid tables: 'compiled' or 'python'."""
    return "compiled" if _COMPILED else "python"


@dataclass(frozen=True)
class GridSpec:
    """Grid resolutions for the brute-force oracles.

    unitary_resolution: subdivisions per frame angle (closed grid on the
    polar angle, periodic grids on phases); schmidt_resolution:
    subdivisions of the Schmidt-weight parameters; refine_steps:
    golden-section / zoom iterations per coordinate during refinement.
    """

    unitary_resolution: int = 24
    schmidt_resolution: int = 24
    refine_steps: int = 40

    def __post_init__(self) -> None:
        if self.unitary_resolution < 1 or self.schmidt_resolution < 1:
            raise ValueError("grid resolutions must be positive")
        if self.refine_steps < 0:
            raise ValueError("refine_steps must be nonnegative")


def _phi_max(level: FractionalLevel) -> float:
    """Largest admissible Schmidt mixing angle on a 2x2 space."""
    if level.k >= 2:
        return 0.25 * math.pi
    return math.atan(level.theta)


def _frame(a: float, b: float):
    u1 = np.array([math.cos(a), math.sin(a) * complex(math.cos(b), math.sin(b))])
    u2 = np.array([-math.sin(a) * complex(math.cos(b), -math.sin(b)), math.cos(a)])
    return u1, u2


def _frame_objective(w, a_u: float, b_u: float, a_v: float, b_v: float, phi_max: float) -> float:
    """Form minimum over the admissible vectors built on one frame pair.

    With the frames fixed, the relative phase and the Schmidt angle both
    admit closed-form minima (the phase aligns the cross term, leaving a
    sinusoid in twice the Schmidt angle), so this is exact and the outer
    refinement only has to search the four frame angles.
    """
    u1, u2 = _frame(a_u, b_u)
    v1, v2 = _frame(a_v, b_v)
    p11 = np.kron(u1, v1)
    p22 = np.kron(u2, v2)
    wp11 = w @ p11
    q11 = float(np.real(p11.conj() @ wp11))
    q22 = float(np.real(p22.conj() @ (w @ p22)))
    cross = -abs(complex(p11.conj() @ (w @ p22)))
    avg, diff = 0.5 * (q11 + q22), 0.5 * (q11 - q22)
    x_hi = 2.0 * phi_max
    best = min(q11, avg + diff * math.cos(x_hi) + cross * math.sin(x_hi))
    x_star = math.atan2(-cross, -diff) % (2.0 * math.pi)
    if x_star <= x_hi:
        best = min(best, avg + diff * math.cos(x_star) + cross * math.sin(x_star))
    return best


def _weight_sweep_min(q11, q22, gmin, phi_grid: np.ndarray):
    """Exact grid minimum over phi of cos^2 q11 + sin^2 q22 + sin(2 phi) gmin.

    The expression is A + P cos(2 phi) + G sin(2 phi); over a uniform grid
    on [0, phi_max] the minimum sits at an endpoint or next to the
    continuous minimizer, so four candidates suffice.  Returns the value
    table and the index of the minimizing phi per entry.
    """
    steps = phi_grid.size - 1
    avg = 0.5 * (q11 + q22)
    diff = 0.5 * (q11 - q22)
    if steps == 0:
        return q11.copy(), np.zeros(q11.shape, dtype=np.int64)
    x_max = 2.0 * phi_grid[-1]
    step = x_max / steps
    x_star = np.mod(np.arctan2(-gmin, -diff), 2.0 * math.pi)
    j_near = np.clip(np.rint(x_star / step), 0, steps).astype(np.int64)
    best = np.full(q11.shape, np.inf)
    best_j = np.zeros(q11.shape, dtype=np.int64)
    candidates = [np.zeros_like(j_near), np.full_like(j_near, steps), j_near - 1, j_near, j_near + 1]
    for j in candidates:
        j = np.clip(j, 0, steps)
        x = step * j
        val = avg + diff * np.cos(x) + gmin * np.sin(x)
        mask = val < best
        best_j = np.where(mask, j, best_j)
        best = np.where(mask, val, best)
    return best, best_j


def _golden_section(fn, lo: float, hi: float, iters: int):
    """Golden-section minimization; returns the best probed (x, value)."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    best_x, best_f = (x1, f1) if f1 <= f2 else (x2, f2)
    for _ in range(iters):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = fn(x2)
        if f1 < best_f:
            best_x, best_f = x1, f1
        if f2 < best_f:
            best_x, best_f = x2, f2
    return best_x, best_f


def _refine_pair(w, point, span: float, phi_max: float, iters: int):
    """Coordinate-wise golden-section descent over the four frame angles.

    The phase and Schmidt angle are solved exactly inside the objective.
    All four angles are free (the frames stay orthonormal for any value),
    so windows never need clipping; they shrink between passes.
    Deterministic; never returns a value above the starting one.
    """
    x = list(point)
    best = _frame_objective(w, *x, phi_max)
    for _ in range(10):
        moved = False
        for i in range(4):

            def slice_fn(t, i=i):
                trial = list(x)
                trial[i] = t
                return _frame_objective(w, *trial, phi_max)

            lo, hi = x[i] - span, x[i] + span
            for _shift in range(4):
                xi, fi = _golden_section(slice_fn, lo, hi, iters)
                width = hi - lo
                if xi <= lo + 0.02 * width:
                    lo, hi = lo - width, lo + 0.1 * width
                elif xi >= hi - 0.02 * width:
                    lo, hi = hi - 0.1 * width, hi + width
                else:
                    break
            if fi < best - 1e-17:
                x[i] = xi
                best = fi
                moved = True
        span *= 0.5
        if not moved and span < 1e-9:
            break
    return best, tuple(x)


def _joint_polish(w, point, span: float, phi_max: float) -> float:
    """Pattern search over all four frame angles at once.

    Coordinate descent can deadlock on diagonal valleys; the joint stencil
    breaks that.  Span halves on failure and persists on success.
    """
    x = np.array(point)
    best = _frame_objective(w, *x, phi_max)
    steps = np.array([-1.0, 0.0, 1.0])
    offsets = np.stack(np.meshgrid(*([steps] * 4), indexing="ij"), axis=-1).reshape(-1, 4)
    offsets = offsets[np.any(offsets != 0.0, axis=1)]
    budget = 220
    while budget > 0 and span > 1e-10:
        budget -= 1
        improved = False
        for off in offsets:
            trial = x + span * off
            val = _frame_objective(w, *trial, phi_max)
            if val < best - 1e-17:
                best = val
                x = trial
                improved = True
        if not improved:
            span *= 0.5
    return best


def form_minimum_bruteforce_2x2(w, level: FractionalLevel, grid: GridSpec | None = None) -> float:
    """Exhaustive-grid estimate of the admissible form minimum on C^2 x C^2.

    Enumerates the product grid over both local frames (polar angle on a
    closed grid, phases on periodic grids; the two overall phases collapse
    into one relative phase exactly), sweeps the admissible Schmidt angle
    analytically on its grid, then polishes the best grid points by
    coordinate golden-section.
    """
    grid = grid if grid is not None else GridSpec()
    if level.d != 2:
        raise ValueError("the frame-grid oracle works on 2x2 spaces only")
    w = require_hermitian(w, 4)

    res = grid.unitary_resolution
    a_grid = np.linspace(0.0, 0.5 * math.pi, res + 1)
    b_grid = 2.0 * math.pi * np.arange(res) / res
    phi_max = _phi_max(level)
    phi_grid = np.linspace(0.0, phi_max, grid.schmidt_resolution + 1)

    q11, q22, gmin = _kernel.frame_pair_tables(
        w.reshape(2, 2, 2, 2), a_grid, b_grid, res
    )
    values, _ = _weight_sweep_min(q11, q22, gmin, phi_grid)

    flat = values.reshape(-1)
    order = np.argsort(flat, kind="stable")
    count_b = b_grid.size

    # Refine up to 8 candidates spread across distinct basins: walking the
    # grid cells in ascending value, skip any cell too close to one already
    # chosen, with "too close" a fixed angular separation so the basin
    # coverage does not collapse as the resolution grows.
    min_cells = max(1, res // 8)
    chosen: list[tuple[int, int, int, int]] = []
    for rank_idx in order:
        f, g = divmod(int(rank_idx), values.shape[1])
        ia, ib = divmod(f, count_b)
        ja, jb = divmod(g, count_b)
        separated = True
        for oa, ob, oc, od in chosen:
            gap = max(
                abs(ia - oa),
                min(abs(ib - ob), count_b - abs(ib - ob)),
                abs(ja - oc),
                min(abs(jb - od), count_b - abs(jb - od)),
            )
            if gap < min_cells:
                separated = False
                break
        if separated:
            chosen.append((ia, ib, ja, jb))
            if len(chosen) == 12:
                break

    best = float(flat.min())
    span = float(a_grid[1] - a_grid[0])
    best_point = None
    for ia, ib, ja, jb in chosen:
        point = (a_grid[ia], b_grid[ib], a_grid[ja], b_grid[jb])
        refined, refined_point = _refine_pair(w, point, span, phi_max, grid.refine_steps)
        if refined < best:
            best = refined
            best_point = refined_point
    if best_point is not None:
        best = min(best, _joint_polish(w, best_point, span, phi_max))
    return best


def _positive_sphere(angles: np.ndarray) -> np.ndarray:
    """Spherical parametrization of the nonnegative unit orthant.

    angles (..., r-1) in [0, pi/2] -> weights (..., r).
    """
    r = angles.shape[-1] + 1
    out = np.ones(angles.shape[:-1] + (r,))
    sin_running = np.ones(angles.shape[:-1])
    for i in range(r - 1):
        out[..., i] = sin_running * np.cos(angles[..., i])
        sin_running = sin_running * np.sin(angles[..., i])
    out[..., r - 1] = sin_running
    return out


def _overlap_value(s: np.ndarray, level: FractionalLevel, d: int) -> np.ndarray:
    """Normalized squared overlap with the maximally entangled state;
    -inf when the sorted weight vector violates the level's ratio bound."""
    norm_sq = (s * s).sum(axis=-1)
    total = s.sum(axis=-1)
    value = total * total / (d * norm_sq)
    if level.theta > 0.0:
        k, theta = level.k, level.theta
        srt = -np.sort(-s, axis=-1)
        feasible = srt[..., k] <= (theta / k) * srt[..., :k].sum(axis=-1) + 1e-12
        value = np.where(feasible, value, -np.inf)
    return value


def _orthant_objective(angles: np.ndarray, level: FractionalLevel, d: int) -> np.ndarray:
    return _overlap_value(_positive_sphere(angles), level, d)


def _facet_objective(angles: np.ndarray, level: FractionalLevel, d: int) -> np.ndarray:
    """Overlap restricted to the ratio facet: the top block comes from its
    own orthant parametrization and the tail weight sits exactly on the
    bound (theta/k) times the top sum."""
    top = _positive_sphere(angles)
    tail = (level.theta / level.k) * top.sum(axis=-1, keepdims=True)
    return _overlap_value(np.concatenate([top, tail], axis=-1), level, d)


def _pattern_search_max(objective, x0: np.ndarray, span: float, steps: int) -> float:
    """Box pattern search: keep the span while improving, halve on failure."""
    x = x0.copy()
    best = float(objective(x0[None, :])[0])
    q = x0.size
    stencil = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    offsets = np.stack(
        np.meshgrid(*([stencil] * q), indexing="ij"), axis=-1
    ).reshape(-1, q)
    budget = 4 * steps
    while budget > 0 and span > 1e-13:
        budget -= 1
        trial = np.clip(x[None, :] + span * offsets, 0.0, 0.5 * math.pi)
        vals = objective(trial)
        pick = int(np.argmax(vals))
        if vals[pick] > best:
            best = float(vals[pick])
            x = trial[pick].copy()
        else:
            span *= 0.5
    return best


def _family_max(objective, free_angles: int, res: int, steps: int) -> float:
    """Grid-then-refine maximum of one parametrized family."""
    axis = np.linspace(0.0, 0.5 * math.pi, res + 1)
    if free_angles == 0:
        return float(objective(np.empty((1, 0)))[0])
    mesh = np.stack(
        np.meshgrid(*([axis] * free_angles), indexing="ij"), axis=-1
    ).reshape(-1, free_angles)
    values = objective(mesh)
    pick = int(np.argmax(values))
    best = float(values[pick])
    if not math.isfinite(best):
        return best
    refined = _pattern_search_max(objective, mesh[pick], float(axis[1]), steps)
    return max(best, refined)


def max_omega_overlap_bruteforce(
    d: int, level: FractionalLevel, grid: GridSpec | None = None
) -> float:
    """Grid maximum of the maximally-entangled overlap over admissible
    Schmidt-diagonal vectors, with deterministic pattern-search refinement.

    Diagonal weights suffice for this objective, so the search covers the
    admissible part of the positive unit orthant in ceil(alpha) weights.
    The maximizer can sit exactly on the ratio bound where the orthant
    grid stalls, so the facet itself is enumerated as a second family.
    """
    grid = grid if grid is not None else GridSpec()
    d = int(d)
    if d not in (2, 3):
        raise ValueError("the overlap oracle supports d in {2, 3} only")
    if level.d != d:
        raise ValueError(f"level was built for d={level.d}, got d={d}")
    r = level.r
    if r == 1:
        return 1.0 / d

    res = grid.schmidt_resolution
    steps = grid.refine_steps
    best = _family_max(
        lambda a: _orthant_objective(a, level, d), r - 1, res, steps
    )
    if level.theta > 0.0:
        facet = _family_max(
            lambda a: _facet_objective(a, level, d), level.k - 1, res, steps
        )
        best = max(best, facet)
    return best
