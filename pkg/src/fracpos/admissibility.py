"""Fractional admissibility of bipartite vectors and matrices.

A level alpha = k + theta (integer part k, fractional part theta, effective
rank bound r = ceil(alpha)) admits a unit vector psi when its Schmidt
spectrum s_1 >= s_2 >= ... satisfies

* s_{r+1} = 0 (Schmidt rank at most r), and
* if theta > 0:  s_{k+1} <= (theta / k) * (s_1 + ... + s_k).

Matrices are admitted through their singular values, scale-invariantly.
Equality counts as admissible; all comparisons carry an additive feasibility
tolerance applied to the unit-normalized spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import BipartiteDims, _as_vector

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class FractionalLevel:
    """A fractional positivity level alpha = k + theta on local dimension d."""

    alpha: float
    k: int
    theta: float
    r: int
    d: int


def make_level(alpha: float, d: int) -> FractionalLevel:
    """Build a level from alpha in [1, d]; raises ValueError outside."""
    d = int(d)
    if d < 1:
        raise ValueError("local dimension must be positive")
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if alpha < 1.0 or alpha > d:
        raise ValueError(f"alpha={alpha} outside [1, {d}]")
    k = int(math.floor(alpha))
    theta = alpha - k
    r = k if theta == 0.0 else k + 1
    return FractionalLevel(alpha=alpha, k=k, theta=theta, r=r, d=d)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of an admissibility test, with the evidence that produced it."""

    admissible: bool
    rank_ok: bool
    ratio_ok: bool
    observed_ratio: float
    spectrum: np.ndarray
    norm: float

    def to_dict(self) -> dict:
        return {
            "admissible": bool(self.admissible),
            "rank_ok": bool(self.rank_ok),
            "ratio_ok": bool(self.ratio_ok),
            "observed_ratio": float(self.observed_ratio),
            "spectrum": [float(x) for x in self.spectrum],
            "norm": float(self.norm),
        }


def report_from_spectrum(
    spectrum, level: FractionalLevel, tol: float = DEFAULT_TOL, norm: float = 1.0
) -> AdmissibilityReport:
    """Admissibility verdict for a nonincreasing singular-value array.

    The array must have exactly level.d entries.  The tolerance is additive
    on the spectrum normalized to unit 2-norm, so the verdict is
    scale-invariant; a zero spectrum is admissible at every level.
    """
    s = np.asarray(spectrum, dtype=float).reshape(-1)
    if s.size != level.d:
        raise ValueError(f"spectrum has {s.size} entries, level expects {level.d}")
    if np.any(s < -tol) or np.any(np.diff(s) > tol):
        raise ValueError("spectrum must be nonincreasing and nonnegative")
    k, theta, r, d = level.k, level.theta, level.r, level.d

    total = float(np.linalg.norm(s))
    sn = s / total if total > 0.0 else s

    tail = float(sn[r]) if r < d else 0.0
    rank_ok = tail <= tol

    top = float(sn[:k].sum())
    s_next = float(sn[k]) if k < d else 0.0
    observed_ratio = 0.0 if top <= 0.0 else k * s_next / top
    if theta == 0.0:
        ratio_ok = True if k >= d else s_next <= tol
    else:
        ratio_ok = s_next <= (theta / k) * top + tol

    return AdmissibilityReport(
        admissible=bool(rank_ok and ratio_ok),
        rank_ok=bool(rank_ok),
        ratio_ok=bool(ratio_ok),
        observed_ratio=float(observed_ratio),
        spectrum=s,
        norm=float(norm),
    )


def vector_report(
    psi, dims: BipartiteDims, level: FractionalLevel, tol: float = DEFAULT_TOL
) -> AdmissibilityReport:
    """Full admissibility report for a unit vector on an (n, m) space.

    Vectors within tol of unit norm are renormalized before testing; the
    original norm is recorded in the report.  Raises ValueError for vectors
    whose norm deviates from 1 beyond tol.
    """
    if level.d != dims.d:
        raise ValueError(f"level was built for d={level.d}, dims have d={dims.d}")
    psi = _as_vector(psi, dims)
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"vector norm {nrm} is not 1 within tol={tol}")
    s = np.linalg.svd(psi.reshape(dims.n, dims.m) / nrm, compute_uv=False)
    return report_from_spectrum(s, level, tol=tol, norm=nrm)


def is_admissible_vector(
    psi, dims: BipartiteDims, level: FractionalLevel, tol: float = DEFAULT_TOL
) -> bool:
    return vector_report(psi, dims, level, tol=tol).admissible


def matrix_report(a, level: FractionalLevel, tol: float = DEFAULT_TOL) -> AdmissibilityReport:
    """Admissibility report for any m x n matrix (zero allowed, any scale)."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    if level.d != min(a.shape):
        raise ValueError(
            f"level was built for d={level.d}, matrix has min dimension {min(a.shape)}"
        )
    s = np.linalg.svd(a, compute_uv=False)
    return report_from_spectrum(s, level, tol=tol, norm=float(np.linalg.norm(a)))


def is_admissible_matrix(a, level: FractionalLevel, tol: float = DEFAULT_TOL) -> bool:
    return matrix_report(a, level, tol=tol).admissible


def ky_fan_ratio_check(a, level: FractionalLevel, tol: float = DEFAULT_TOL) -> bool:
    """Norm-ratio admissibility test for matrices of rank at most k+1.

    Checks trace_norm(A) <= (1 + theta/k) * kyfan_k(A), which on its domain
    is equivalent to the singular-value form used by is_admissible_matrix.
    Raises ValueError for the zero matrix or rank above k+1.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    if level.d != min(a.shape):
        raise ValueError(
            f"level was built for d={level.d}, matrix has min dimension {min(a.shape)}"
        )
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] <= 0.0:
        raise ValueError("zero matrix has no norm ratio")
    k = level.k
    if np.any(s[k + 1 :] > 1e-12 * s[0]):
        raise ValueError(f"matrix rank exceeds {k + 1}")
    kyfan = float(s[: min(k, s.size)].sum())
    nuclear = float(s.sum())
    return nuclear <= (1.0 + level.theta / k) * kyfan + tol * float(np.linalg.norm(s))


def extremal_spectrum(level: FractionalLevel) -> np.ndarray:
    """Schmidt weights of the level's extremal vector, length ceil(alpha).

    k entries 1/sqrt(k + theta^2) followed by theta/sqrt(k + theta^2); at
    integer levels this is the flat spectrum 1/sqrt(k).
    """
    k, theta = level.k, level.theta
    scale = 1.0 / math.sqrt(k + theta * theta)
    if theta == 0.0:
        return np.full(k, scale)
    return np.concatenate([np.full(k, scale), [theta * scale]])


def extremal_vector(level: FractionalLevel, dims: BipartiteDims) -> np.ndarray:
    """The boundary-admissible vector with extremal weights on aligned pairs.

    Places the extremal spectrum on e_1 (x) f_1, ..., e_r (x) f_r; at
    alpha = d = n = m this is the maximally entangled state.
    """
    if level.r > dims.d:
        raise ValueError(f"level needs rank {level.r}, dims only allow {dims.d}")
    s = extremal_spectrum(level)
    psi = np.zeros(dims.total, dtype=complex)
    for j, w in enumerate(s):
        psi[j * dims.m + j] = w
    return psi


def strict_inclusion_pair(k: int, theta: float, dims: BipartiteDims):
    """A pair (psi, psi') separating level k+theta from its neighbors.

    psi is admissible at alpha = k + theta (boundary ratio theta) but not at
    k; psi' uses theta' = (1 + theta)/2, so it is (k+1)-admissible but not
    alpha-admissible.  Both verdicts are verified before returning.
    """
    k = int(k)
    if k < 1:
        raise ValueError("k must be at least 1")
    theta = float(theta)
    if not 0.0 < theta < 1.0:
        raise ValueError("theta must lie strictly between 0 and 1")
    if k + 1 > dims.d:
        raise ValueError(f"need local dimension at least {k + 1}, got {dims.d}")

    level = make_level(k + theta, dims.d)
    theta_prime = 0.5 * (1.0 + theta)
    level_prime = make_level(k + theta_prime, dims.d)
    psi = extremal_vector(level, dims)
    psi_prime = extremal_vector(level_prime, dims)

    level_int = make_level(float(k), dims.d)
    level_next = make_level(float(k + 1), dims.d)
    checks = (
        is_admissible_vector(psi, dims, level),
        not is_admissible_vector(psi, dims, level_int),
        is_admissible_vector(psi_prime, dims, level_next),
        not is_admissible_vector(psi_prime, dims, level),
    )
    if not all(checks):
        raise RuntimeError("strict inclusion pair failed self-verification")
    return psi, psi_prime
