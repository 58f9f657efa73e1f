"""Sharp thresholds for the depolarizing family and isotropic states.

Closed forms for a level alpha = k + theta on local dimension d:

* depolarizing threshold  t*(alpha) = (k + theta^2) / (k + theta)^2 -- the
  largest t for which X -> Tr(X) I - t X keeps the level's positivity;
* fidelity threshold  f_d(alpha) = (k + theta)^2 / (d (k + theta^2)) -- the
  largest overlap with the maximally entangled state compatible with the
  level's cone membership for isotropic states.

They satisfy the reciprocity f_d(alpha) * d * t*(alpha) = 1, and each is
inverted in closed form by fractional_schmidt_number / stability_index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .admissibility import FractionalLevel, make_level


def depolarizing_threshold(level: FractionalLevel) -> float:
    """t*(alpha): strictly decreasing in alpha, from 1 at alpha=1 to 1/d."""
    k, theta = level.k, level.theta
    return (k + theta * theta) / ((k + theta) ** 2)


def fidelity_threshold(d: int, level: FractionalLevel) -> float:
    """f_d(alpha): strictly increasing in alpha, from 1/d at alpha=1 to 1."""
    d = int(d)
    if level.d != d:
        raise ValueError(f"level was built for d={level.d}, got d={d}")
    k, theta = level.k, level.theta
    return (k + theta) ** 2 / (d * (k + theta * theta))


def fractional_schmidt_number(fidelity: float, d: int) -> float:
    """Smallest level whose fidelity threshold reaches the given overlap.

    Piecewise closed form on F in [0, 1]: returns 1 for F <= 1/d, d at
    F = 1, and on F in (k/d, (k+1)/d) the root k + theta of
    (Fd - 1) theta^2 - 2 k theta + k (Fd - k) = 0 picked so that
    f_d(k + theta) = F.  Exact k is returned at breakpoints F = k/d.
    """
    d = int(d)
    if d < 2:
        raise ValueError("d must be at least 2")
    fidelity = float(fidelity)
    if not 0.0 <= fidelity <= 1.0:
        raise ValueError(f"fidelity {fidelity} outside [0, 1]")
    if fidelity <= 1.0 / d:
        return 1.0
    fd = fidelity * d
    if fd >= d:
        return float(d)
    k = int(math.floor(fd))
    if fd == k:
        return float(k)
    disc = k * k - k * (fd - 1.0) * (fd - k)
    if disc < -1e-14:
        raise ArithmeticError("negative discriminant in fidelity inversion")
    # Rationalized root of the quadratic: no cancellation near breakpoints.
    theta = k * (fd - k) / (k + math.sqrt(max(disc, 0.0)))
    return k + theta


def stability_index(t: float, d: int) -> float:
    """Largest level the depolarizing map retains at parameter t.

    Returns d for t <= 1/d (complete positivity), 1 at t = 1, and on
    t in (1/(k+1), 1/k] the root k + theta of
    (t - 1) theta^2 + 2 t k theta + (t k^2 - k) = 0 with t*(k+theta) = t.
    Raises ValueError for t > 1 (no positivity at all).
    """
    d = int(d)
    if d < 2:
        raise ValueError("d must be at least 2")
    t = float(t)
    if t > 1.0:
        raise ValueError(f"t={t} exceeds 1; the map has no positivity level")
    if t <= 1.0 / d:
        return float(d)
    if t == 1.0:
        return 1.0
    k = int(math.floor(1.0 / t))
    arg = k * (t * (k + 1) - 1.0)
    # Rationalized root: exact 0 at t = 1/k, no cancellation near 1/(k+1).
    theta = k * (1.0 - t * k) / (t * k + math.sqrt(max(arg, 0.0)))
    return k + theta


@dataclass(frozen=True)
class ThresholdProfile:
    """Sampled (alpha, t*, f_d) rows over a grid, invariant-checked."""

    d: int
    alphas: tuple[float, ...]
    t_stars: tuple[float, ...]
    fidelities: tuple[float, ...]

    def rows(self):
        return zip(self.alphas, self.t_stars, self.fidelities)


def profile_sweep(d: int, grid) -> ThresholdProfile:
    """Evaluate both thresholds over an ascending alpha grid in [1, d].

    Validates monotonicity (t* strictly decreasing, f_d strictly increasing
    across distinct alphas) and the rowwise reciprocity
    f_d * d * t* = 1 within 1e-12 before returning.
    """
    d = int(d)
    alphas = [float(a) for a in grid]
    if not alphas:
        raise ValueError("empty grid")
    if any(b < a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("grid must be ascending")
    t_stars = []
    fids = []
    for alpha in alphas:
        level = make_level(alpha, d)  # raises for alpha outside [1, d]
        t_stars.append(depolarizing_threshold(level))
        fids.append(fidelity_threshold(d, level))
    for i in range(len(alphas) - 1):
        if alphas[i] == alphas[i + 1]:
            continue
        if not t_stars[i] > t_stars[i + 1]:
            raise ArithmeticError("depolarizing threshold failed to decrease")
        if not fids[i] < fids[i + 1]:
            raise ArithmeticError("fidelity threshold failed to increase")
    for t, f in zip(t_stars, fids):
        if abs(f * d * t - 1.0) > 1e-12:
            raise ArithmeticError("threshold reciprocity violated")
    return ThresholdProfile(
        d=d, alphas=tuple(alphas), t_stars=tuple(t_stars), fidelities=tuple(fids)
    )
