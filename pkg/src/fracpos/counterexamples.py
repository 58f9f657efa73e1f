"""Constructive separations between neighboring positivity levels.

Two demonstrations, both returning audited certificates:

* `demo_strict_inclusion`: explicit vectors witnessing that the admissible
  set at level k + theta sits strictly between the sets at levels k and
  k + 1, plus a negative pairing against the level-k isotropic witness.

* `demo_cp_failure`: post-composing the depolarizing map (inside its
  fractional positivity window) with a completely positive conjugation
  destroys the fractional level: an admissible vector with a strictly
  negative quadratic form on the post-composed Choi matrix, with the
  predicted closed-form value.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .admissibility import (
    AdmissibilityReport,
    FractionalLevel,
    extremal_vector,
    make_level,
    strict_inclusion_pair,
    vector_report,
)
from .choi import choi_depolarizing, choi_postcompose
from .cones import witness_operator
from .linalg import BipartiteDims, quadratic_form, square_dims
from .thresholds import depolarizing_threshold


@dataclass(frozen=True)
class StrictInclusionReport:
    """Evidence that level k+theta strictly separates levels k and k+1."""

    k: int
    theta: float
    theta_prime: float
    dims: BipartiteDims
    psi: np.ndarray
    psi_prime: np.ndarray
    psi_at_k: AdmissibilityReport
    psi_at_alpha: AdmissibilityReport
    psi_prime_at_alpha: AdmissibilityReport
    psi_prime_at_next: AdmissibilityReport
    witness_pairing: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "theta": self.theta,
            "alpha": self.k + self.theta,
            "theta_prime": self.theta_prime,
            "n": self.dims.n,
            "m": self.dims.m,
            "psi_spectrum": self.psi_at_alpha.to_dict()["spectrum"],
            "psi_prime_spectrum": self.psi_prime_at_alpha.to_dict()["spectrum"],
            "psi_at_k": self.psi_at_k.to_dict(),
            "psi_at_alpha": self.psi_at_alpha.to_dict(),
            "psi_prime_at_alpha": self.psi_prime_at_alpha.to_dict(),
            "psi_prime_at_next": self.psi_prime_at_next.to_dict(),
            "witness_pairing": self.witness_pairing,
        }


def demo_strict_inclusion(k: int, theta: float, dims: BipartiteDims) -> StrictInclusionReport:
    """Build and verify the strict-inclusion pair on a square space.

    The witness pairing <psi, W_k psi> with the integer-level isotropic
    witness is negative, certifying that psi escapes level k.
    """
    if dims.n != dims.m:
        raise ValueError("witness pairing needs a square space (n == m)")
    psi, psi_prime = strict_inclusion_pair(k, theta, dims)
    d = dims.d
    alpha_level = make_level(k + theta, d)
    next_level = make_level(float(k + 1), d)
    int_level = make_level(float(k), d)

    pairing = quadratic_form(witness_operator(d, int_level), psi)
    if not pairing < 0.0:
        raise ArithmeticError("witness pairing failed to certify the separation")

    return StrictInclusionReport(
        k=int(k),
        theta=float(theta),
        theta_prime=0.5 * (1.0 + float(theta)),
        dims=dims,
        psi=psi,
        psi_prime=psi_prime,
        psi_at_k=vector_report(psi, dims, int_level),
        psi_at_alpha=vector_report(psi, dims, alpha_level),
        psi_prime_at_alpha=vector_report(psi_prime, dims, alpha_level),
        psi_prime_at_next=vector_report(psi_prime, dims, next_level),
        witness_pairing=pairing,
    )


@dataclass(frozen=True)
class CpFailureCertificate:
    """Audit trail of the CP post-composition failure construction."""

    d: int
    alpha: float
    t: float
    attenuation: float
    psi_t: np.ndarray
    quadratic_value: float
    predicted_value: float
    flat_value: float
    squeezed_norm_sq: float
    admissibility: AdmissibilityReport

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "alpha": self.alpha,
            "t": self.t,
            "attenuation": self.attenuation,
            "psi_t_re": [float(x) for x in self.psi_t.real],
            "psi_t_im": [float(x) for x in self.psi_t.imag],
            "quadratic_value": self.quadratic_value,
            "predicted_value": self.predicted_value,
            "flat_value": self.flat_value,
            "squeezed_norm_sq": self.squeezed_norm_sq,
            "admissibility": self.admissibility.to_dict(),
        }


def demo_cp_failure(d: int, level: FractionalLevel, t: float) -> CpFailureCertificate:
    """Certify that a CP conjugation after the depolarizing map breaks the
    fractional level alpha = k + theta (theta > 0).

    Steps: take the flat rank-(k+1) vector phi, whose form value on the
    depolarizing Choi matrix W is 1 - t(k+1) < 0 for t past the integer
    threshold 1/(k+1); scale its last Schmidt direction by 1/theta (the
    smallest attenuation making the squeezed vector admissible at alpha);
    the normalized squeezed vector psi_t is boundary-admissible at alpha
    yet pairs negatively with the post-composed Choi matrix, with value
    (1 - t(k+1)) (k+1) / (k + theta^2) exactly.

    Requires t > 1/(k+1) (otherwise no negativity exists and the call is
    refused).  Exceeding the level's own threshold t*(alpha) only weakens
    the interpretation (the base map is then not alpha-positive), so it
    warns instead of failing.
    """
    d = int(d)
    if level.d != d:
        raise ValueError(f"level was built for d={level.d}, got d={d}")
    k, theta = level.k, level.theta
    if theta == 0.0:
        raise ValueError("integer levels admit no such failure; need theta > 0")
    if level.r > d:
        raise ValueError(f"need local dimension at least {k + 1}")
    t = float(t)
    t_next = depolarizing_threshold(make_level(float(k + 1), d))
    if t <= t_next:
        raise ValueError(
            f"t={t} is inside the integer-level window (t <= {t_next}); no negativity"
        )
    t_alpha = depolarizing_threshold(level)
    if t > t_alpha:
        warnings.warn(
            f"t={t} exceeds the level's threshold {t_alpha}; the base map is not "
            "positive at this level, the certificate only demonstrates the mechanism",
            stacklevel=2,
        )

    dims = square_dims(d)
    w = choi_depolarizing(d, t)

    # Flat rank-(k+1) vector and its negative form value on W.
    flat = extremal_vector(make_level(float(k + 1), d), dims)
    flat_value = quadratic_form(w, flat)

    # Smallest attenuation making the squeezed flat vector alpha-admissible:
    # s_{k+1}/t_A <= (theta/k) * sum_{j<=k} s_j with a flat spectrum forces
    # t_A = 1/theta.
    attenuation = 1.0 / theta
    scale = np.ones(d)
    scale[k] = attenuation
    squeezed = flat.reshape(d, d) / scale[None, :]
    squeezed_norm_sq = float(np.linalg.norm(squeezed) ** 2)
    psi_t = squeezed.reshape(-1) / np.sqrt(squeezed_norm_sq)

    lift = np.diag(scale).astype(complex)
    post = choi_postcompose(w, lift, dims)
    value = quadratic_form(post, psi_t)
    predicted = flat_value / squeezed_norm_sq

    report = vector_report(psi_t, dims, level)
    if not report.admissible:
        raise ArithmeticError("squeezed vector failed its admissibility check")
    if abs(value - predicted) > 1e-10:
        raise ArithmeticError("quadratic value drifted from its closed form")
    if not value < 0.0:
        raise ArithmeticError("construction failed to produce a negative value")

    return CpFailureCertificate(
        d=d,
        alpha=level.alpha,
        t=t,
        attenuation=attenuation,
        psi_t=psi_t,
        quadratic_value=value,
        predicted_value=predicted,
        flat_value=flat_value,
        squeezed_norm_sq=squeezed_norm_sq,
        admissibility=report,
    )
