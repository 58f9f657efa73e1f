"""Extremal quadratic forms, isotropic-slice membership, and witnesses.

For a level alpha on an n (x) m space, the central quantity is

    lambda(W) = min { <psi, W psi> : psi unit and alpha-admissible },

a concave, 1-Lipschitz (operator norm) function of Hermitian W, attained by
compactness.  Closed forms are available for the depolarizing family and for
the overlap with the maximally entangled state; `minimize_form` estimates
lambda(W) for arbitrary W by a deterministic batched multistart alternation
between exact Schmidt-weight eigenproblems and Riemannian descent on the
Schmidt frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .admissibility import FractionalLevel, extremal_spectrum
from .linalg import BipartiteDims, omega_projector, require_hermitian, schmidt_frames
from .thresholds import fidelity_threshold

# Relative slack for boundary cases in exact slice membership.
MEMBERSHIP_SLACK = 1e-12
# Estimates whose admissibility residual exceeds this are discarded.
RESIDUAL_LIMIT = 1e-7
# Start values within this window of the best are tied; lowest index wins.
TIE_WINDOW = 1e-15


def depolarizing_form_minimum(d: int, t: float, level: FractionalLevel) -> float:
    """Closed-form minimum of the depolarizing Choi form over admissible
    vectors: 1 - t (k + theta)^2 / (k + theta^2).  Requires t >= 0."""
    d = int(d)
    if d < 2:
        raise ValueError("d must be at least 2")
    if level.d != d:
        raise ValueError(f"level was built for d={level.d}, got d={d}")
    t = float(t)
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    k, theta = level.k, level.theta
    return 1.0 - t * (k + theta) ** 2 / (k + theta * theta)


def max_omega_overlap(d: int, level: FractionalLevel) -> float:
    """Largest squared overlap with the maximally entangled state over
    admissible vectors; coincides with the isotropic fidelity threshold."""
    return fidelity_threshold(d, level)


def witness_operator(d: int, level: FractionalLevel) -> np.ndarray:
    """The isotropic witness I - P_omega / f_d(alpha).

    Nonnegative quadratic form on every alpha-admissible vector, vanishing
    on the level's extremal vectors, strictly negative beyond the level.
    """
    f = fidelity_threshold(d, level)
    return np.eye(d * d, dtype=complex) - omega_projector(d) / f


@dataclass(frozen=True)
class IsotropicCoefficients:
    """Coordinates (a, b) of a I + b P_omega on the isotropic slice."""

    a: float
    b: float
    d: int

    @property
    def trace(self) -> float:
        return self.a * self.d * self.d + self.b

    @property
    def is_psd(self) -> bool:
        slack = MEMBERSHIP_SLACK * (abs(self.a) + abs(self.b))
        return self.a >= -slack and self.a + self.b >= -slack

    def matrix(self) -> np.ndarray:
        return self.a * np.eye(self.d * self.d, dtype=complex) + self.b * omega_projector(
            self.d
        )


def twirl_isotropic(x, d: int) -> IsotropicCoefficients:
    """Orthogonal projection of a Hermitian operator on C^d (x) C^d onto
    span{I, P_omega} (equal to its isotropic twirl).

    Solves the 2x2 Gram system a d^2 + b = Tr X, a + b = Tr(P_omega X).
    """
    d = int(d)
    if d < 2:
        raise ValueError("d must be at least 2")
    x = require_hermitian(x, d * d)
    tr = float(np.trace(x).real)
    omega = np.zeros(d * d, dtype=complex)
    omega[:: d + 1] = 1.0 / math.sqrt(d)
    tr_omega = float(np.real(omega.conj() @ (x @ omega)))
    a = (tr - tr_omega) / (d * d - 1)
    return IsotropicCoefficients(a=a, b=tr_omega - a, d=d)


def isotropic_bp_membership(coeffs: IsotropicCoefficients, level: FractionalLevel) -> bool:
    """Exact dual-cone membership of a I + b P_omega at the given level:
    a >= 0 and a + b f_d(alpha) >= 0 (boundary inclusive)."""
    if level.d != coeffs.d:
        raise ValueError(f"level was built for d={level.d}, coefficients have d={coeffs.d}")
    f = fidelity_threshold(coeffs.d, level)
    slack = MEMBERSHIP_SLACK * (abs(coeffs.a) + abs(coeffs.b))
    return coeffs.a >= -slack and coeffs.a + coeffs.b * f >= -slack


def isotropic_k_membership(coeffs: IsotropicCoefficients, level: FractionalLevel) -> bool:
    """Exact primal-cone membership of a I + b P_omega at the given level:
    PSD with maximally-entangled fidelity at most f_d(alpha)."""
    if level.d != coeffs.d:
        raise ValueError(f"level was built for d={level.d}, coefficients have d={coeffs.d}")
    if not coeffs.is_psd:
        return False
    trace = coeffs.trace
    if trace <= 0.0:
        return True  # the zero operator sits at the cone's apex
    fidelity = (coeffs.a + coeffs.b) / trace
    f = fidelity_threshold(coeffs.d, level)
    return fidelity <= f + MEMBERSHIP_SLACK * (1.0 + abs(fidelity))


# ---------------------------------------------------------------------------
# Multistart minimization of <psi, W psi> over admissible vectors.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for minimize_form; defaults favor reliability over speed."""

    starts: int = 64
    max_iters: int = 250
    seed: int = 0x5EED
    tol: float = 1e-12

    def to_dict(self) -> dict:
        return {
            "starts": self.starts,
            "max_iters": self.max_iters,
            "seed": self.seed,
            "tol": self.tol,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "OptimizerConfig":
        return cls(
            starts=int(obj.get("starts", cls.starts)),
            max_iters=int(obj.get("max_iters", cls.max_iters)),
            seed=int(obj.get("seed", cls.seed)),
            tol=float(obj.get("tol", cls.tol)),
        )


@dataclass(frozen=True)
class FormMinimum:
    """Best admissible estimate found by minimize_form.

    `value` upper-bounds the true minimum and equals the quadratic form at
    `argmin`; `feasibility_residual` is the worst admissibility defect of
    the reported argmin (ratio excess, norm error, rank tail).
    """

    value: float
    argmin: np.ndarray
    level: FractionalLevel
    feasibility_residual: float
    starts_used: int


def _random_frame(rng: np.random.Generator, n: int, r: int) -> np.ndarray:
    z = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    q, rr = np.linalg.qr(z)
    diag = np.diagonal(rr)
    phase = np.where(np.abs(diag) > 0, diag / np.abs(np.where(diag == 0, 1, diag)), 1.0)
    return q * phase.conj()


def _project_feasible(s, level: FractionalLevel) -> np.ndarray:
    """Nearest-in-spirit feasible weight vector: sort, clip the ratio
    coordinate to the boundary, renormalize."""
    r, k, theta = level.r, level.k, level.theta
    s = np.sort(np.abs(np.asarray(s, dtype=float)))[::-1]
    s = s[:r] if s.size >= r else np.concatenate([s, np.zeros(r - s.size)])
    if theta > 0.0 and s[:k].sum() > 0.0:
        s[k] = min(s[k], (theta / k) * s[:k].sum())
    nrm = np.linalg.norm(s)
    if nrm == 0.0:
        return extremal_spectrum(level)
    return s / nrm


def _pair_tensor(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Batched columns u_t (x) v_t: (S, n, r), (S, m, r) -> (S, n*m, r)."""
    s, n, r = u.shape
    m = v.shape[1]
    return np.einsum("sit,sat->siat", u, v).reshape(s, n * m, r)


def _form_values(w: np.ndarray, u: np.ndarray, v: np.ndarray, s: np.ndarray) -> np.ndarray:
    t = _pair_tensor(u, v)
    psi = np.matmul(t, s[..., None])[..., 0]
    return np.real(np.einsum("sp,sp->s", psi.conj(), psi @ w.T))


def _gram(w: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    t = _pair_tensor(u, v)
    q = np.matmul(t.conj().transpose(0, 2, 1), np.matmul(w, t))
    m = q.real
    return 0.5 * (m + m.transpose(0, 2, 1))


def _frame_gradients(w, u, v, s):
    t = _pair_tensor(u, v)
    psi = np.matmul(t, s[..., None])[..., 0]
    wpsi = psi @ w.T  # (W psi) for symmetric access; w.T acts on rows
    mats = wpsi.reshape(u.shape[0], u.shape[1], v.shape[1])
    gu = np.matmul(mats, v.conj()) * s[:, None, :]
    gv = np.matmul(mats.transpose(0, 2, 1), u.conj()) * s[:, None, :]
    return gu, gv


def _tangent(frame: np.ndarray, grad: np.ndarray) -> np.ndarray:
    inner = np.matmul(frame.conj().transpose(0, 2, 1), grad)
    herm = 0.5 * (inner + inner.conj().transpose(0, 2, 1))
    return grad - np.matmul(frame, herm)


def _retract(x: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(x)
    diag = np.diagonal(r, axis1=1, axis2=2).copy()
    diag[diag == 0] = 1.0
    return q * (diag.conj() / np.abs(diag))[:, None, :]


def _facet_basis(level: FractionalLevel) -> np.ndarray | None:
    """Orthonormal basis of the hyperplane where the ratio constraint is
    active, in sorted-magnitude coordinates."""
    if level.theta == 0.0:
        return None
    k, r = level.k, level.r
    normal = np.concatenate([np.full(k, -level.theta / k), [1.0]])
    q, _ = np.linalg.qr(np.concatenate([normal[:, None], np.eye(r)], axis=1))
    return q[:, 1:r]


def _uncanon(sc: np.ndarray, perm: np.ndarray, sign: np.ndarray) -> np.ndarray:
    out = np.empty_like(sc)
    np.put_along_axis(out, perm, sign * sc, axis=1)
    return out


def _inner_solve(m: np.ndarray, level: FractionalLevel, basis):
    """Exact minimization of s^T M s over feasible unit weight vectors,
    via a candidate set: unconstrained eigenvector, ratio-facet
    eigenproblem in canonical coordinates, leave-one-out rank drops, and
    the boundary projection of the unconstrained minimizer."""
    s_count, r, _ = m.shape
    vals, vecs = np.linalg.eigh(m)
    v0 = vecs[..., :, 0]
    val0 = vals[:, 0]
    if basis is None:
        return v0, val0

    k, theta = level.k, level.theta
    absv = np.abs(v0)
    perm = np.argsort(-absv, axis=1, kind="stable")
    s_sorted = np.take_along_axis(absv, perm, 1)
    top = s_sorted[:, :k].sum(axis=1)
    feas0 = s_sorted[:, k] <= (theta / k) * top + 1e-13

    sign = np.where(np.take_along_axis(v0, perm, 1) < 0.0, -1.0, 1.0)
    mp = np.take_along_axis(np.take_along_axis(m, perm[:, :, None], 1), perm[:, None, :], 2)
    mt = mp * sign[:, :, None] * sign[:, None, :]

    cand_vals = [np.where(feas0, val0, np.inf)]
    cand_vecs = [v0]

    # Ratio facet: minimize inside the active-constraint hyperplane.
    mb = np.einsum("ji,sjl,lk->sik", basis, mt, basis)
    fvals, fvecs = np.linalg.eigh(mb)
    sigma = np.einsum("ij,sj->si", basis, fvecs[..., :, 0])
    srt = -np.sort(-np.abs(sigma), axis=1)
    feas_f = srt[:, k] <= (theta / k) * srt[:, :k].sum(axis=1) + 1e-13
    cand_vals.append(np.where(feas_f, fvals[:, 0], np.inf))
    cand_vecs.append(_uncanon(sigma, perm, sign))

    # Rank drops: zero one coordinate, minimize over the rest (always feasible).
    keep_all = np.arange(r)
    for j in range(r):
        keep = keep_all[keep_all != j]
        sub = m[:, keep][:, :, keep]
        dvals, dvecs = np.linalg.eigh(sub)
        vec = np.zeros((s_count, r))
        vec[:, keep] = dvecs[..., :, 0]
        cand_vals.append(dvals[:, 0])
        cand_vecs.append(vec)

    # Boundary projection of the unconstrained minimizer.
    s_proj = s_sorted.copy()
    s_proj[:, k] = np.minimum(s_proj[:, k], (theta / k) * top)
    s_proj /= np.linalg.norm(s_proj, axis=1, keepdims=True)
    pvals = np.einsum("si,sij,sj->s", s_proj, mt, s_proj)
    cand_vals.append(pvals)
    cand_vecs.append(_uncanon(s_proj, perm, sign))

    stacked_vals = np.stack(cand_vals)  # (C, S)
    stacked_vecs = np.stack(cand_vecs)  # (C, S, r)
    choice = np.argmin(stacked_vals, axis=0)
    idx = np.arange(s_count)
    return stacked_vecs[choice, idx], stacked_vals[choice, idx]


def minimize_form(
    w, dims: BipartiteDims, level: FractionalLevel, config: OptimizerConfig | None = None
) -> FormMinimum:
    """Deterministic multistart estimate of the admissible form minimum.

    Seeds: the extremal weights rotated into the Schmidt frames of W's
    bottom eigenvector, that eigenvector with its weights projected to
    feasibility, and Haar-random frames (per-start seed = base seed +
    index).  All starts advance in lockstep (batched), alternating an exact
    inner weight solve with tangent-projected gradient steps on the frames
    retracted by QR; the reported value is the best admissible start,
    ties within 1e-15 resolved to the lowest start index.
    """
    cfg = config if config is not None else OptimizerConfig()
    if cfg.starts < 1:
        raise ValueError("need at least one start")
    if cfg.max_iters < 1:
        raise ValueError("need at least one iteration")
    w = require_hermitian(w, dims.total)
    if level.d != dims.d:
        raise ValueError(f"level was built for d={level.d}, dims have d={dims.d}")
    n, m, r = dims.n, dims.m, level.r
    count = cfg.starts

    _, evecs = np.linalg.eigh(w)
    bottom = evecs[:, 0]
    s_bot, u_bot, y_bot = schmidt_frames(bottom, dims)
    s_star = extremal_spectrum(level)

    u = np.empty((count, n, r), dtype=complex)
    v = np.empty((count, m, r), dtype=complex)
    s = np.empty((count, r))
    u[0], v[0], s[0] = u_bot[:, :r], y_bot[:, :r], s_star
    if count > 1:
        u[1], v[1], s[1] = u_bot[:, :r], y_bot[:, :r], _project_feasible(s_bot, level)
    for i in range(2, count):
        rng = np.random.default_rng(cfg.seed + i)
        u[i] = _random_frame(rng, n, r)
        v[i] = _random_frame(rng, m, r)
        s[i] = s_star

    basis = _facet_basis(level)
    val = _form_values(w, u, v, s)
    eta = np.full(count, 0.2)
    stall = np.zeros(count, dtype=int)
    active = np.ones(count, dtype=bool)

    for _ in range(cfg.max_iters):
        if not active.any():
            break
        gram = _gram(w, u, v)
        s_new, inner_val = _inner_solve(gram, level, basis)
        current = np.einsum("si,sij,sj->s", s, gram, s)
        take = active & (inner_val < current)
        s = np.where(take[:, None], s_new, s)
        val_now = np.where(take, inner_val, current)

        gu, gv = _frame_gradients(w, u, v, s)
        gu = _tangent(u, gu)
        gv = _tangent(v, gv)
        u_try = _retract(u - eta[:, None, None] * gu)
        v_try = _retract(v - eta[:, None, None] * gv)
        val_try = _form_values(w, u_try, v_try, s)
        accept = active & (val_try < val_now - 1e-15)
        u = np.where(accept[:, None, None], u_try, u)
        v = np.where(accept[:, None, None], v_try, v)
        new_val = np.where(accept, val_try, val_now)

        improved = val - new_val > cfg.tol * (1.0 + np.abs(val))
        eta = np.where(accept, np.minimum(eta * 1.25, 1.0), eta * 0.4)
        stall = np.where(improved & active, 0, stall + 1)
        val = new_val
        active &= (stall < 8) & (eta > 1e-13)

    # Canonicalize: absorb signs and sorting into the frames.
    sign = np.where(s >= 0.0, 1.0, -1.0)
    u = u * sign[:, None, :]
    s = s * sign
    order = np.argsort(-s, axis=1, kind="stable")
    s = np.take_along_axis(s, order, 1)
    u = np.take_along_axis(u, order[:, None, :], 2)
    v = np.take_along_axis(v, order[:, None, :], 2)

    psi = np.matmul(_pair_tensor(u, v), s[..., None])[..., 0]
    final_val = np.real(np.einsum("sp,sp->s", psi.conj(), psi @ w.T))
    spectra = np.linalg.svd(psi.reshape(count, n, m), compute_uv=False)
    norms = np.linalg.norm(psi, axis=1)
    k, theta, d = level.k, level.theta, level.d
    if theta > 0.0:
        ratio_excess = np.maximum(
            spectra[:, k] - (theta / k) * spectra[:, :k].sum(axis=1), 0.0
        )
    else:
        ratio_excess = np.zeros(count)
    tail = spectra[:, r] if r < d else np.zeros(count)
    residual = np.maximum.reduce([ratio_excess, np.abs(norms - 1.0), tail])

    ok = residual <= RESIDUAL_LIMIT
    if not ok.any():
        raise ArithmeticError("no start produced an admissible estimate")
    guarded = np.where(ok, final_val, np.inf)
    best = float(guarded.min())
    idx = int(np.argmax(guarded <= best + TIE_WINDOW))
    return FormMinimum(
        value=float(final_val[idx]),
        argmin=psi[idx],
        level=level,
        feasibility_residual=float(residual[idx]),
        starts_used=int(ok.sum()),
    )


def maximize_form(
    w, dims: BipartiteDims, level: FractionalLevel, config: OptimizerConfig | None = None
) -> FormMinimum:
    """Admissible form maximum via minimize_form on -W; the reported value
    lower-bounds the true maximum."""
    est = minimize_form(-np.asarray(w, dtype=complex), dims, level, config)
    return FormMinimum(
        value=-est.value,
        argmin=est.argmin,
        level=est.level,
        feasibility_residual=est.feasibility_residual,
        starts_used=est.starts_used,
    )
