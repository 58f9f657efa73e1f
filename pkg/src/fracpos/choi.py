"""Choi matrices of linear maps M_n -> M_m and fractional Kraus checks.

The Choi matrix is assembled block-wise, C = sum_ij E_ij (x) Phi(E_ij), an
n*m x n*m operator whose (i, j) block is Phi(E_ij).  With the package's
tensor conventions this equals sum_i vec_col(A_i) vec_col(A_i)* for any
Kraus decomposition Phi(X) = sum_i A_i X A_i*.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .admissibility import DEFAULT_TOL, AdmissibilityReport, FractionalLevel, matrix_report
from .linalg import BipartiteDims, omega_projector, unvec_col, vec_col

# Deviations from Hermiticity above this are worth a warning before symmetrizing.
HERMITICITY_WARN = 1e-10


def _kraus_shapes(kraus_ops) -> tuple[int, int]:
    ops = list(kraus_ops)
    if not ops:
        raise ValueError("Kraus list must be nonempty")
    first = np.asarray(ops[0], dtype=complex)
    if first.ndim != 2:
        raise ValueError("Kraus operators must be matrices")
    m, n = first.shape
    for op in ops[1:]:
        if np.asarray(op).shape != (m, n):
            raise ValueError("Kraus operators must share a common shape")
    return m, n


def choi_from_kraus(kraus_ops) -> np.ndarray:
    """Choi matrix of X -> sum_i A_i X A_i* for m x n Kraus operators A_i."""
    m, n = _kraus_shapes(kraus_ops)
    c = np.zeros((n * m, n * m), dtype=complex)
    for op in kraus_ops:
        v = vec_col(np.asarray(op, dtype=complex))
        c += np.outer(v, v.conj())
    return c


def choi_from_action(apply_map, n: int, m: int) -> np.ndarray:
    """Choi matrix from a callable X -> Phi(X) probed on matrix units.

    The result is symmetrized; a deviation from Hermiticity beyond
    HERMITICITY_WARN triggers a warning (the callable is then not a
    Hermiticity-preserving map, or is buggy).
    """
    if n < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    blocks = np.empty((n, m, n, m), dtype=complex)
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[i, j] = 1.0
            out = np.asarray(apply_map(unit), dtype=complex)
            if out.shape != (m, m):
                raise ValueError(f"map returned shape {out.shape}, expected {(m, m)}")
            blocks[i, :, j, :] = out
    c = blocks.reshape(n * m, n * m)
    dev = float(np.abs(c - c.conj().T).max())
    if dev > HERMITICITY_WARN:
        warnings.warn(
            f"Choi matrix deviates from Hermiticity by {dev:.3e}; symmetrizing",
            stacklevel=2,
        )
    return 0.5 * (c + c.conj().T)


def choi_depolarizing(d: int, t: float) -> np.ndarray:
    """Choi matrix of X -> Tr(X) I - t X on M_d: identity minus t*d times
    the maximally entangled projector."""
    if d < 2:
        raise ValueError("d must be at least 2")
    t = float(t)
    return np.eye(d * d, dtype=complex) - (t * d) * omega_projector(d)


def choi_postcompose(choi, a, dims: BipartiteDims) -> np.ndarray:
    """Choi matrix of Ad_A composed after the map with the given Choi matrix.

    For Phi: M_n -> M_m and A: C^m -> C^p this is (I_n (x) A) C (I_n (x) A)*,
    the Choi matrix of X -> A Phi(X) A*.
    """
    c = np.asarray(choi, dtype=complex)
    if c.shape != (dims.total, dims.total):
        raise ValueError(f"Choi matrix has shape {c.shape}, dims expect {dims.total}")
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[1] != dims.m:
        raise ValueError(f"post-composition operator must have {dims.m} columns")
    lift = np.kron(np.eye(dims.n, dtype=complex), a)
    return lift @ c @ lift.conj().T


def choi_to_kraus(choi, dims: BipartiteDims, tol: float = 1e-12) -> list[np.ndarray]:
    """Kraus operators of a PSD Choi matrix via its eigendecomposition.

    Eigenvalues below tol * lambda_max are discarded; an eigenvalue below
    -tol raises ValueError.  The zero map yields a single zero operator.
    """
    c = np.asarray(choi, dtype=complex)
    if c.shape != (dims.total, dims.total):
        raise ValueError(f"Choi matrix has shape {c.shape}, dims expect {dims.total}")
    vals, vecs = np.linalg.eigh(0.5 * (c + c.conj().T))
    if vals[0] < -tol:
        raise ValueError(f"Choi matrix has negative eigenvalue {vals[0]:.3e}")
    cutoff = tol * max(float(vals[-1]), 0.0)
    ops = [
        unvec_col(np.sqrt(lam) * vecs[:, idx], dims.m, dims.n)
        for idx, lam in enumerate(vals)
        if lam > cutoff
    ]
    if not ops:
        ops = [np.zeros((dims.m, dims.n), dtype=complex)]
    return ops


def apply_kraus(kraus_ops, x) -> np.ndarray:
    """Evaluate X -> sum_i A_i X A_i*."""
    m, n = _kraus_shapes(kraus_ops)
    x = np.asarray(x, dtype=complex)
    if x.shape != (n, n):
        raise ValueError(f"input has shape {x.shape}, expected {(n, n)}")
    out = np.zeros((m, m), dtype=complex)
    for op in kraus_ops:
        op = np.asarray(op, dtype=complex)
        out += op @ x @ op.conj().T
    return out


def apply_choi(choi, dims: BipartiteDims, x) -> np.ndarray:
    """Evaluate the map encoded by a Choi matrix on an n x n input."""
    c = np.asarray(choi, dtype=complex)
    if c.shape != (dims.total, dims.total):
        raise ValueError(f"Choi matrix has shape {c.shape}, dims expect {dims.total}")
    x = np.asarray(x, dtype=complex)
    if x.shape != (dims.n, dims.n):
        raise ValueError(f"input has shape {x.shape}, expected {(dims.n, dims.n)}")
    blocks = c.reshape(dims.n, dims.m, dims.n, dims.m)
    return np.einsum("iajb,ij->ab", blocks, x)


@dataclass(frozen=True)
class KrausCertificate:
    """Per-operator admissibility evidence for a Kraus list."""

    passed: bool
    alpha: float
    reports: list[AdmissibilityReport]

    def to_dict(self) -> dict:
        return {
            "passed": bool(self.passed),
            "alpha": float(self.alpha),
            "reports": [r.to_dict() for r in self.reports],
        }


def verify_fractional_kraus(
    kraus_ops, level: FractionalLevel, tol: float = DEFAULT_TOL
) -> KrausCertificate:
    """Check that every Kraus operator is admissible at the given level.

    A map with such a decomposition carries the level's positivity
    structure; the certificate records one admissibility report per
    operator, in order.
    """
    m, n = _kraus_shapes(kraus_ops)
    if level.d != min(m, n):
        raise ValueError(
            f"level was built for d={level.d}, Kraus operators have min dimension {min(m, n)}"
        )
    reports = [matrix_report(op, level, tol=tol) for op in kraus_ops]
    return KrausCertificate(
        passed=all(r.admissible for r in reports),
        alpha=level.alpha,
        reports=reports,
    )
