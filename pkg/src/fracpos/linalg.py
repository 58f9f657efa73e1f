"""Dense complex linear algebra for bipartite vectors and operators.

Conventions used throughout the package:

* a vector on an (n, m) tensor space stores the coefficient of
  ``e_i (x) f_j`` at flat position ``i*m + j``, so a row-major reshape to
  ``(n, m)`` is its matricization and ``numpy.kron(u, v)`` is the product
  vector ``u (x) v``;
* ``vec_col`` is the column-stacking vectorization, the one satisfying
  ``vec(A X B) == (B.T kron A) vec(X)``.

Targets dense arrays of moderate size (local dimension up to a few dozen).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Singular values below RANK_CUTOFF * sigma_1 count as zero in rank checks.
RANK_CUTOFF = 1e-12


@dataclass(frozen=True)
class BipartiteDims:
    """Dimensions (n, m) of a two-factor tensor space."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if int(self.n) != self.n or int(self.m) != self.m:
            raise ValueError("dimensions must be integers")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))
        if self.n < 1 or self.m < 1:
            raise ValueError(f"dimensions must be positive, got ({self.n}, {self.m})")

    @property
    def d(self) -> int:
        """Local dimension min(n, m), the length of a Schmidt spectrum."""
        return min(self.n, self.m)

    @property
    def total(self) -> int:
        return self.n * self.m


def square_dims(d: int) -> BipartiteDims:
    """Dims of the square space C^d (x) C^d."""
    return BipartiteDims(d, d)


def _as_vector(psi, dims: BipartiteDims) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != dims.total:
        raise ValueError(f"vector has {psi.size} entries, dims expect {dims.total}")
    return psi


def matricize(psi, dims: BipartiteDims) -> np.ndarray:
    """Reshape a bipartite vector into its n x m coefficient matrix."""
    return _as_vector(psi, dims).reshape(dims.n, dims.m)


def vectorize(x, dims: BipartiteDims) -> np.ndarray:
    """Inverse of :func:`matricize`."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (dims.n, dims.m):
        raise ValueError(f"matrix has shape {x.shape}, dims expect {(dims.n, dims.m)}")
    return x.reshape(-1)


def vec_col(a) -> np.ndarray:
    """Column-stacking vectorization (satisfies vec(AXB) = (B.T kron A)vec(X))."""
    return np.asarray(a, dtype=complex).T.reshape(-1)


def unvec_col(v, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vec_col` for a rows x cols matrix."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != rows * cols:
        raise ValueError(f"vector has {v.size} entries, expected {rows * cols}")
    return v.reshape(cols, rows).T


def schmidt_spectrum(psi, dims: BipartiteDims) -> np.ndarray:
    """Schmidt coefficients of psi, nonincreasing, length min(n, m).

    These are the singular values of the matricization; the vector need not
    be normalized.  Raises ValueError on the zero vector.
    """
    psi = _as_vector(psi, dims)
    if np.linalg.norm(psi) == 0.0:
        raise ValueError("zero vector has no Schmidt decomposition")
    return np.linalg.svd(psi.reshape(dims.n, dims.m), compute_uv=False)


def schmidt_frames(psi, dims: BipartiteDims):
    """Full Schmidt data (s, U, Y) with psi = sum_t s[t] * U[:, t] (x) Y[:, t].

    U has orthonormal columns in C^n, Y in C^m (plain transpose of the right
    singular factor, no conjugation, to match the tensor convention).
    """
    psi = _as_vector(psi, dims)
    if np.linalg.norm(psi) == 0.0:
        raise ValueError("zero vector has no Schmidt decomposition")
    u, s, vh = np.linalg.svd(psi.reshape(dims.n, dims.m), full_matrices=False)
    return s, u, vh.T


def ky_fan_norm(x, k: int) -> float:
    """Sum of the k largest singular values."""
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2:
        raise ValueError("expected a matrix")
    kmax = min(x.shape)
    if not 1 <= k <= kmax:
        raise ValueError(f"order k={k} outside [1, {kmax}]")
    s = np.linalg.svd(x, compute_uv=False)
    return float(s[:k].sum())


def trace_norm(x) -> float:
    """Sum of all singular values (Ky-Fan norm of full order)."""
    x = np.asarray(x, dtype=complex)
    return ky_fan_norm(x, min(x.shape))


def maximally_entangled(d: int) -> np.ndarray:
    """Unit vector (1/sqrt d) sum_i e_i (x) e_i on C^d (x) C^d."""
    if d < 1:
        raise ValueError("d must be positive")
    psi = np.zeros(d * d, dtype=complex)
    psi[:: d + 1] = 1.0 / np.sqrt(d)
    return psi


def omega_projector(d: int) -> np.ndarray:
    """Rank-one projector onto the maximally entangled state."""
    omega = maximally_entangled(d)
    return np.outer(omega, omega.conj())


def quadratic_form(w, psi) -> float:
    """Real value <psi, W psi> for Hermitian W."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    w = np.asarray(w, dtype=complex)
    return float(np.real(psi.conj() @ (w @ psi)))


def hermitian_deviation(w) -> float:
    """Max-entry distance of a square matrix from its Hermitian part."""
    w = np.asarray(w, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("expected a square matrix")
    return float(np.abs(w - w.conj().T).max())


def require_hermitian(w, size: int | None = None, tol: float = 1e-10) -> np.ndarray:
    """Validate and return W as a Hermitian complex array."""
    w = np.asarray(w, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("expected a square matrix")
    if size is not None and w.shape[0] != size:
        raise ValueError(f"operator is {w.shape[0]}x{w.shape[0]}, expected {size}x{size}")
    if hermitian_deviation(w) > tol * max(1.0, float(np.abs(w).max())):
        raise ValueError("operator is not Hermitian within tolerance")
    return w
