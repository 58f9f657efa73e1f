"""Shared random generators for the test suite.

Everything takes an explicit numpy Generator so tests stay reproducible;
seeds live in the tests themselves.
"""

import numpy as np

from fracpos import BipartiteDims, FractionalLevel


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2.0


def random_unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def admissible_spectrum(rng: np.random.Generator, level: FractionalLevel) -> np.ndarray:
    """Random unit-norm nonincreasing spectrum satisfying the level's bounds.

    Top block strictly positive and sorted; the extra coefficient is a
    random fraction of its ratio bound (also capped by the smallest top
    entry so the order is preserved); zeros beyond the rank ceiling.
    """
    s = np.zeros(level.d)
    top = np.sort(rng.uniform(0.5, 1.0, size=level.k))[::-1]
    s[: level.k] = top
    if level.theta > 0.0 and level.k < level.d:
        bound = (level.theta / level.k) * top.sum()
        s[level.k] = rng.uniform(0.0, 1.0) * min(bound, top[-1])
    return s / np.linalg.norm(s)


def admissible_matrix(
    rng: np.random.Generator, level: FractionalLevel, rows: int, cols: int, scale: float = 1.0
) -> np.ndarray:
    spectrum = admissible_spectrum(rng, level)
    u = haar_unitary(rng, rows)[:, : level.d]
    v = haar_unitary(rng, cols)[:, : level.d]
    return scale * (u * spectrum) @ v.conj().T


def admissible_vector(
    rng: np.random.Generator, level: FractionalLevel, dims: BipartiteDims
) -> np.ndarray:
    mat = admissible_matrix(rng, level, dims.n, dims.m)
    mat /= np.linalg.norm(mat)
    return mat.reshape(-1)
