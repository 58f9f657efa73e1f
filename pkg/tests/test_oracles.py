import numpy as np
import pytest

from fracpos import (
    BipartiteDims,
    GridSpec,
    choi_depolarizing,
    depolarizing_form_minimum,
    fidelity_threshold,
    form_minimum_bruteforce_2x2,
    kernel_backend,
    make_level,
    max_omega_overlap,
    max_omega_overlap_bruteforce,
    minimize_form,
    omega_projector,
)
from fracpos import _grid_py

from util import random_hermitian

REDUCED = GridSpec(unitary_resolution=10, schmidt_resolution=10, refine_steps=30)


def test_kernel_backend_reports_a_lane():
    assert kernel_backend() in ("compiled", "python")


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(unitary_resolution=0)
    with pytest.raises(ValueError):
        GridSpec(refine_steps=-1)


def test_lanes_compute_identical_tables():
    try:
        from fracpos import _gridkern
    except ImportError:
        pytest.skip("compiled lane not built")
    rng = np.random.default_rng(61)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    w4 = ((g + g.conj().T) / 2.0).reshape(2, 2, 2, 2)
    a_grid = np.linspace(0.0, np.pi / 2.0, 9)
    b_grid = 2.0 * np.pi * np.arange(8) / 8.0
    fast = _gridkern.frame_pair_tables(w4, a_grid, b_grid, 16)
    slow = _grid_py.frame_pair_tables(w4, a_grid, b_grid, 16)
    for lhs, rhs in zip(fast, slow):
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_form_oracle_identity_and_projector():
    level = make_level(1.5, 2)
    value = form_minimum_bruteforce_2x2(np.eye(4), level, REDUCED)
    assert value == pytest.approx(1.0, abs=1e-9)
    value = form_minimum_bruteforce_2x2(-omega_projector(2), level, REDUCED)
    assert value == pytest.approx(-fidelity_threshold(2, level), abs=1e-6)


def test_form_oracle_depolarizing_spot_value():
    level = make_level(1.5, 2)
    value = form_minimum_bruteforce_2x2(choi_depolarizing(2, 0.7), level, REDUCED)
    assert value == pytest.approx(-0.26, abs=1e-3)


def test_form_oracle_agrees_with_optimizer():
    rng = np.random.default_rng(62)
    dims = BipartiteDims(2, 2)
    for alpha in (1.25, 1.75):
        level = make_level(alpha, 2)
        w = random_hermitian(rng, 4)
        oracle = form_minimum_bruteforce_2x2(w, level, REDUCED)
        numeric = minimize_form(w, dims, level).value
        assert oracle == pytest.approx(numeric, abs=1e-3)


def test_form_oracle_never_worse_at_double_resolution():
    rng = np.random.default_rng(63)
    level = make_level(1.5, 2)
    w = random_hermitian(rng, 4)
    coarse = form_minimum_bruteforce_2x2(
        w, level, GridSpec(unitary_resolution=8, schmidt_resolution=8, refine_steps=30)
    )
    fine = form_minimum_bruteforce_2x2(
        w, level, GridSpec(unitary_resolution=16, schmidt_resolution=16, refine_steps=30)
    )
    assert fine <= coarse + 1e-9


def test_form_oracle_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        form_minimum_bruteforce_2x2(np.eye(9), make_level(1.5, 2))
    with pytest.raises(ValueError):
        form_minimum_bruteforce_2x2(np.eye(4), make_level(1.5, 3))


def test_overlap_oracle_closed_form_spot_values():
    assert max_omega_overlap_bruteforce(2, make_level(1.5, 2)) == pytest.approx(
        0.9, abs=1e-6
    )
    assert max_omega_overlap_bruteforce(3, make_level(2.0, 3)) == pytest.approx(
        2.0 / 3.0, abs=1e-6
    )
    assert max_omega_overlap_bruteforce(2, make_level(2.0, 2)) == pytest.approx(
        1.0, abs=1e-9
    )
    assert max_omega_overlap_bruteforce(2, make_level(1.0, 2)) == pytest.approx(
        0.5, abs=1e-12
    )


def test_overlap_oracle_tracks_fidelity_threshold():
    for d, alpha in ((2, 1.25), (3, 2.25), (3, 1.5)):
        level = make_level(alpha, d)
        got = max_omega_overlap_bruteforce(d, level)
        assert got == pytest.approx(max_omega_overlap(d, level), abs=1e-6)


def test_overlap_oracle_rejects_unsupported_dimension():
    with pytest.raises(ValueError):
        max_omega_overlap_bruteforce(4, make_level(1.5, 4))
    with pytest.raises(ValueError):
        max_omega_overlap_bruteforce(3, make_level(1.5, 2))
