import json

import numpy as np
import pytest

from fracpos import (
    BipartiteDims,
    demo_cp_failure,
    demo_strict_inclusion,
    make_level,
)


def test_strict_inclusion_verdict_pattern():
    report = demo_strict_inclusion(1, 0.5, BipartiteDims(3, 3))
    assert not report.psi_at_k.admissible
    assert report.psi_at_alpha.admissible
    assert not report.psi_prime_at_alpha.admissible
    assert report.psi_prime_at_next.admissible
    assert report.witness_pairing < 0.0
    assert report.k == 1
    assert report.theta == 0.5
    assert 0.5 < report.theta_prime < 1.0


def test_strict_inclusion_vectors_are_unit_norm():
    report = demo_strict_inclusion(2, 0.25, BipartiteDims(4, 4))
    np.testing.assert_allclose(np.linalg.norm(report.psi), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(report.psi_prime), 1.0, atol=1e-12)


def test_strict_inclusion_report_serializes():
    report = demo_strict_inclusion(1, 0.75, BipartiteDims(3, 3))
    blob = json.dumps(report.to_dict(), sort_keys=True)
    parsed = json.loads(blob)
    assert parsed["alpha"] == 1.75
    assert parsed["psi_at_alpha"]["admissible"] is True
    assert parsed["witness_pairing"] < 0.0


def test_strict_inclusion_needs_square_space():
    with pytest.raises(ValueError):
        demo_strict_inclusion(1, 0.5, BipartiteDims(2, 3))


def test_cp_failure_qubit_certificate():
    level = make_level(1.5, 2)
    cert = demo_cp_failure(2, level, 0.55)
    assert cert.quadratic_value == pytest.approx(-0.16, abs=1e-10)
    assert cert.predicted_value == pytest.approx(cert.quadratic_value, abs=1e-10)
    assert cert.flat_value == pytest.approx(-0.1, abs=1e-12)
    assert cert.squeezed_norm_sq == pytest.approx(0.625, abs=1e-12)
    assert cert.attenuation == 2.0
    assert cert.admissibility.admissible
    assert cert.admissibility.observed_ratio == pytest.approx(0.5, abs=1e-12)
    np.testing.assert_allclose(np.linalg.norm(cert.psi_t), 1.0, atol=1e-12)


def test_cp_failure_serializes():
    level = make_level(1.5, 2)
    cert = demo_cp_failure(2, level, 0.55)
    parsed = json.loads(json.dumps(cert.to_dict(), sort_keys=True))
    assert parsed["quadratic_value"] == pytest.approx(-0.16, abs=1e-10)
    assert len(parsed["psi_t_re"]) == 4
    assert parsed["admissibility"]["admissible"] is True


def test_cp_failure_wider_space():
    cert = demo_cp_failure(3, make_level(1.5, 3), 0.55)
    assert cert.quadratic_value < 0.0
    assert cert.admissibility.admissible


def test_cp_failure_warns_past_the_level_threshold():
    with pytest.warns(UserWarning):
        cert = demo_cp_failure(3, make_level(2.5, 3), 0.38)
    assert cert.quadratic_value < 0.0
    assert cert.admissibility.admissible


def test_cp_failure_domain_errors():
    with pytest.raises(ValueError):
        demo_cp_failure(2, make_level(1.0, 2), 0.55)
    with pytest.raises(ValueError):
        demo_cp_failure(2, make_level(1.5, 2), 0.45)
    with pytest.raises(ValueError):
        demo_cp_failure(3, make_level(1.5, 2), 0.55)
