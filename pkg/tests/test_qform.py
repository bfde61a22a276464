import numpy as np
import pytest

from certicube import qform
from certicube.errors import DimensionMismatch
from certicube.qform import QuadraticForm

from util import rand_symmetric_form


def test_evaluate_identity_form():
    phi = QuadraticForm(np.eye(2))
    assert qform.evaluate(phi, [3.0, 4.0]) == pytest.approx(25.0)


def test_evaluate_mixed_form():
    phi = QuadraticForm([[0.0, 0.5], [0.5, 0.0]])
    assert qform.evaluate(phi, [1.0, 1.0]) == pytest.approx(1.0)


def test_evaluate_zero_form():
    phi = QuadraticForm(np.zeros((3, 3)))
    assert qform.evaluate(phi, [1.0, -2.0, 5.0]) == 0.0


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        qform.evaluate(QuadraticForm(np.eye(2)), [1.0, 2.0, 3.0])


def test_construction_symmetrizes():
    phi = QuadraticForm([[1.0, 2.0], [0.0, 3.0]])
    assert phi.coeffs[0, 1] == phi.coeffs[1, 0] == 1.0
    # x^T A x is preserved by symmetrization
    x = np.array([0.7, -1.3])
    raw = np.array([[1.0, 2.0], [0.0, 3.0]])
    assert qform.evaluate(phi, x) == pytest.approx(x @ raw @ x)


def test_operator_norm_identity():
    assert qform.operator_norm(QuadraticForm(np.eye(2))) == pytest.approx(1.0)


def test_operator_norm_mixed_form():
    phi = QuadraticForm([[0.0, 0.5], [0.5, 0.0]])
    norm = qform.operator_norm(phi)
    assert norm == pytest.approx(0.5, abs=1e-13)
    # dense sampling of the unit circle as an independent oracle
    angles = np.linspace(0.0, 2 * np.pi, 100000)
    xs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    sampled = np.max(np.abs(np.einsum("ki,ij,kj->k", xs, phi.coeffs, xs)))
    assert sampled == pytest.approx(norm, abs=1e-8)


def test_operator_norm_diagonal():
    phi = QuadraticForm(np.diag([3.0, -5.0]))
    assert qform.operator_norm(phi) == pytest.approx(5.0)


def test_sum_abs_bound_examples():
    assert qform.sum_abs_bound(QuadraticForm(np.eye(3))) == pytest.approx(3.0)
    phi = QuadraticForm([[0.0, 0.5], [0.5, 0.0]])
    assert qform.sum_abs_bound(phi) == pytest.approx(1.0)


def test_property_suite_random_forms():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        phi = rand_symmetric_form(rng, n)
        psi = rand_symmetric_form(rng, n)
        norm = qform.operator_norm(phi)
        x = rng.uniform(-2, 2, size=n)
        # |phi(x)| <= ||phi|| ||x||^2
        assert abs(qform.evaluate(phi, x)) <= norm * (x @ x) + 1e-10
        # ||phi|| <= sum |a_ij|
        assert norm <= qform.sum_abs_bound(phi) + 1e-12
        # homogeneity
        alpha = float(rng.uniform(-3, 3))
        scaled = qform.operator_norm(QuadraticForm(alpha * phi.coeffs))
        assert scaled == pytest.approx(abs(alpha) * norm, rel=1e-12,
                                       abs=1e-13)
        # sub-additivity
        both = qform.operator_norm(QuadraticForm(phi.coeffs + psi.coeffs))
        assert both <= norm + qform.operator_norm(psi) + 1e-10


def test_sampled_max_never_exceeds_norm():
    rng = np.random.default_rng(9)
    phi = rand_symmetric_form(rng, 2)
    norm = qform.operator_norm(phi)
    angles = rng.uniform(0.0, 2 * np.pi, size=100000)
    xs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    sampled = float(np.max(np.abs(
        np.einsum("ki,ij,kj->k", xs, phi.coeffs, xs))))
    assert sampled <= norm + 1e-10
    assert norm - sampled <= 1e-6
