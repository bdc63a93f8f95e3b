import pytest

from polder.errors import ExtrapolationError
from polder.models import QuadResult
from polder.services.extrapolation import eta_extrapolate, extrapolate_with_error

ETAS = (0.4, 0.2, 0.1, 0.05)


def test_constant_sequence():
    result = extrapolate_with_error([(eta, 3.5) for eta in ETAS[:3]])
    assert result.value == pytest.approx(3.5, abs=1e-12)
    assert result.est_error < 1e-9


def test_linear_sequence_is_exact():
    assert eta_extrapolate([(eta, 1.0 + 2.0 * eta) for eta in ETAS[:3]]) == pytest.approx(1.0, abs=1e-12)


def test_quadratic_sequence_is_exact():
    values = [(eta, -4.0 + 0.5 * eta - 7.0 * eta ** 2) for eta in ETAS]
    result = extrapolate_with_error(values)
    assert result.value == pytest.approx(-4.0, abs=1e-10)
    assert result.order == 3


def test_order_of_points_does_not_matter():
    values = [(eta, 2.0 - eta + eta ** 2) for eta in ETAS]
    assert eta_extrapolate(values) == pytest.approx(eta_extrapolate(values[::-1]), abs=1e-12)


def test_error_estimate_tracks_truncation():
    values = [(eta, 1.0 + eta ** 3) for eta in ETAS[:3]]
    result = extrapolate_with_error(values)
    assert result.est_error > 0
    assert abs(result.value - 1.0) <= 2 * result.est_error


def test_too_few_points():
    with pytest.raises(ExtrapolationError):
        eta_extrapolate([(0.2, 1.0), (0.1, 1.0)])


def test_non_monotone_etas():
    with pytest.raises(ExtrapolationError):
        eta_extrapolate([(0.2, 1.0), (0.1, 1.0), (0.3, 1.0)])


def test_noisy_sequence_is_rejected():
    with pytest.raises(ExtrapolationError):
        extrapolate_with_error(list(zip(ETAS, (1.0, 2.0, 1.0, 2.0))))


def test_accepts_quadrature_results():
    values = [(eta, QuadResult(value=5.0 + eta, imag_residual=0.0, est_error=1e-9, evaluations=10))
              for eta in ETAS[:3]]
    assert eta_extrapolate(values) == pytest.approx(5.0, abs=1e-12)
