import pytest
from hypothesis import given, strategies as st

from clustergun import estimator
from clustergun.params import PhysicalParams

P = PhysicalParams()


def test_unit_efficiency():
    for n in (1, 5, 40):
        est = estimator.coincidence_rate(P, 1.0, n)
        assert est.coincidence_rate == est.rep_rate


def test_default_operating_point():
    est = estimator.coincidence_rate(P, 0.18, 12)
    assert est.rep_rate == pytest.approx(4.199e8, rel=1e-3)
    assert 0.01 <= est.coincidence_rate <= 1.0
    assert est.coincidence_rate == pytest.approx(est.rep_rate * 0.18 ** 12, rel=1e-12)


def test_eta_ratio():
    a = estimator.coincidence_rate(P, 0.5, 1).coincidence_rate
    b = estimator.coincidence_rate(P, 0.5, 2).coincidence_rate
    assert a / b == pytest.approx(2, rel=1e-14)


def test_required_efficiency():
    rep = estimator.repetition_rate(P)
    assert estimator.required_efficiency(P, 7, rep) == pytest.approx(1, rel=1e-14)
    eta = estimator.required_efficiency(P, 12, 0.1)
    assert 0.1 <= eta <= 0.3
    with pytest.raises(ValueError, match="infeasible"):
        estimator.required_efficiency(P, 3, 2 * rep)


def test_duty_factor():
    assert estimator.repetition_rate(P, 0.5) == pytest.approx(0.5 * estimator.repetition_rate(P))
    with pytest.raises(ValueError):
        estimator.repetition_rate(P, 0.0)


def test_zero_field():
    with pytest.raises(ValueError):
        estimator.coincidence_rate(PhysicalParams(b_field=0.0), 0.2, 3)


def test_as_dict_keys():
    assert set(estimator.coincidence_rate(P, 0.3, 2).as_dict()) == {
        "rep_rate_hz", "coincidence_rate_hz", "eta", "n"}


@given(st.integers(1, 40), st.floats(1e-3, 1e8))
def test_round_trip(n, target):
    eta = estimator.required_efficiency(P, n, target)
    back = estimator.coincidence_rate(P, eta, n).coincidence_rate
    assert back == pytest.approx(target, rel=1e-10)


@given(st.floats(0.01, 0.99), st.floats(0.001, 0.5), st.integers(1, 30))
def test_monotone(eta, step, n):
    lo = estimator.coincidence_rate(P, eta, n).coincidence_rate
    hi = estimator.coincidence_rate(P, min(1.0, eta + step), n).coincidence_rate
    assert hi > lo
    assert estimator.coincidence_rate(P, eta, n + 1).coincidence_rate < lo
