import math

import pytest

from spinpair.model import InvalidParameterError, ModelParams, energy_scales
from spinpair.thermal import Temperature
from spinpair.entanglement import lambdas_closed, concurrence
from spinpair.criticality import (
    UndefinedConditionError,
    concurrence_T0,
    critical_b,
    critical_temperature,
    critical_temperature_detail,
    detect_revival,
    larger_revival_condition,
)
from spinpair.verify import bisect_critical_field


def test_zero_temperature_branches():
    verdict = concurrence_T0(ModelParams(J=1, gamma=0.2, Jz=-1, B=0, b=0))
    assert verdict.branch == "sigma_phase"
    assert verdict.concurrence == pytest.approx(1.0)

    verdict = concurrence_T0(ModelParams(J=1, gamma=1, Jz=0, B=0, b=0))
    assert verdict.branch == "degenerate"
    assert verdict.concurrence == 0.0

    verdict = concurrence_T0(ModelParams(J=1, gamma=0.2, Jz=-1, B=0.8, b=2))
    assert verdict.branch == "psi_phase"
    assert verdict.concurrence == pytest.approx(1.0 / math.sqrt(5.0), abs=1e-12)


def test_zero_temperature_symmetric_under_sign_flips():
    p = ModelParams(J=1.4, gamma=0.6, Jz=-0.3, B=0.5, b=0.9)
    c = concurrence_T0(p).concurrence
    assert concurrence_T0(ModelParams(-p.J, p.gamma, p.Jz, p.B, p.b)).concurrence == c
    assert concurrence_T0(ModelParams(p.J, -p.gamma, p.Jz, p.B, p.b)).concurrence == c


def test_critical_field_examples():
    assert critical_b(ModelParams(J=1, gamma=0.2, Jz=-1, B=0)) == pytest.approx(
        math.sqrt(0.44), abs=1e-12
    )
    assert critical_b(ModelParams(J=1, gamma=0.9, Jz=-1, B=0)) == pytest.approx(
        math.sqrt(2.61), abs=1e-12
    )
    assert critical_b(ModelParams(J=1, gamma=0.5, Jz=0, B=0)) is None


def test_critical_field_requires_reachable_crossing():
    # (eta - Jz)^2 > J^2 alone is not enough: with eta - Jz < 0 the inner
    # scale xi >= |J| can never equal it, so no transition exists in b
    assert critical_b(ModelParams(J=1, gamma=0.2, Jz=4, B=0.5)) is None
    # boundary case eta - Jz = |J| is degenerate exactly at b = 0: absent
    assert critical_b(ModelParams(J=1, gamma=1, Jz=0, B=0)) is None


def test_critical_field_ignores_b_input():
    a = critical_b(ModelParams(J=1, gamma=0.2, Jz=-1, B=0, b=0))
    b = critical_b(ModelParams(J=1, gamma=0.2, Jz=-1, B=0, b=2.7))
    assert a == b


def test_critical_field_increases_with_anisotropy():
    values = [
        critical_b(ModelParams(J=1, gamma=g, Jz=-1, B=0)) for g in (0.2, 0.6, 0.9)
    ]
    assert values[0] < values[1] < values[2]


def test_bisection_agrees_with_formula():
    for gamma in (0.2, 0.6, 0.9):
        p = ModelParams(J=1, gamma=gamma, Jz=-1, B=0)
        located = bisect_critical_field(p)
        assert located == pytest.approx(critical_b(p), abs=1e-6)


def test_larger_revival_examples():
    assert larger_revival_condition(ModelParams(J=1, gamma=0.2, Jz=-1, B=0.8)) is True
    assert larger_revival_condition(ModelParams(J=1, gamma=0.6, Jz=-0.2, B=0.8)) is True
    # B = 0 plateau is already maximal, nothing can beat it
    assert larger_revival_condition(ModelParams(J=1, gamma=0.2, Jz=-1, B=0)) is False


def test_larger_revival_boundary_is_strict():
    p0 = ModelParams(J=1, gamma=0.5, Jz=0, B=0.7)
    eta = energy_scales(p0).eta
    boundary = ModelParams(J=1, gamma=0.5, Jz=eta - eta / 0.5, B=0.7)
    assert larger_revival_condition(boundary) is False


def test_larger_revival_undefined_without_anisotropy():
    with pytest.raises(UndefinedConditionError):
        larger_revival_condition(ModelParams(J=1, gamma=0, Jz=0, B=3))


def test_critical_temperature_xx_against_closed_root():
    # C is proportional to sinh(1/T) - 1 here, so T_c solves sinh(1/T) = 1
    expected = 1.0 / math.asinh(1.0)
    tc = critical_temperature(ModelParams(J=1, gamma=0, Jz=0, B=0, b=0), 10.0)
    assert tc == pytest.approx(expected, abs=1e-6)
    detail = critical_temperature_detail(ModelParams(J=1, gamma=0, Jz=0, B=0, b=0), 10.0)
    assert detail is not None
    tc2, lo, hi = detail
    assert lo <= tc2 <= hi


def test_critical_temperature_absent_without_exchange():
    assert critical_temperature(ModelParams(J=0, gamma=0.5, Jz=1, B=2, b=1), 10.0) is None


def test_critical_temperature_grows_with_inhomogeneity():
    t4 = critical_temperature(ModelParams(J=1, gamma=0.2, Jz=1, B=4, b=4), 6.0)
    t6 = critical_temperature(ModelParams(J=1, gamma=0.2, Jz=1, B=4, b=6), 6.0)
    assert t4 is not None and t6 is not None
    assert t6 > t4


def test_critical_temperature_validates_bound():
    with pytest.raises(InvalidParameterError):
        critical_temperature(ModelParams(), 0.0)


def test_detect_revival_uniform_field_case():
    report = detect_revival(ModelParams(J=1, gamma=0.2, Jz=-1, B=0), None, b_max=3.0, n=301)
    assert report.has_revival is True
    assert report.plateau_value == pytest.approx(1.0)
    assert report.revival_peak_value == pytest.approx(1.0 / 1.2, abs=1e-6)
    assert report.larger_revival is False
    assert report.revival_peak_location > report.drop_location


def test_detect_revival_larger_revival_case():
    p = ModelParams(J=1, gamma=0.2, Jz=-1, B=0.8)
    eta = energy_scales(p).eta
    report = detect_revival(p, None, b_max=4.0, n=401)
    assert report.has_revival is True
    assert report.plateau_value == pytest.approx(0.2 / eta, abs=1e-6)
    assert report.revival_peak_value == pytest.approx(1.0 / (eta + 1.0), abs=1e-6)
    assert report.larger_revival is True


def test_detect_revival_no_exchange():
    report = detect_revival(ModelParams(J=0, gamma=0.2, Jz=-1, B=0.8), None, b_max=3.0, n=301)
    assert report.has_revival is False
    assert report.plateau_value == 0.0


def test_detect_revival_flags_out_of_range_transition():
    report = detect_revival(ModelParams(J=1, gamma=0.9, Jz=-1, B=0), None, b_max=1.0, n=200)
    assert report.transition_beyond_range is True
    assert report.has_revival is False


def test_detect_revival_monotone_step_up():
    # tiny plateau, large revived branch: the curve steps up at the
    # transition with no dip below the plateau, and still counts as a
    # (larger) revival
    p = ModelParams(J=1, gamma=0.05, Jz=-0.5, B=math.sqrt(1 - 0.05**2))
    report = detect_revival(p, None, b_max=3.0, n=301)
    assert report.has_revival is True
    assert report.larger_revival is True
    assert larger_revival_condition(p) is True


def test_detect_revival_finite_temperature():
    p = ModelParams(J=1, gamma=0.3, Jz=0, B=4)
    report = detect_revival(p, Temperature(0.2), b_max=8.0, n=400)
    assert report.has_revival is True
    assert report.revival_peak_value > report.plateau_value
    # spot-check the sampled peak against a direct evaluation
    from dataclasses import replace

    direct = concurrence(
        lambdas_closed(replace(p, b=report.revival_peak_location), Temperature(0.2))
    )
    assert report.revival_peak_value == pytest.approx(direct, abs=1e-12)


def test_detect_revival_validates_inputs():
    with pytest.raises(InvalidParameterError):
        detect_revival(ModelParams(), None, b_max=-1.0, n=200)
    with pytest.raises(InvalidParameterError):
        detect_revival(ModelParams(), None, b_max=1.0, n=10)


def test_zero_temperature_agrees_with_small_temperature():
    for p in [
        ModelParams(J=1, gamma=0.2, Jz=-1, B=0, b=0),
        ModelParams(J=1, gamma=0.2, Jz=-1, B=0.8, b=2),
        ModelParams(J=2, gamma=0.7, Jz=0.5, B=1.5, b=0.4),
    ]:
        scales = energy_scales(p)
        assert abs(scales.xi - (scales.eta - p.Jz)) >= 0.05
        cold = concurrence_T0(p).concurrence
        warm = concurrence(lambdas_closed(p, Temperature(1e-3)))
        assert cold == pytest.approx(warm, abs=1e-3)
