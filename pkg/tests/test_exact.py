import math

import pytest

from tests.test_physics_constants import test_system_a, test_system_a_expected, test_system_b, \
    test_system_degenerate, test_system_resonant


@pytest.mark.parametrize("test_input",
     [
         test_system_a,
         test_system_b,
         test_system_degenerate,
         test_system_resonant,
     ])
def test_zero_width_is_free_flight(test_input):
    from src.core.kinematics import derive_kinematics
    from src.core.schemas import BarrierSystem
    from src.exact.appendix import phase_time_exact
    system = BarrierSystem(**test_input).with_changes(width=0.0)
    expected = system.gap / derive_kinematics(system).group_velocity
    assert phase_time_exact(system).value == pytest.approx(expected, rel=1e-12)


def test_zero_width_terms(system_a):
    from src.core.kinematics import derive_kinematics
    from src.exact.appendix import appendix_terms
    system = system_a.with_changes(width=0.0)
    kin = derive_kinematics(system)
    terms = appendix_terms(kin, system)
    assert terms.h1 == 0.0
    assert terms.delta == 0.0
    assert terms.gamma == pytest.approx(8.0 * kin.matching_ratio ** 2, rel=1e-14)


def test_exact_result_fields(system_a):
    from src.core.schemas import Method
    from src.exact.appendix import phase_time_exact
    result = phase_time_exact(system_a)
    assert result.method is Method.EXACT
    assert result.qa == pytest.approx(0.05 * test_system_a_expected["q"])
    assert math.isfinite(result.value)


def test_free_time(system_a):
    from src.core.schemas import Method
    from src.exact.appendix import free_time
    result = free_time(system_a)
    assert result.method is Method.FREE_REFERENCE
    assert result.value == pytest.approx(test_system_a_expected["tau_free"], rel=1e-14)


def test_transparent_barrier_close_to_free(system_a):
    from src.exact.appendix import free_time, phase_time_exact
    tau = phase_time_exact(system_a).value
    assert abs(tau - free_time(system_a).value) < 0.02 * tau


def test_si_and_natural_agree(system_a):
    from src.core.units import natural_to_si
    from src.exact.appendix import phase_time_exact
    assert phase_time_exact(natural_to_si(system_a)).value == pytest.approx(phase_time_exact(system_a).value,
                                                                             rel=1e-9)


def test_small_argument_hyperbolics():
    from src.exact.appendix import _hyperbolics
    for x in (1e-9, 5e-5, 1e-4, 0.3, 2.0):
        sinh_x, sinh_2x, cosh_2x = _hyperbolics(x)
        assert sinh_x == pytest.approx(math.sinh(x), rel=1e-14)
        assert sinh_2x == pytest.approx(math.sinh(2.0 * x), rel=1e-13)
        assert cosh_2x == pytest.approx(math.cosh(2.0 * x), rel=1e-14)


def test_singular_denominator(system_a, monkeypatch):
    from src.core.errors import SingularDenominator
    from src.exact.appendix import phase_time_exact
    monkeypatch.setattr("src.exact.appendix.SINGULAR_DENOMINATOR_EPS", 1e300)
    with pytest.raises(SingularDenominator) as e:
        phase_time_exact(system_a)
    assert e.value.code == "singular_denominator"


def test_injected_terms_change_result(system_a, corrupted_evaluator):
    from src.exact.appendix import phase_time_exact
    assert corrupted_evaluator(system_a).value != pytest.approx(phase_time_exact(system_a).value, rel=1e-6)
