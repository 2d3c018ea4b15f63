import importlib
import logging
import math

import pytest
from pydantic_core import ValidationError

from tests.test_physics_constants import test_system_a, test_system_a_expected, test_system_b, \
    test_system_degenerate, test_regime_below_rest, test_regime_klein, test_regime_klein_above, \
    test_regime_propagating, test_regime_propagating_below, test_structural_negative_width, \
    test_structural_zero_mass, test_structural_nan_energy, test_scaled_mass_system


@pytest.mark.parametrize("test_input",
     [
         test_structural_negative_width,
         test_structural_zero_mass,
         test_structural_nan_energy,
     ])
def test_barrier_system_structure(test_input):
    from src.core.schemas import BarrierSystem
    fields, (error_type, loc) = test_input
    raised = False
    try:
        BarrierSystem(**fields)
    except ValidationError as e:
        raised = True
        assert e.errors()[0]['type'] == error_type
        assert e.errors()[0]['loc'] == loc
    assert raised


@pytest.mark.parametrize("test_input",
     [
         test_regime_below_rest,
         test_regime_klein,
         test_regime_klein_above,
         test_regime_propagating,
         test_regime_propagating_below,
     ])
def test_regime_errors(test_input):
    from src.core.errors import TunnelingError
    from src.core.kinematics import derive_kinematics
    from src.core.schemas import BarrierSystem
    fields, code = test_input
    system = BarrierSystem(**fields)
    with pytest.raises(TunnelingError) as e:
        derive_kinematics(system)
    assert e.value.code == code


def test_regime_errors_are_distinct():
    from src.core.errors import EnergyBelowRest, KleinRegime, Propagating
    assert len({EnergyBelowRest.code, KleinRegime.code, Propagating.code}) == 3
    assert not issubclass(KleinRegime, Propagating)
    assert not issubclass(Propagating, KleinRegime)


def test_kinematics_values():
    from src.core.kinematics import derive_kinematics
    from src.core.schemas import BarrierSystem
    kin = derive_kinematics(BarrierSystem(**test_system_a))
    for field in ("k", "q", "matching_ratio", "phase_velocity", "group_velocity"):
        assert getattr(kin, field) == pytest.approx(test_system_a_expected[field], rel=1e-14)
    assert kin.branch.value == test_system_a_expected["branch"]


@pytest.mark.parametrize("test_input,expected",
     [
         (test_system_a, "A"),
         (test_system_b, "B"),
         (test_system_degenerate, "Degenerate"),
     ])
def test_solution_branch(test_input, expected):
    from src.core.kinematics import derive_kinematics
    from src.core.schemas import BarrierSystem
    assert derive_kinematics(BarrierSystem(**test_input)).branch.value == expected


def test_velocities_are_reciprocal(system_a, system_b):
    from src.core.kinematics import derive_kinematics
    for system in (system_a, system_b):
        kin = derive_kinematics(system)
        assert kin.phase_velocity * kin.group_velocity == pytest.approx(1.0, rel=1e-14)
        assert kin.group_velocity < 1.0 < kin.phase_velocity


def test_near_edge_keeps_precision():
    from src.core.kinematics import derive_kinematics
    from src.core.schemas import BarrierSystem
    kin = derive_kinematics(BarrierSystem(energy=1.0 + 1e-12, potential=1.0 + 1e-12))
    assert kin.k == pytest.approx(math.sqrt(2e-12), rel=1e-6)
    assert kin.q == 1.0


def test_transparency_warning(system_a, caplog):
    from src.core.kinematics import derive_kinematics, validate_transparency
    kin = derive_kinematics(system_a)
    with caplog.at_level(logging.WARNING):
        assert validate_transparency(kin, 0.05) == pytest.approx(0.05 * kin.q)
        assert "transparency threshold" not in caplog.text
        assert validate_transparency(kin, 1.0) == pytest.approx(kin.q)
    assert "transparency threshold" in caplog.text


def test_scaled_mass_matches_unit_mass(system_a):
    from src.core.schemas import BarrierSystem
    from src.core.units import to_natural
    natural = to_natural(BarrierSystem(**test_scaled_mass_system))
    for field in ("energy", "potential", "width", "gap"):
        assert getattr(natural, field) == pytest.approx(getattr(system_a, field), rel=1e-14)


def test_si_round_trip_of_kinematics(system_a):
    from src.core.kinematics import derive_kinematics
    from src.core.units import natural_to_si, to_natural
    si = natural_to_si(system_a)
    assert si.units.value == "si"
    assert si.energy == pytest.approx(5.0 * 510998.95, rel=1e-6)
    natural = to_natural(si)
    assert natural.energy == pytest.approx(system_a.energy, rel=1e-12)
    assert natural.width == pytest.approx(system_a.width, rel=1e-12)
    assert derive_kinematics(si).k == pytest.approx(derive_kinematics(system_a).k, rel=1e-10)


def test_from_natural_time(system_a):
    from scipy import constants as const
    from src.core.units import Dimension, from_natural, natural_to_si
    si = natural_to_si(system_a)
    assert from_natural(1.0, Dimension.TIME, si) == pytest.approx(const.hbar / (const.m_e * const.c ** 2), rel=1e-12)
    assert from_natural(1.0, Dimension.TIME, system_a) == 1.0


def test_with_changes_validates(system_a):
    from src.core.schemas import BarrierSystem
    changed = system_a.with_changes(width=0.0)
    assert isinstance(changed, BarrierSystem)
    assert changed.width == 0.0 and changed.gap == system_a.gap
    with pytest.raises(ValidationError):
        system_a.with_changes(gap=-1.0)


def test_time_result_rejects_non_finite():
    from src.core.schemas import Method, TimeResult
    with pytest.raises(ValidationError):
        TimeResult(value=float("inf"), method=Method.EXACT)


@pytest.mark.parametrize("variable,value",
     [
         ("TUNNELGATE_DIFF_STEP", "1"),
         ("TUNNELGATE_DIFF_STEP", "not-a-number"),
         ("TUNNELGATE_TRANSPARENCY_THRESHOLD", "-0.1"),
         ("TUNNELGATE_DIFF_SCHEME", "forward"),
         ("TUNNELGATE_PHASE_CONVENTION", "everything"),
     ])
def test_invalid_settings(monkeypatch, variable, value):
    from src import settings
    monkeypatch.setenv(variable, value)
    with pytest.raises(ValueError):
        importlib.reload(settings)
    monkeypatch.undo()
    importlib.reload(settings)
    assert settings.PHASE_CONVENTION in ("structure", "gap", "none")
