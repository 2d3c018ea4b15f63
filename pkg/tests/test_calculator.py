import json
import math

import pytest

from tests.test_physics_constants import test_system_a, test_system_a_expected, test_sweep_energies, \
    test_sweep_errors, test_sweep_branches, test_csv_header, test_csv_header_si, test_merge_count, \
    test_branch_accuracy_scenario, test_branch_accuracy_points


def test_phase_time_record(calculator, system_a):
    from src.calculator.service import RECORD_COLUMNS
    record = calculator.phase_time(system_a)
    assert list(record) == RECORD_COLUMNS
    assert record["branch"] == "A"
    assert record["k"] == pytest.approx(test_system_a_expected["k"])
    assert record["tau_free"] == pytest.approx(test_system_a_expected["tau_free"])
    assert record["tau_branch"] == pytest.approx(test_system_a_expected["tau_branch"])
    assert record["traversal_velocity"] == pytest.approx(test_system_a_expected["traversal_velocity"], rel=1e-6)
    assert record["verdict"] == test_system_a_expected["verdict"]
    assert record["tau_free"] - record["tau_branch"] == pytest.approx(record["time_gain"], rel=1e-9)


def test_phase_time_record_degenerate(calculator, system_degenerate):
    record = calculator.phase_time(system_degenerate)
    assert record["branch"] == "Degenerate"
    assert math.isfinite(record["tau_exact"])
    assert record["tau_branch"] is None
    assert record["time_gain"] is None
    assert record["verdict"] is None


def test_phase_time_record_zero_path(calculator, system_a):
    record = calculator.phase_time(system_a.with_changes(width=0.0, gap=0.0))
    assert record["tau_exact"] == 0.0
    assert record["traversal_velocity"] is None
    assert record["verdict"] is None


def test_phase_time_uses_injected_evaluator(calculator, corrupted_calculator, system_a):
    assert corrupted_calculator.phase_time(system_a)["tau_exact"] != calculator.phase_time(system_a)["tau_exact"]


def test_sweep_keeps_failed_rows_in_order(calculator):
    from src.calculator.schemas import RunConfig
    from src.core.schemas import BarrierSystem
    cfg = RunConfig(command="sweep", system=BarrierSystem(**test_system_a), sweep_axis="energy",
                    sweep_start=7.0, sweep_stop=4.0, sweep_samples=len(test_sweep_energies))
    rows = calculator.sweep(cfg)
    assert [row["energy"] for row in rows] == pytest.approx(test_sweep_energies)
    assert [row["error"] for row in rows] == test_sweep_errors
    assert [row["branch"] for row in rows] == test_sweep_branches


def test_sweep_width(calculator):
    from src.calculator.schemas import RunConfig
    from src.core.schemas import BarrierSystem
    cfg = RunConfig(command="sweep", system=BarrierSystem(**test_system_a), sweep_axis="width",
                    sweep_start=0.0, sweep_stop=0.1, sweep_samples=5)
    rows = calculator.sweep(cfg)
    assert [row["width"] for row in rows] == pytest.approx([0.0, 0.025, 0.05, 0.075, 0.1])
    assert all(row["error"] is None for row in rows)
    assert rows[0]["tau_exact"] == pytest.approx(rows[0]["tau_free"], rel=1e-12)


def test_curve_rows(calculator):
    from src.calculator.schemas import CurveRequestModel
    rows = calculator.curve(CurveRequestModel(branches=["A", "B"], beta_min=0.87, beta_max=0.99, samples=5))
    assert len(rows) == 10
    assert [row["branch"] for row in rows] == ["A"] * 5 + ["B"] * 5
    assert all(row["feasible"] for row in rows)


def test_curve_explicit_betas(calculator):
    from src.calculator.schemas import CurveRequestModel
    rows = calculator.curve(CurveRequestModel(branches=["A"], betas=[0.9, 0.5]))
    assert [row["beta"] for row in rows] == [0.5, 0.9]
    assert rows[1]["alpha_ratio"] == pytest.approx(0.36)


@pytest.mark.parametrize("test_input,message",
     [
         ({"beta_min": 0.9, "beta_max": 0.8}, "Value error, beta_min has to be lower than beta_max"),
         ({"branches": ["Degenerate"]}, "Value error, threshold curves exist only for branches A and B"),
         ({"betas": [0.5, 1.2]}, "Value error, every beta has to lie in (0, 1]"),
     ])
def test_curve_request_validation(test_input, message):
    from pydantic_core import ValidationError
    from src.calculator.schemas import CurveRequestModel
    with pytest.raises(ValidationError) as e:
        CurveRequestModel(**test_input)
    assert e.value.errors()[0]['msg'] == message


@pytest.mark.parametrize("test_input,message",
     [
         ({"command": "phase-time"}, "Value error, phase-time needs a barrier system"),
         ({"command": "sweep", "system": test_system_a}, "Value error, sweep needs an axis, a start and a stop"),
         ({"command": "sweep", "system": test_system_a, "sweep_axis": "gap", "sweep_start": 1.0, "sweep_stop": 1.0},
          "Value error, sweep range is degenerate"),
         ({"command": "sweep", "system": test_system_a, "sweep_axis": "gap", "sweep_start": -1.0, "sweep_stop": 1.0},
          "Value error, gap sweep cannot go below 0"),
     ])
def test_run_config_validation(test_input, message):
    from pydantic_core import ValidationError
    from src.calculator.schemas import RunConfig
    with pytest.raises(ValidationError) as e:
        RunConfig(**test_input)
    assert e.value.errors()[0]['msg'] == message


def test_thresholds(calculator):
    thresholds = calculator.thresholds()
    assert round(thresholds["critical_beta_a"], 4) == 0.8633
    assert round(thresholds["critical_beta_b"], 4) == 0.7709
    assert thresholds["gain_threshold_beta"] == pytest.approx(math.sqrt(2.0 / 3.0))


def test_render_csv():
    from src.calculator.export import render_csv
    text = render_csv([{"a": 1.5, "b": None, "c": "A", "d": True}], ["a", "b", "c", "d"])
    lines = text.split("\n")
    assert lines[0] == test_csv_header
    assert lines[1] == "a,b,c,d"
    assert lines[2] == "1.500000000000e+00,,A,true"
    assert "\r" not in text


def test_render_json():
    from src.calculator.export import render_json
    rows = json.loads(render_json([{"a": math.nan, "b": 2.0}, {"a": math.inf}], ["a", "b"]))
    assert rows == [{"a": None, "b": 2.0}, {"a": None, "b": None}]


def test_write_output_is_atomic(tmp_path):
    from src.calculator.export import write_output
    target = tmp_path / "out.csv"
    write_output("first\n", str(target))
    write_output("second\n", str(target))
    assert target.read_text() == "second\n"
    assert [path.name for path in tmp_path.iterdir()] == ["out.csv"]


def test_write_output_stdout(capsys):
    from src.calculator.export import write_output
    write_output("row\n", None)
    assert capsys.readouterr().out == "row\n"


def test_thresholds_suite():
    from src.calculator.verification import thresholds_suite
    assert thresholds_suite().passed


def test_curve_suite():
    from src.calculator.verification import curve_suite
    assert curve_suite(samples=50, grid=10).passed


def test_convergence_suite():
    from src.calculator.verification import convergence_suite
    from src.exact.appendix import phase_time_exact
    assert convergence_suite(phase_time_exact).passed


def test_oracle_grid():
    from src.calculator.verification import oracle_grid
    from src.core.kinematics import derive_kinematics
    systems = oracle_grid()
    assert len(systems) == 240
    assert {derive_kinematics(system).branch.value for system in systems} == {"A", "B", "Degenerate"}


def test_verify(calculator):
    report = calculator.verify()
    assert [suite.name for suite in report.suites] == ["thresholds", "curve", "oracle", "degeneracies",
                                                       "convergence"]
    assert report.passed, [suite.detail for suite in report.suites if not suite.passed]


def test_verify_negative_control(corrupted_calculator):
    report = corrupted_calculator.verify()
    assert not report.passed
    failed = {suite.name for suite in report.suites if not suite.passed}
    assert "oracle" in failed


def test_width_sweep_time_gain_is_monotone(calculator):
    from src.calculator.schemas import RunConfig
    from src.core.schemas import BarrierSystem
    cfg = RunConfig(command="sweep", system=BarrierSystem(**test_system_a), sweep_axis="width",
                    sweep_start=0.01, sweep_stop=0.2, sweep_samples=11)
    gains = [row["time_gain"] for row in calculator.sweep(cfg)]
    assert gains[0] > 0.0
    assert all(later > earlier for earlier, later in zip(gains, gains[1:]))


def test_gap_sweep_traversal_velocity_approaches_group_velocity(calculator):
    from src.calculator.schemas import RunConfig
    from src.core.schemas import BarrierSystem
    cfg = RunConfig(command="sweep", system=BarrierSystem(**test_system_a), sweep_axis="gap",
                    sweep_start=1.0, sweep_stop=1000.0, sweep_samples=5)
    rows = calculator.sweep(cfg)
    group_velocity = rows[0]["k"] / rows[0]["energy"]
    excess = [abs(row["traversal_velocity"] - group_velocity) for row in rows]
    assert all(later < earlier for earlier, later in zip(excess, excess[1:]))
    assert excess[-1] < 1e-3


def test_accuracy_rows(calculator):
    from src.calculator.schemas import AccuracyRequestModel
    from src.calculator.service import ACCURACY_COLUMNS
    scenario = test_branch_accuracy_scenario
    rows = calculator.accuracy(AccuracyRequestModel(energies=[scenario["energy"]], q=scenario["q"],
                                                    width=scenario["width"], gap=scenario["gap"]))
    assert [list(row) for row in rows] == [ACCURACY_COLUMNS, ACCURACY_COLUMNS]
    for row, (branch, tau_exact, relative_gap) in zip(rows, test_branch_accuracy_points):
        assert row["branch"] == branch
        assert row["q"] == pytest.approx(scenario["q"], rel=1e-3)
        assert row["tau_exact"] == pytest.approx(tau_exact, rel=1e-4)
        assert row["relative_gap"] == pytest.approx(relative_gap, abs=1e-3)


def test_accuracy_scan_is_ordered(calculator):
    from src.calculator.schemas import AccuracyRequestModel
    rows = calculator.accuracy(AccuracyRequestModel(branches=["B"], energy_min=10.0, energy_max=1000.0, samples=3))
    assert [row["energy"] for row in rows] == pytest.approx([10.0, 100.0, 1000.0])
    assert all(row["branch"] == "B" for row in rows)
    assert all(math.isfinite(row["relative_gap"]) for row in rows)


@pytest.mark.parametrize("test_input,message",
     [
         ({"energy_min": 100.0, "energy_max": 10.0}, "Value error, energy_min has to be lower than energy_max"),
         ({"branches": ["Degenerate"]}, "Value error, branch formulas exist only for branches A and B"),
         ({"energies": [20.0, 1.0]}, "Value error, every energy has to lie above mc^2"),
     ])
def test_accuracy_request_validation(test_input, message):
    from pydantic_core import ValidationError
    from src.calculator.schemas import AccuracyRequestModel
    with pytest.raises(ValidationError) as e:
        AccuracyRequestModel(**test_input)
    assert e.value.errors()[0]['msg'] == message


def test_render_csv_tags_si_runs():
    from src.calculator.export import render_csv
    from src.core.schemas import UnitSystem
    assert render_csv([], ["a"], UnitSystem.SI).split("\n")[0] == test_csv_header_si


def test_relative_error_is_strict():
    from src.calculator.verification import _relative_error
    assert _relative_error(0.02, 0.01) == pytest.approx(1.0)
    assert _relative_error(1.0, -2.0) == pytest.approx(1.5)


def test_merged_systems():
    from src.calculator.verification import merged_systems
    systems = merged_systems()
    assert len(systems) == test_merge_count
    assert all(system.gap == 0.0 and system.width > 0.0 for system in systems)
