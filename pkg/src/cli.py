import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError
from scipy import constants as const

from .calculator.export import render, write_output
from .calculator.schemas import AccuracyRequestModel, Command, CurveRequestModel, OutputFormat, RunConfig, SweepAxis
from .calculator.service import ACCURACY_COLUMNS, CURVE_COLUMNS, RECORD_COLUMNS, SWEEP_COLUMNS, \
    TunnelingCalculator
from .core.errors import SingularDenominator, TunnelingError
from .core.schemas import BarrierSystem, SolutionBranch, UnitSystem
from .settings import LOG_LEVEL, PROJECT_NAME, VERSION

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_SINGULAR = 3

VERIFY_COLUMNS = ["name", "passed", "max_error", "tolerance", "detail"]
BRANCH_CHOICES = {
    "a": [SolutionBranch.A],
    "b": [SolutionBranch.B],
    "both": [SolutionBranch.A, SolutionBranch.B],
}


def _add_system_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--energy", type=float, required=True, help="total energy E, rest energy included")
    parser.add_argument("--potential", type=float, required=True, help="barrier height V0")
    parser.add_argument("--mass", type=float, default=None,
                        help="particle mass (natural: 1 by default; si: kg, electron mass by default)")
    parser.add_argument("--width", type=float, default=0.0, help="width a of each barrier")
    parser.add_argument("--gap", type=float, default=0.0, help="free separation L")
    parser.add_argument("--units", choices=[unit.value for unit in UnitSystem], default=UnitSystem.NATURAL.value)


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output file, standard output when omitted")
    parser.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], default=OutputFormat.CSV.value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROJECT_NAME,
                                     description="Relativistic double-barrier phase times and superluminality.")
    parser.add_argument("--version", action="version", version=f"{PROJECT_NAME} {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    phase_time = commands.add_parser(Command.PHASE_TIME.value, help="phase times of one system")
    _add_system_arguments(phase_time)
    _add_output_arguments(phase_time)

    sweep = commands.add_parser(Command.SWEEP.value, help="phase times along energy, width or gap")
    _add_system_arguments(sweep)
    _add_output_arguments(sweep)
    sweep.add_argument("--axis", choices=[axis.value for axis in SweepAxis], required=True)
    sweep.add_argument("--start", type=float, required=True)
    sweep.add_argument("--stop", type=float, required=True)
    sweep.add_argument("--samples", type=int, default=11)

    curve = commands.add_parser(Command.CURVE.value, help="V_T = c threshold curves")
    _add_output_arguments(curve)
    curve.add_argument("--branch", choices=list(BRANCH_CHOICES), default="both")
    curve.add_argument("--beta-min", type=float, default=0.5)
    curve.add_argument("--beta-max", type=float, default=0.999)
    curve.add_argument("--samples", type=int, default=200)
    curve.add_argument("--beta", type=float, action="append", default=None, help="explicit beta, repeatable")

    verify = commands.add_parser(Command.VERIFY.value, help="closed form against the scattering oracle")
    _add_output_arguments(verify)

    accuracy = commands.add_parser(Command.ACCURACY.value, help="branch formulas against the exact phase time")
    _add_output_arguments(accuracy)
    accuracy.add_argument("--branch", choices=list(BRANCH_CHOICES), default="both")
    accuracy.add_argument("--energy-min", type=float, default=10.0)
    accuracy.add_argument("--energy-max", type=float, default=1000.0)
    accuracy.add_argument("--samples", type=int, default=41)
    accuracy.add_argument("--energy", type=float, action="append", default=None, help="explicit energy, repeatable")
    accuracy.add_argument("--q", type=float, default=0.05, help="evanescent wave number kept fixed along E")
    accuracy.add_argument("--width", type=float, default=0.1)
    accuracy.add_argument("--gap", type=float, default=10.0)
    return parser


def _system_from_args(args: argparse.Namespace) -> BarrierSystem:
    mass = args.mass
    if mass is None:
        mass = const.m_e if args.units == UnitSystem.SI.value else 1.0
    return BarrierSystem(mass=mass, energy=args.energy, potential=args.potential, width=args.width,
                         gap=args.gap, units=args.units)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Turns parsed arguments into a validated RunConfig.

    Raises:
        ValidationError: If any value is invalid or the phase-time system is outside the tunneling window.
    """
    command = Command(args.command)
    fields = {"command": command, "output": args.format, "output_path": args.out}
    if command in (Command.PHASE_TIME, Command.SWEEP):
        fields["system"] = _system_from_args(args)
    if command is Command.SWEEP:
        fields.update(sweep_axis=args.axis, sweep_start=args.start, sweep_stop=args.stop,
                      sweep_samples=args.samples)
    if command is Command.CURVE:
        fields["curve"] = CurveRequestModel(branches=BRANCH_CHOICES[args.branch], beta_min=args.beta_min,
                                            beta_max=args.beta_max, samples=args.samples, betas=args.beta)
    if command is Command.ACCURACY:
        fields["accuracy"] = AccuracyRequestModel(branches=BRANCH_CHOICES[args.branch], energy_min=args.energy_min,
                                                  energy_max=args.energy_max, samples=args.samples,
                                                  energies=args.energy, q=args.q, width=args.width, gap=args.gap)
    return RunConfig(**fields)


def validation_code(error: ValidationError) -> str:
    """
    Machine-parseable reason of the first validation error: the TunnelingError code when one was raised.
    """
    first = error.errors()[0]
    cause = first.get("ctx", {}).get("error")
    if isinstance(cause, TunnelingError):
        return cause.code
    return first["type"]


def _report(code: str, detail: str) -> None:
    detail = " ".join(str(detail).split())
    sys.stderr.write(f"error={code} detail={detail}\n")


def run(cfg: RunConfig, calculator: TunnelingCalculator) -> int:
    """
    Executes a validated configuration and writes its output.

    Returns:
        int: The process exit code.
    """
    if cfg.command is Command.PHASE_TIME:
        try:
            record = calculator.phase_time(cfg.system)
        except SingularDenominator as e:
            _report(e.code, str(e))
            return EXIT_SINGULAR
        except TunnelingError as e:
            _report(e.code, str(e))
            return EXIT_VALIDATION
        write_output(render([record], RECORD_COLUMNS, cfg.output, cfg.system.units), cfg.output_path)
        return EXIT_OK

    if cfg.command is Command.SWEEP:
        rows = calculator.sweep(cfg)
        write_output(render(rows, SWEEP_COLUMNS, cfg.output, cfg.system.units), cfg.output_path)
        if all(row["error"] is not None for row in rows):
            _report("no_valid_rows", f"every {cfg.sweep_axis.value} sample failed validation")
            return EXIT_VALIDATION
        return EXIT_OK

    if cfg.command is Command.CURVE:
        rows = calculator.curve(cfg.curve)
        write_output(render(rows, CURVE_COLUMNS, cfg.output), cfg.output_path)
        return EXIT_OK

    if cfg.command is Command.ACCURACY:
        try:
            rows = calculator.accuracy(cfg.accuracy)
        except SingularDenominator as e:
            _report(e.code, str(e))
            return EXIT_SINGULAR
        except TunnelingError as e:
            _report(e.code, str(e))
            return EXIT_VALIDATION
        write_output(render(rows, ACCURACY_COLUMNS, cfg.output), cfg.output_path)
        return EXIT_OK

    report = calculator.verify()
    rows = [suite.model_dump() for suite in report.suites]
    write_output(render(rows, VERIFY_COLUMNS, cfg.output), cfg.output_path)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def main(argv: Optional[List[str]] = None, calculator: Optional[TunnelingCalculator] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValidationError as e:
        _report(validation_code(e), e.errors()[0]["msg"])
        return EXIT_VALIDATION
    return run(cfg, calculator or TunnelingCalculator())


if __name__ == "__main__":
    sys.exit(main())
