from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from ..core.schemas import BarrierSystem, SolutionBranch
from .docs import phase_time_sample_request, curve_sample_request


class Command(str, Enum):
    PHASE_TIME = "phase-time"
    SWEEP = "sweep"
    CURVE = "curve"
    VERIFY = "verify"
    ACCURACY = "accuracy"


class SweepAxis(str, Enum):
    ENERGY = "energy"
    WIDTH = "width"
    GAP = "gap"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


SWEEP_FIELDS = {
    SweepAxis.ENERGY: "energy",
    SweepAxis.WIDTH: "width",
    SweepAxis.GAP: "gap",
}


class CurveRequestModel(BaseModel):
    """
    Threshold-curve request: branches and either an explicit beta list or a sampled range.

    Attributes:
        branches (List[SolutionBranch]): Subset of {A, B}.
        beta_min (float): Lower end of the beta range, > 0.
        beta_max (float): Upper end of the beta range, < 1.
        samples (int): Number of evenly spaced betas, >= 2.
        betas (Optional[List[float]]): Explicit betas; overrides the range when given.
    """
    branches: List[SolutionBranch] = Field(default_factory=lambda: [SolutionBranch.A, SolutionBranch.B], min_length=1)
    beta_min: float = Field(0.5, gt=0, lt=1)
    beta_max: float = Field(0.999, gt=0, lt=1)
    samples: int = Field(200, ge=2)
    betas: Optional[List[float]] = Field(None, min_length=1)

    model_config = curve_sample_request

    @model_validator(mode='after')
    def perform_after_validations(self):
        """
        Validates the beta range and the branch set.

        Raises:
            ValueError: If the range is degenerate, a beta lies outside (0, 1] or a branch is Degenerate.
        """
        if self.beta_min >= self.beta_max:
            raise ValueError("beta_min has to be lower than beta_max")
        if SolutionBranch.DEGENERATE in self.branches:
            raise ValueError("threshold curves exist only for branches A and B")
        if self.betas is not None and any(not 0.0 < beta <= 1.0 for beta in self.betas):
            raise ValueError("every beta has to lie in (0, 1]")
        return self


class AccuracyRequestModel(BaseModel):
    """
    Scan of the branch formulas against the exact phase time along E, with V0 following E so that
    the evanescent wave number stays at q.

    Attributes:
        branches (List[SolutionBranch]): Subset of {A, B}.
        energy_min (float): Lowest energy, > mc^2.
        energy_max (float): Highest energy.
        samples (int): Number of log-spaced energies, >= 2.
        energies (Optional[List[float]]): Explicit energies; override the range when given.
        q (float): Evanescent wave number, in (0, 1].
        width (float): Barrier width a, >= 0.
        gap (float): Separation L, >= 0.
    """
    branches: List[SolutionBranch] = Field(default_factory=lambda: [SolutionBranch.A, SolutionBranch.B], min_length=1)
    energy_min: float = Field(10.0, gt=1)
    energy_max: float = Field(1000.0, gt=1)
    samples: int = Field(41, ge=2)
    energies: Optional[List[float]] = Field(None, min_length=1)
    q: float = Field(0.05, gt=0, le=1)
    width: float = Field(0.1, ge=0, allow_inf_nan=False)
    gap: float = Field(10.0, ge=0, allow_inf_nan=False)

    @model_validator(mode='after')
    def perform_after_validations(self):
        """
        Validates the energy range and the branch set.

        Raises:
            ValueError: If the range is degenerate, an energy is not above mc^2 or a branch is Degenerate.
        """
        if self.energy_min >= self.energy_max:
            raise ValueError("energy_min has to be lower than energy_max")
        if SolutionBranch.DEGENERATE in self.branches:
            raise ValueError("branch formulas exist only for branches A and B")
        if self.energies is not None and any(not energy > 1.0 for energy in self.energies):
            raise ValueError("every energy has to lie above mc^2")
        return self


class PhaseTimeRequestModel(BarrierSystem):
    """
    Single-point request: a BarrierSystem that must also lie in the tunneling window.
    """
    model_config = phase_time_sample_request

    @model_validator(mode='after')
    def perform_after_validations(self):
        self.check_regime()
        return self


class RunConfig(BaseModel):
    """
    Full configuration of one CLI run.

    Attributes:
        command (Command): What to compute.
        system (Optional[BarrierSystem]): Scenario for phase-time, sweep and verify.
        sweep_axis (Optional[SweepAxis]): Field varied by a sweep.
        sweep_start (Optional[float]): First axis value.
        sweep_stop (Optional[float]): Last axis value.
        sweep_samples (int): Number of rows, >= 2.
        curve (CurveRequestModel): Threshold-curve settings.
        accuracy (AccuracyRequestModel): Branch-formula accuracy scan settings.
        output (OutputFormat): CSV or JSON.
        output_path (Optional[str]): Target file, standard output when None.
    """
    command: Command
    system: Optional[BarrierSystem] = None
    sweep_axis: Optional[SweepAxis] = None
    sweep_start: Optional[float] = None
    sweep_stop: Optional[float] = None
    sweep_samples: int = Field(11, ge=2)
    curve: CurveRequestModel = Field(default_factory=CurveRequestModel)
    accuracy: AccuracyRequestModel = Field(default_factory=AccuracyRequestModel)
    output: OutputFormat = OutputFormat.CSV
    output_path: Optional[str] = None

    @model_validator(mode='after')
    def perform_after_validations(self):
        """
        Validates that every command has what it needs.

        Raises:
            ValueError: If a system or sweep range is missing or degenerate; TunnelingError subclasses
                if the phase-time system is outside the tunneling window.
        """
        if self.command in (Command.PHASE_TIME, Command.SWEEP) and self.system is None:
            raise ValueError(f"{self.command.value} needs a barrier system")
        if self.command is Command.PHASE_TIME:
            self.system.check_regime()
        if self.command is Command.SWEEP:
            self._validate_sweep()
        return self

    def _validate_sweep(self) -> None:
        if self.sweep_axis is None or self.sweep_start is None or self.sweep_stop is None:
            raise ValueError("sweep needs an axis, a start and a stop")
        if self.sweep_start == self.sweep_stop:
            raise ValueError("sweep range is degenerate")
        if self.sweep_axis is not SweepAxis.ENERGY and min(self.sweep_start, self.sweep_stop) < 0:
            raise ValueError(f"{self.sweep_axis.value} sweep cannot go below 0")
