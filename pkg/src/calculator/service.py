import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from ..analysis.superluminal import classify_system, critical_beta, gain_threshold_beta, threshold_curve, \
    time_gain, traversal_velocity
from ..approx.transparent import BRANCH_FORMULAS, potential_for_q
from ..core.errors import TunnelingError
from ..core.kinematics import derive_kinematics
from ..core.schemas import BarrierSystem, SolutionBranch
from ..core.units import to_natural
from ..exact.appendix import free_time, phase_time_exact
from .schemas import SWEEP_FIELDS, AccuracyRequestModel, CurveRequestModel, RunConfig
from .verification import ExactEvaluator, VerificationReport, run_suites

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["energy", "potential", "mass", "width", "gap", "units", "k", "q", "qa", "branch",
                  "tau_exact", "tau_branch", "tau_free", "time_gain", "traversal_velocity", "verdict"]
SWEEP_COLUMNS = RECORD_COLUMNS + ["error"]
CURVE_COLUMNS = ["branch", "beta", "alpha_ratio", "feasible"]
ACCURACY_COLUMNS = ["branch", "energy", "potential", "q", "qa", "tau_exact", "tau_branch", "relative_gap"]


class TunnelingCalculator:
    """
    Computes phase-time records, sweeps, threshold curves and verification reports.

    Shared by the command line and the HTTP routes. All reported times, lengths and velocities are
    in natural units (hbar = c = m = 1); the input fields are echoed in the units they were given in.

    Attributes:
        exact_evaluator (ExactEvaluator): Exact phase-time function, replaceable for negative controls.

    Methods:
        phase_time(): One record for one system.
        sweep(): One record per sample of an axis.
        curve(): Threshold-curve rows.
        thresholds(): Critical and gain-threshold betas.
        accuracy(): Branch formulas against the exact phase time along E.
        verify(): Runs the verification suites.
    """
    def __init__(self, exact_evaluator: ExactEvaluator = phase_time_exact, max_workers: Optional[int] = None):
        """
        Initializes the calculator.

        Args:
            exact_evaluator (ExactEvaluator): Exact phase-time function.
            max_workers (Optional[int]): Worker threads for sweeps; None lets the executor decide.
        """
        super().__init__()
        self.exact_evaluator = exact_evaluator
        self.max_workers = max_workers

    def phase_time(self, sys: BarrierSystem) -> dict:
        """
        Builds the full record of one system.

        Args:
            sys (BarrierSystem): The scenario; must lie in the tunneling window.

        Returns:
            dict: Inputs, kinematics, exact/branch/free times, time gain, traversal velocity and verdict.
                Branch-only quantities are None on the Degenerate branch.

        Raises:
            TunnelingError: If the system is out of regime or the exact phase time is singular.
        """
        kin = derive_kinematics(sys)
        natural = to_natural(sys)
        record = {
            "energy": sys.energy,
            "potential": sys.potential,
            "mass": sys.mass,
            "width": sys.width,
            "gap": sys.gap,
            "units": sys.units.value,
            "k": kin.k,
            "q": kin.q,
            "qa": kin.q * natural.width,
            "branch": kin.branch.value,
            "tau_exact": self.exact_evaluator(sys).value,
            "tau_branch": None,
            "tau_free": free_time(sys).value,
            "time_gain": None,
            "traversal_velocity": None,
            "verdict": None,
        }
        if kin.branch in BRANCH_FORMULAS:
            record["tau_branch"] = BRANCH_FORMULAS[kin.branch](sys).value
            record["time_gain"] = time_gain(sys, kin.branch)
            if natural.gap + 2.0 * natural.width > 0.0:
                record["traversal_velocity"] = traversal_velocity(sys, kin.branch)
                record["verdict"] = classify_system(sys, kin.branch).verdict.value
        return record

    def _sweep_row(self, sys: BarrierSystem) -> dict:
        try:
            return {**self.phase_time(sys), "error": None}
        except TunnelingError as e:
            logger.warning(f"sweep row {sys} failed: {e.code}")
            row = {column: None for column in RECORD_COLUMNS}
            row.update(energy=sys.energy, potential=sys.potential, mass=sys.mass, width=sys.width,
                       gap=sys.gap, units=sys.units.value, error=e.code)
            return row

    def sweep(self, cfg: RunConfig) -> List[dict]:
        """
        Evaluates the configured system along one axis; rows come back in axis order.

        Rows failing validation carry the error code instead of being dropped.
        """
        values = np.linspace(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_samples)
        values.sort()
        field = SWEEP_FIELDS[cfg.sweep_axis]
        systems = [cfg.system.with_changes(**{field: float(value)}) for value in values]
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            return list(executor.map(self._sweep_row, systems))

    @staticmethod
    def curve(request: CurveRequestModel) -> List[dict]:
        """
        Samples the threshold curves of the requested branches, branch by branch in ascending beta.
        """
        betas = sorted(request.betas) if request.betas is not None \
            else np.linspace(request.beta_min, request.beta_max, request.samples)
        rows = []
        for branch in request.branches:
            for point in threshold_curve(branch, betas):
                rows.append({"branch": point.branch.value, "beta": point.beta,
                             "alpha_ratio": point.alpha_ratio, "feasible": point.feasible})
        return rows

    @staticmethod
    def thresholds() -> dict[str, float]:
        return {
            "critical_beta_a": critical_beta(SolutionBranch.A),
            "critical_beta_b": critical_beta(SolutionBranch.B),
            "gain_threshold_beta": gain_threshold_beta(),
        }

    def verify(self) -> VerificationReport:
        return run_suites(self.exact_evaluator)

    def _accuracy_row(self, task: tuple[SolutionBranch, float, AccuracyRequestModel]) -> dict:
        branch, energy, request = task
        system = BarrierSystem(energy=energy, potential=potential_for_q(branch, energy, request.q),
                               width=request.width, gap=request.gap)
        kin = derive_kinematics(system)
        exact = self.exact_evaluator(system).value
        formula = BRANCH_FORMULAS[branch](system).value
        return {
            "branch": branch.value,
            "energy": energy,
            "potential": system.potential,
            "q": kin.q,
            "qa": kin.q * system.width,
            "tau_exact": exact,
            "tau_branch": formula,
            "relative_gap": abs(formula - exact) / abs(exact),
        }

    def accuracy(self, request: AccuracyRequestModel) -> List[dict]:
        """
        Relative gap between each branch formula and the exact phase time, branch by branch in
        ascending energy. V0 follows E so that the evanescent wave number stays at request.q.

        Raises:
            TunnelingError: If a point leaves the tunneling window or the exact phase time is singular.
        """
        energies = sorted(request.energies) if request.energies is not None \
            else np.geomspace(request.energy_min, request.energy_max, request.samples)
        tasks = [(branch, float(energy), request) for branch in request.branches for energy in energies]
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            return list(executor.map(self._accuracy_row, tasks))
