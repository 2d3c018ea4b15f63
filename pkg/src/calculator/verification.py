import logging
import math
from typing import Callable, List

import numpy as np
from pydantic import BaseModel

from ..analysis.superluminal import RatioPoint, Verdict, classify, critical_beta, gain_threshold_beta, threshold_curve
from ..approx.transparent import phase_time_first_order
from ..core.errors import TunnelingError
from ..core.kinematics import derive_kinematics
from ..core.schemas import BarrierSystem, SolutionBranch, TimeResult
from ..exact.appendix import phase_time_exact
from ..oracle.differentiation import phase_time_numeric
from ..oracle.scattering import scatter, single_barrier_layers

logger = logging.getLogger(__name__)

ExactEvaluator = Callable[[BarrierSystem], TimeResult]

GRID_ENERGIES = (1.2, 2.0, 5.0)
GRID_DETUNINGS = (-0.6, -0.2, 0.0, 0.3, 0.7)
GRID_QA = (1e-3, 0.03, 0.3, 1.0)
GRID_KL = (0.1, 1.7, 12.0, 50.0)

ORACLE_TOLERANCE = 1e-6
FLUX_TOLERANCE = 1e-10
FREE_FLIGHT_TOLERANCE = 1e-12
# finite differences of k*L cannot resolve the free flight to machine precision
ORACLE_FREE_FLIGHT_TOLERANCE = 1e-8
CONVERGENCE_WINDOW = (3.0, 5.0)
CONVERGENCE_COUNT = 20
CONVERGENCE_SEED = 1729
CONVERGENCE_QA = 0.004
MERGE_WIDTHS = (0.1, 0.2, 0.4, 0.8)


class SuiteResult(BaseModel):
    """
    Outcome of one verification suite.

    Attributes:
        name (str): Suite name.
        passed (bool): Whether every check held.
        max_error (float): Largest observed error (relative unless stated in detail).
        tolerance (float): Bound max_error was held to.
        detail (str): Human-readable summary.
    """
    name: str
    passed: bool
    max_error: float
    tolerance: float
    detail: str


class VerificationReport(BaseModel):
    suites: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)


def oracle_grid() -> List[BarrierSystem]:
    """
    Systems spanning branches A, B and Degenerate with qa in [1e-3, 1] and kL in [0.1, 50].
    """
    systems = []
    for energy in GRID_ENERGIES:
        k = math.sqrt(energy * energy - 1.0)
        for detuning in GRID_DETUNINGS:
            q = math.sqrt(1.0 - detuning * detuning)
            for qa in GRID_QA:
                for kl in GRID_KL:
                    systems.append(BarrierSystem(energy=energy, potential=energy + detuning,
                                                 width=qa / q, gap=kl / k))
    return systems


def merged_systems() -> List[BarrierSystem]:
    """
    Touching barriers (L = 0) over the grid energies and detunings and MERGE_WIDTHS.
    """
    return [BarrierSystem(energy=energy, potential=energy + detuning, width=width, gap=0.0)
            for energy in GRID_ENERGIES for detuning in GRID_DETUNINGS for width in MERGE_WIDTHS]


def convergence_systems(count: int = CONVERGENCE_COUNT, seed: int = CONVERGENCE_SEED) -> List[BarrierSystem]:
    """
    Seeded systems with E in [10, 50] mc^2, alternating branches A and B, and qa = CONVERGENCE_QA.

    |V0 - E| stays in [0.3, 0.6], which keeps alpha within about [0.45, 2]. Gaps are snapped to
    kL = n pi (sin 2kL = 0); there the second-order residual of the first-order time is
    (qa)^2 L (1 + alpha^2)^2 E / (2 alpha^2 k).
    """
    rng = np.random.default_rng(seed)
    systems = []
    for index in range(count):
        energy = float(rng.uniform(10.0, 50.0))
        detuning = (1.0 if index % 2 == 0 else -1.0) * float(rng.uniform(0.3, 0.6))
        k = math.sqrt((energy - 1.0) * (energy + 1.0))
        q = math.sqrt(1.0 - detuning * detuning)
        turns = max(1, round(float(rng.uniform(1.0, 5.0)) * k / math.pi))
        systems.append(BarrierSystem(energy=energy, potential=energy + detuning,
                                     width=CONVERGENCE_QA / q, gap=turns * math.pi / k))
    return systems


def _relative_error(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


def thresholds_suite() -> SuiteResult:
    checks = [
        (critical_beta(SolutionBranch.A), 0.8633, 5e-5),
        (critical_beta(SolutionBranch.B), 0.7709, 5e-5),
        (gain_threshold_beta(), 0.82, 5e-3),
    ]
    worst = max(abs(value - printed) - bound for value, printed, bound in checks)
    return SuiteResult(name="thresholds", passed=worst <= 0.0, max_error=max(worst, 0.0), tolerance=0.0,
                       detail="critical betas to 4 d.p., gain threshold within 0.005 of 0.82")


def curve_suite(samples: int = 200, grid: int = 50) -> SuiteResult:
    """
    Threshold curves are positive above the critical betas and classify() agrees with the curve side.
    """
    negative = 0
    for branch in (SolutionBranch.A, SolutionBranch.B):
        betas = np.linspace(critical_beta(branch), 1.0, samples + 2)[1:-1]
        negative += sum(not point.feasible for point in threshold_curve(branch, betas))

    disagreements = 0
    for branch in (SolutionBranch.A, SolutionBranch.B):
        betas = np.linspace(critical_beta(branch), 1.0, grid + 2)[1:-1]
        for point in threshold_curve(branch, betas):
            for ratio in np.linspace(0.0, 2.0 * point.alpha_ratio, grid):
                if abs(ratio - point.alpha_ratio) <= 1e-9 * point.alpha_ratio:
                    continue
                expected = Verdict.SUPERLUMINAL if ratio > point.alpha_ratio else Verdict.SUBLUMINAL
                verdict = classify(RatioPoint(beta=point.beta, width_ratio=float(ratio), branch=branch)).verdict
                disagreements += verdict is not expected
    failures = negative + disagreements
    return SuiteResult(name="curve", passed=failures == 0, max_error=float(failures), tolerance=0.0,
                       detail=f"{negative} infeasible samples above the critical betas, "
                              f"{disagreements} classify disagreements")


def oracle_suite(exact_evaluator: ExactEvaluator) -> SuiteResult:
    """
    Exact closed form against the finite-difference oracle over the grid, plus flux conservation.
    """
    worst = 0.0
    worst_flux = 0.0
    failures = 0
    systems = oracle_grid()
    for system in systems:
        try:
            exact = exact_evaluator(system).value
            numeric = phase_time_numeric(system).value
            flux = abs(scatter(system).flux_residual)
        except TunnelingError as e:
            logger.warning(f"oracle grid point {system} failed: {e}")
            failures += 1
            continue
        worst = max(worst, _relative_error(exact, numeric))
        worst_flux = max(worst_flux, flux)
    passed = failures == 0 and worst <= ORACLE_TOLERANCE and worst_flux <= FLUX_TOLERANCE
    return SuiteResult(name="oracle", passed=passed, max_error=worst, tolerance=ORACLE_TOLERANCE,
                       detail=f"{len(systems)} systems, {failures} failed, max flux residual {worst_flux:.2e}")


def degeneracy_suite(exact_evaluator: ExactEvaluator) -> SuiteResult:
    """
    a = 0 gives free flight for every method; L = 0 equals one barrier of width 2a.
    """
    worst_free = 0.0
    worst_oracle_free = 0.0
    for energy in GRID_ENERGIES:
        for detuning in GRID_DETUNINGS:
            base = BarrierSystem(energy=energy, potential=energy + detuning, width=0.0, gap=7.0)
            free_flight = base.gap / derive_kinematics(base).group_velocity
            worst_free = max(worst_free, _relative_error(exact_evaluator(base).value, free_flight))
            worst_oracle_free = max(worst_oracle_free, _relative_error(phase_time_numeric(base).value, free_flight))

    worst_merge = 0.0
    merged = merged_systems()
    for system in merged:
        single = phase_time_numeric(system, layers=single_barrier_layers(system, 2.0 * system.width)).value
        worst_merge = max(worst_merge, _relative_error(exact_evaluator(system).value, single))
    passed = (worst_free <= FREE_FLIGHT_TOLERANCE and worst_oracle_free <= ORACLE_FREE_FLIGHT_TOLERANCE
              and worst_merge <= ORACLE_TOLERANCE)
    return SuiteResult(name="degeneracies", passed=passed, max_error=max(worst_free, worst_merge),
                       tolerance=ORACLE_TOLERANCE,
                       detail=f"free flight exact {worst_free:.1e}, oracle {worst_oracle_free:.1e}; "
                              f"{len(merged)} merged barriers {worst_merge:.1e}")


def convergence_suite(exact_evaluator: ExactEvaluator) -> SuiteResult:
    """
    The first-order transparent phase time approaches the exact one quadratically in the width.
    """
    ratios = []
    for system in convergence_systems():
        errors = []
        for width in (system.width, 0.5 * system.width):
            halved = system.with_changes(width=width)
            errors.append(abs(phase_time_first_order(halved).value - exact_evaluator(halved).value))
        ratios.append(errors[0] / errors[1] if errors[1] > 0 else math.inf)
    low, high = CONVERGENCE_WINDOW
    passed = all(low <= ratio <= high for ratio in ratios)
    return SuiteResult(name="convergence", passed=passed, max_error=max(abs(ratio - 4.0) for ratio in ratios),
                       tolerance=1.0, detail=f"{len(ratios)} systems, halving ratios in "
                                             f"[{min(ratios):.3f}, {max(ratios):.3f}]")


def run_suites(exact_evaluator: ExactEvaluator = phase_time_exact) -> VerificationReport:
    """
    Runs every verification suite against the given exact evaluator.
    """
    suites = [
        thresholds_suite(),
        curve_suite(),
        oracle_suite(exact_evaluator),
        degeneracy_suite(exact_evaluator),
        convergence_suite(exact_evaluator),
    ]
    for suite in suites:
        log = logger.info if suite.passed else logger.error
        log(f"suite {suite.name}: {'pass' if suite.passed else 'FAIL'} (max error {suite.max_error:.3e}) {suite.detail}")
    return VerificationReport(suites=suites)
