import logging
from typing import Literal

from pydantic import BaseModel, ConfigDict

from ..core.errors import BranchDegenerate, WrongBranch
from ..core.kinematics import derive_kinematics, validate_transparency
from ..core.schemas import BarrierSystem, Kinematics, Method, SolutionBranch, TimeResult
from ..core.units import to_natural
from ..settings import RELATIVISTIC_ENERGY_GATE

logger = logging.getLogger(__name__)


class ExpansionResult(BaseModel):
    """
    First-order transparent-barrier expansion of h1 / (Gamma^2 + Delta^2), natural units.

    Both brackets multiply qa: h1 vanishes identically at a = 0, so there is no zeroth-order term.

    Attributes:
        constant_bracket (float): (V0 - E) k^2 (1/alpha - alpha).
        linear_bracket (float): -(k^2 + q^2)(1/alpha + alpha).
        value (float): (constant_bracket + linear_bracket) * qa.
        order_used (str): Always 'first'.
        qa (float): Transparency parameter.
    """
    model_config = ConfigDict(frozen=True)

    constant_bracket: float
    linear_bracket: float
    value: float
    order_used: Literal['first'] = 'first'
    qa: float


def potential_for_q(branch: SolutionBranch, energy: float, q: float, mass: float = 1.0) -> float:
    """
    Barrier height giving evanescent wave number q near the edges of the tunneling window (hbar = c = 1).

    Branch A: V0 = E + m - q^2 / 2m. Branch B: V0 = E - m + q^2 / 2m.

    Raises:
        BranchDegenerate: If branch is Degenerate.
    """
    if branch is SolutionBranch.A:
        return energy + mass - q * q / (2.0 * mass)
    if branch is SolutionBranch.B:
        return energy - mass + q * q / (2.0 * mass)
    raise BranchDegenerate("the transparent-limit potentials exist only for V0 != E")


def expansion_first_order(kin: Kinematics, sys: BarrierSystem) -> ExpansionResult:
    """
    First-order expansion in qa of the ratio h1 / (Gamma^2 + Delta^2).

    Args:
        kin (Kinematics): Kinematics of the system.
        sys (BarrierSystem): The system.

    Returns:
        ExpansionResult: Both brackets and their sum times qa.

    Raises:
        BranchDegenerate: If V0 = E.
    """
    if kin.branch is SolutionBranch.DEGENERATE:
        raise BranchDegenerate("the transparent expansion assumes V0 != E")
    natural = to_natural(sys)
    qa = validate_transparency(kin, natural.width)
    alpha = kin.matching_ratio
    k2 = kin.k * kin.k
    constant_bracket = (kin.potential - kin.energy) * k2 * (1.0 / alpha - alpha)
    linear_bracket = -(k2 + kin.q * kin.q) * (1.0 / alpha + alpha)
    return ExpansionResult(
        constant_bracket=constant_bracket,
        linear_bracket=linear_bracket,
        value=(constant_bracket + linear_bracket) * qa,
        qa=qa,
    )


def phase_time_first_order(sys: BarrierSystem) -> TimeResult:
    """
    Exact phase time with h1 / (Gamma^2 + Delta^2) replaced by its first-order expansion.

    Converges to the exact phase time quadratically in qa.
    """
    kin = derive_kinematics(sys)
    natural = to_natural(sys)
    expansion = expansion_first_order(kin, natural)
    k2q2 = kin.k * kin.k * kin.q * kin.q
    value = natural.gap * kin.energy / kin.k - expansion.value / k2q2
    return TimeResult(value=value, method=Method.FIRST_ORDER, qa=expansion.qa)


def _gate_branch(kin: Kinematics, natural: BarrierSystem, expected: SolutionBranch) -> float:
    if kin.branch is not expected:
        raise WrongBranch(f"system is on branch {kin.branch.value}, formula needs branch {expected.value}")
    if kin.energy < RELATIVISTIC_ENERGY_GATE:
        logger.warning(f"E = {kin.energy:.4g} mc^2 is below {RELATIVISTIC_ENERGY_GATE} mc^2; "
                       f"branch {expected.value} formula assumes E >> mc^2")
    return validate_transparency(kin, natural.width)


def ultra_relativistic_reduction(kin: Kinematics, qa: float) -> float:
    """
    The part of the first-order expansion the branch formulas keep, with alpha replaced by its
    ultra-relativistic limit (natural units).

    Branch A keeps the 1/alpha bracket with alpha -> kq / 2E: -(E k q + 2 E q / k) qa.
    Branch B keeps the alpha bracket with alpha -> 2k / (E q): -(q k^3 + 2 q k) qa / E.
    The dropped bracket is of the same order as the kept one, so the branch formulas differ from
    phase_time_first_order at first order in qa.

    Raises:
        BranchDegenerate: If V0 = E.
    """
    k, q, energy = kin.k, kin.q, kin.energy
    if kin.branch is SolutionBranch.A:
        return -(energy * k * q + 2.0 * energy * q / k) * qa
    if kin.branch is SolutionBranch.B:
        return -(q * k ** 3 + 2.0 * q * k) * qa / energy
    raise BranchDegenerate("the ultra-relativistic reductions exist only for V0 != E")


def _branch_phase_time(sys: BarrierSystem, expected: SolutionBranch, method: Method) -> TimeResult:
    kin = derive_kinematics(sys)
    natural = to_natural(sys)
    qa = _gate_branch(kin, natural, expected)
    k2q2 = kin.k * kin.k * kin.q * kin.q
    value = natural.gap * kin.energy / kin.k - ultra_relativistic_reduction(kin, qa) / k2q2
    return TimeResult(value=value, method=method, qa=qa)


def phase_time_branch_a(sys: BarrierSystem) -> TimeResult:
    """
    Transparent, ultra-relativistic phase time for E < V0 < E + mc^2:
    tau = (V_phi / c^2) [L + a (1 + 2 m^2 c^2 / hbar^2 k^2)].

    Raises:
        WrongBranch: If the system is not on branch A.
    """
    return _branch_phase_time(sys, SolutionBranch.A, Method.BRANCH_A)


def phase_time_branch_b(sys: BarrierSystem) -> TimeResult:
    """
    Transparent, ultra-relativistic phase time for E - mc^2 < V0 < E:
    tau = (V_phi / c^2) [L + (c^2 / V_phi^2) a (1 + 2 m^2 c^2 / hbar^2 k^2)].

    Raises:
        WrongBranch: If the system is not on branch B.
    """
    return _branch_phase_time(sys, SolutionBranch.B, Method.BRANCH_B)


BRANCH_FORMULAS = {
    SolutionBranch.A: phase_time_branch_a,
    SolutionBranch.B: phase_time_branch_b,
}
