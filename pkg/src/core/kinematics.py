import logging
import math

from ..settings import TRANSPARENCY_THRESHOLD
from .schemas import BarrierSystem, Kinematics, SolutionBranch
from .units import to_natural

logger = logging.getLogger(__name__)


def solution_branch(energy: float, potential: float) -> SolutionBranch:
    """
    Tags the solution family from the sign of V0 - E.
    """
    if potential > energy:
        return SolutionBranch.A
    if potential < energy:
        return SolutionBranch.B
    return SolutionBranch.DEGENERATE


def derive_kinematics(sys: BarrierSystem) -> Kinematics:
    """
    Derives the outside and barrier wave numbers, the free velocities and the spinor matching ratio.

    Everything is computed in natural units (hbar = c = m = 1); SI systems are converted once here.

    Args:
        sys (BarrierSystem): The scenario.

    Returns:
        Kinematics: Wave numbers, velocities, matching ratio and branch.

    Raises:
        EnergyBelowRest: If E <= mc^2.
        KleinRegime: If V0 >= E + mc^2.
        Propagating: If V0 <= E - mc^2.
    """
    natural = to_natural(sys)
    natural.check_regime()
    energy, potential = natural.energy, natural.potential

    # factored forms keep precision close to the regime edges
    k = math.sqrt((energy - 1.0) * (energy + 1.0))
    detuning = potential - energy
    q = math.sqrt((1.0 - detuning) * (1.0 + detuning))
    matching_ratio = (k / q) * (energy - potential + 1.0) / (energy + 1.0)

    return Kinematics(
        k=k,
        q=q,
        phase_velocity=energy / k,
        group_velocity=k / energy,
        matching_ratio=matching_ratio,
        branch=solution_branch(energy, potential),
        energy=energy,
        potential=potential,
    )


def validate_transparency(kin: Kinematics, a: float) -> float:
    """
    Returns qa, the transparency parameter of a barrier of natural width a.

    The transparent limit is written qa << 1 throughout the derivations (ka << 1 appears in the
    introduction and conclusions; qa is the one the expansions actually use). Values above the
    configured threshold are logged, never rejected.
    """
    qa = kin.q * a
    if qa > TRANSPARENCY_THRESHOLD:
        logger.warning(f"qa = {qa:.4g} exceeds the transparency threshold {TRANSPARENCY_THRESHOLD}; "
                       f"first-order results are not trustworthy here")
    return qa
