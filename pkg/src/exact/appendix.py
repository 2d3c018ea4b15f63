import math
from typing import Callable

from pydantic import BaseModel, ConfigDict

from ..core.errors import SingularDenominator
from ..core.kinematics import derive_kinematics
from ..core.schemas import BarrierSystem, Kinematics, Method, TimeResult
from ..core.units import to_natural
from ..settings import SINGULAR_DENOMINATOR_EPS


SMALL_ARGUMENT = 1e-4


class AppendixTerms(BaseModel):
    """
    The Gamma, Delta and h1 combinations entering the exact two-barrier phase time (natural units).

    Gamma + i*Delta is, up to the real factor 8*alpha^2, the transmission denominator multiplied by
    exp(ikL); h1 = k^2 q^2 (Gamma Delta' - Delta Gamma') with ' = d/dE.

    Attributes:
        gamma (float): Gamma.
        delta (float): Delta.
        h1 (float): h1.
        denom (float): Gamma^2 + Delta^2.
    """
    model_config = ConfigDict(frozen=True)

    gamma: float
    delta: float
    h1: float
    denom: float


def _hyperbolics(x: float) -> tuple[float, float, float]:
    """
    Returns sinh(x), sinh(2x), cosh(2x), using cancellation-free forms for small x.
    """
    if x < SMALL_ARGUMENT:
        sinh_x = 0.5 * (math.expm1(x) - math.expm1(-x))
    else:
        sinh_x = math.sinh(x)
    sinh_2x = 2.0 * sinh_x * math.sqrt(1.0 + sinh_x * sinh_x)
    cosh_2x = 1.0 + 2.0 * sinh_x * sinh_x
    return sinh_x, sinh_2x, cosh_2x


def appendix_terms(kin: Kinematics, sys: BarrierSystem) -> AppendixTerms:
    """
    Evaluates Gamma, Delta and h1 for the double barrier.

    The h1 transcription repairs three typos of the printed form: "(2kl)" is 2kL,
    "k^2(2qa)E-V_0)" is k^2 (2qa)(E - V0) and the unbalanced "sinh(2qa))" is sinh(2qa).
    The repaired expression equals k^2 q^2 (Gamma Delta' - Delta Gamma') term by term.

    Args:
        kin (Kinematics): Kinematics of the system.
        sys (BarrierSystem): The system; converted to natural units.

    Returns:
        AppendixTerms: Gamma, Delta, h1 and Gamma^2 + Delta^2.

    Raises:
        SingularDenominator: If Gamma^2 + Delta^2 drops below the configured epsilon.
    """
    natural = to_natural(sys)
    k, q, alpha = kin.k, kin.q, kin.matching_ratio
    energy, potential = kin.energy, kin.potential
    a, gap = natural.width, natural.gap

    sinh_qa, sinh_2qa, cosh_2qa = _hyperbolics(q * a)
    sinh2_qa = sinh_qa * sinh_qa
    two_kl = 2.0 * k * gap
    sin_2kl, cos_2kl = math.sin(two_kl), math.cos(two_kl)
    sin2_kl = 0.5 * (1.0 - cos_2kl)

    alpha2 = alpha * alpha
    p = 1.0 + alpha2
    wave_sum = k * k + q * q
    two_qa = 2.0 * q * a
    detuning = energy - potential

    gamma = 8.0 * alpha2 * cosh_2qa - 4.0 * p * p * sin2_kl * sinh2_qa
    delta = 4.0 * alpha * (1.0 - alpha2) * sinh_2qa + 2.0 * p * p * sin_2kl * sinh2_qa

    delta_factor = (
        2.0 * p * (p * energy * q * q * two_kl * sin_2kl - 4.0 * alpha2 * wave_sum * cos_2kl) * sinh2_qa
        - 4.0 * alpha2 * wave_sum * (p + (3.0 - alpha2) * cosh_2qa)
        + k * k * two_qa * detuning * (p * p * cos_2kl - (1.0 - 6.0 * alpha2 + alpha2 * alpha2)) * sinh_2qa
    )
    gamma_factor = (
        -4.0 * alpha * (1.0 - alpha2) * k * k * two_qa * detuning * cosh_2qa
        + 2.0 * p * (p * energy * q * q * two_kl * cos_2kl + 4.0 * alpha2 * wave_sum * sin_2kl) * sinh2_qa
        + (4.0 * alpha * (1.0 - 3.0 * alpha2) * wave_sum - p * p * k * k * two_qa * detuning * sin_2kl) * sinh_2qa
    )
    h1 = delta * delta_factor + gamma * gamma_factor
    denom = gamma * gamma + delta * delta

    if not denom >= SINGULAR_DENOMINATOR_EPS:
        raise SingularDenominator(f"Gamma^2 + Delta^2 = {denom:.3e} is below {SINGULAR_DENOMINATOR_EPS:.0e}")
    return AppendixTerms(gamma=gamma, delta=delta, h1=h1, denom=denom)


def phase_time_exact(sys: BarrierSystem,
                     terms: Callable[[Kinematics, BarrierSystem], AppendixTerms] = appendix_terms) -> TimeResult:
    """
    Exact phase time of the double barrier, tau = kL E/k^2 - h1 / (k^2 q^2 (Gamma^2 + Delta^2)).

    Args:
        sys (BarrierSystem): The system (branch A, B or Degenerate).
        terms (Callable): Evaluator of the appendix terms; replaceable for negative controls.

    Returns:
        TimeResult: Phase time in natural units, method exact.
    """
    kin = derive_kinematics(sys)
    natural = to_natural(sys)
    appendix = terms(kin, natural)
    k2q2 = kin.k * kin.k * kin.q * kin.q
    value = natural.gap * kin.energy / kin.k - appendix.h1 / (k2q2 * appendix.denom)
    return TimeResult(value=float(value), method=Method.EXACT, qa=kin.q * natural.width)


def free_time(sys: BarrierSystem) -> TimeResult:
    """
    Time for a free particle to cover L + 2a at the group velocity.
    """
    kin = derive_kinematics(sys)
    natural = to_natural(sys)
    value = (natural.gap + 2.0 * natural.width) * kin.phase_velocity
    return TimeResult(value=value, method=Method.FREE_REFERENCE, qa=kin.q * natural.width)

