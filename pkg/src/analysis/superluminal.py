import math
from enum import Enum
from fractions import Fraction
from typing import Iterable, List

from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from ..core.errors import BranchDegenerate, ZeroPath
from ..core.kinematics import derive_kinematics
from ..core.schemas import BarrierSystem, SolutionBranch
from ..core.units import to_natural

ON_CURVE_TOLERANCE = 1e-12
ROOT_TOLERANCE = 1e-12


class Verdict(str, Enum):
    SUPERLUMINAL = "Superluminal"
    SUBLUMINAL = "Subluminal"
    ON_CURVE = "OnCurve"


class RatioPoint(BaseModel):
    """
    A point of the (beta, a/L) plane.

    Attributes:
        beta (float): V_g / c, in (0, 1).
        width_ratio (float): a / L, not to be confused with the spinor matching ratio.
        branch (SolutionBranch): A or B.
    """
    model_config = ConfigDict(frozen=True)

    beta: float = Field(..., gt=0, lt=1)
    width_ratio: float = Field(..., ge=0, allow_inf_nan=False)
    branch: SolutionBranch


class RegionVerdict(BaseModel):
    """
    Side of the V_T = c curve a point lies on; margin is V_T / c - 1.
    """
    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    margin: float


class CurvePoint(BaseModel):
    """
    Sample of a V_T = c threshold curve. Infeasible samples (a/L <= 0, pole, beta out of range)
    are kept and flagged.
    """
    model_config = ConfigDict(frozen=True)

    beta: float
    alpha_ratio: float
    branch: SolutionBranch
    feasible: bool


def _require_branch(branch: SolutionBranch) -> None:
    if branch is SolutionBranch.DEGENERATE:
        raise BranchDegenerate("superluminality conditions exist only for branches A and B")


def time_gain(sys: BarrierSystem, branch: SolutionBranch) -> float:
    """
    Time gained over a free particle, tau_f - tau_p, from the branch phase-time formulas (natural units).

    Branch A: (a / V_g)(3 - 2 c^2 / V_g^2). Branch B: a V_g / c^2.

    Raises:
        BranchDegenerate: If branch is Degenerate.
    """
    _require_branch(branch)
    velocity = derive_kinematics(sys).group_velocity
    a = to_natural(sys).width
    if branch is SolutionBranch.A:
        return (a / velocity) * (3.0 - 2.0 / (velocity * velocity))
    return a * velocity


def traversal_velocity(sys: BarrierSystem, branch: SolutionBranch) -> float:
    """
    Linearised traversal velocity (L + 2a) / tau_p, in units of c.

    Branch A: V_g + V_g (a / (L + 2a)) (3 - 2 c^2 / V_g^2). Branch B: V_g + (a / (L + 2a)) V_g^3 / c^2.
    Both are first order in the time gain over the free time.

    Raises:
        BranchDegenerate: If branch is Degenerate.
        ZeroPath: If L + 2a = 0.
    """
    _require_branch(branch)
    natural = to_natural(sys)
    path = natural.gap + 2.0 * natural.width
    if path == 0.0:
        raise ZeroPath("traversal velocity needs L + 2a > 0")
    velocity = derive_kinematics(sys).group_velocity
    fraction = natural.width / path
    if branch is SolutionBranch.A:
        return velocity + velocity * fraction * (3.0 - 2.0 / (velocity * velocity))
    return velocity + fraction * velocity ** 3


def _threshold_ratio(branch: SolutionBranch, beta: float) -> float:
    if branch is SolutionBranch.A:
        numerator, denominator = beta * beta - beta, 2.0 + 2.0 * beta - 5.0 * beta * beta
    else:
        numerator, denominator = 1.0 - beta, beta ** 3 + 2.0 * beta - 2.0
    if denominator == 0.0:
        return math.copysign(math.inf, numerator) if numerator != 0.0 else math.nan
    return numerator / denominator


def threshold_curve(branch: SolutionBranch, betas: Iterable[float]) -> List[CurvePoint]:
    """
    Width ratios a/L for which the traversal velocity reaches c, one per beta, in input order.

    Branch A: (beta^2 - beta) / (2 + 2 beta - 5 beta^2). Branch B: (1 - beta) / (beta^3 + 2 beta - 2).
    """
    _require_branch(branch)
    points = []
    for beta in betas:
        beta = float(beta)
        ratio = _threshold_ratio(branch, beta) if 0.0 < beta <= 1.0 else math.nan
        feasible = math.isfinite(ratio) and ratio > 0.0
        points.append(CurvePoint(beta=beta, alpha_ratio=ratio, branch=branch, feasible=feasible))
    return points


def critical_beta(branch: SolutionBranch) -> float:
    """
    Lowest beta at which a superluminal width ratio exists.

    Branch A: the pole (1 + sqrt(11)) / 5. Branch B: the real root of beta^3 + 2 beta - 2 in [0, 1].
    """
    _require_branch(branch)
    if branch is SolutionBranch.A:
        return (1.0 + math.sqrt(11.0)) / 5.0
    return brentq(lambda beta: beta ** 3 + 2.0 * beta - 2.0, 0.0, 1.0, xtol=ROOT_TOLERANCE)


def cardano_critical_beta_b() -> float:
    """
    Closed form of the branch-B root, [(9 + sqrt 105)^(2/3) - 2 * 3^(1/3)] / [3^(2/3) (9 + sqrt 105)^(1/3)].
    """
    base = 9.0 + math.sqrt(105.0)
    return (base ** (2.0 / 3.0) - 2.0 * 3.0 ** (1.0 / 3.0)) / (3.0 ** (2.0 / 3.0) * base ** (1.0 / 3.0))


def gain_threshold_beta() -> float:
    """
    beta above which branch A gains time over a free particle, sqrt(2/3).
    """
    return math.sqrt(2.0 / 3.0)


def _exact_margin(beta: Fraction, path_fraction: Fraction, branch: SolutionBranch) -> Fraction:
    if branch is SolutionBranch.A:
        velocity = beta + beta * path_fraction * (3 - 2 / (beta * beta))
    else:
        velocity = beta + path_fraction * beta ** 3
    return velocity - 1


def _verdict(margin: Fraction, tol: float) -> RegionVerdict:
    if margin > tol:
        verdict = Verdict.SUPERLUMINAL
    elif margin < -tol:
        verdict = Verdict.SUBLUMINAL
    else:
        verdict = Verdict.ON_CURVE
    return RegionVerdict(verdict=verdict, margin=float(margin))


def classify(point: RatioPoint, tol: float = ON_CURVE_TOLERANCE) -> RegionVerdict:
    """
    Compares the traversal velocity at (beta, a/L) with c in exact rational arithmetic.

    V_T depends on a and L only through a / (L + 2a), so L = 1, a = a/L is used.
    """
    _require_branch(point.branch)
    ratio = Fraction(point.width_ratio)
    return _verdict(_exact_margin(Fraction(point.beta), ratio / (1 + 2 * ratio), point.branch), tol)


def classify_system(sys: BarrierSystem, branch: SolutionBranch, tol: float = ON_CURVE_TOLERANCE) -> RegionVerdict:
    """
    classify() for a concrete system, using its group velocity and a / (L + 2a).

    Raises:
        ZeroPath: If L + 2a = 0.
    """
    _require_branch(branch)
    natural = to_natural(sys)
    path = Fraction(natural.gap) + 2 * Fraction(natural.width)
    if path == 0:
        raise ZeroPath("traversal velocity needs L + 2a > 0")
    beta = Fraction(derive_kinematics(sys).group_velocity)
    return _verdict(_exact_margin(beta, Fraction(natural.width) / path, branch), tol)
