import logging
import math
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import NoisyDerivative, StencilOutOfRegime, TunnelingError
from ..core.kinematics import derive_kinematics
from ..core.schemas import BarrierSystem, Method, TimeResult
from ..core.units import to_natural
from ..exact.appendix import phase_time_exact
from ..settings import DIFF_SCHEME, DIFF_STEP, PHASE_CONVENTION
from .scattering import Layer, check_layers_regime, double_barrier_layers, scatter_layers

logger = logging.getLogger(__name__)

NOISE_TOLERANCE = 1e-4
CONVENTIONS = ('none', 'gap', 'structure')


class Scheme(str, Enum):
    CENTRAL2 = "central2"
    RICHARDSON4 = "richardson4"


class DifferentiationPlan(BaseModel):
    """
    Energy-differentiation settings of the oracle phase time.

    Attributes:
        relative_step (float): Stencil step as a fraction of E.
        scheme (Scheme): Central2 (second order) or Richardson4 (fourth order, steps h and 2h).
    """
    model_config = ConfigDict(frozen=True)

    relative_step: float = Field(DIFF_STEP, ge=1e-10, le=1e-2)
    scheme: Scheme = Scheme(DIFF_SCHEME)


def convention_length(layers: List[Layer], convention: str) -> float:
    """
    Length D_conv whose free phase k*D_conv is added back to arg t.

    'structure' is the whole stack (2a + L), 'gap' only the free layers (L), 'none' is 0.
    """
    if convention == 'structure':
        return sum(layer.thickness for layer in layers)
    if convention == 'gap':
        return sum(layer.thickness for layer in layers if layer.potential == 0.0)
    if convention == 'none':
        return 0.0
    raise ValueError(f"Unknown phase convention {convention}")


def _convention_phase(energy: float, layers: List[Layer], convention: str) -> float:
    record = scatter_layers(energy, layers)
    k = np.sqrt((energy - 1.0) * (energy + 1.0))
    total = sum(layer.thickness for layer in layers)
    # structure_phase already carries k*(2a + L)
    return record.structure_phase + k * (convention_length(layers, convention) - total)


def phase_curve(sys: BarrierSystem, energies: np.ndarray,
                layers: Optional[List[Layer]] = None, convention: str = PHASE_CONVENTION) -> np.ndarray:
    """
    Unwrapped transmission phase Phi(E) = arg t + k D_conv on a monotone energy grid.

    Args:
        sys (BarrierSystem): Supplies the stack when no layers are given.
        energies (np.ndarray): Monotone grid, natural units; successive phase jumps must stay below pi.
        layers (Optional[List[Layer]]): Explicit stack overriding the double barrier.
        convention (str): D_conv choice.

    Returns:
        np.ndarray: Unwrapped phases.
    """
    stack = layers if layers is not None else double_barrier_layers(sys)
    wrapped = np.array([_convention_phase(float(e), stack, convention) for e in energies])
    return np.unwrap(wrapped)


def _stencil_estimates(sys: BarrierSystem, energy: float, relative_step: float,
                       layers: Optional[List[Layer]], convention: str) -> tuple[float, float]:
    """
    Central (step h) and Richardson (steps h, 2h) derivatives of the phase at the given energy.
    """
    stack = layers if layers is not None else double_barrier_layers(sys)
    h = relative_step * energy
    stencil = energy + h * np.array([-2.0, -1.0, 1.0, 2.0])

    for point in stencil:
        try:
            check_layers_regime(float(point), stack)
        except TunnelingError as e:
            raise StencilOutOfRegime(f"stencil energy {point:.12g} leaves the tunneling regime: {e}")

    phases = phase_curve(sys, stencil, layers=stack, convention=convention)
    central_h = (phases[2] - phases[1]) / (2.0 * h)
    central_2h = (phases[3] - phases[0]) / (4.0 * h)
    return central_h, (4.0 * central_h - central_2h) / 3.0


def phase_time_numeric(sys: BarrierSystem, plan: Optional[DifferentiationPlan] = None,
                       layers: Optional[List[Layer]] = None, convention: str = PHASE_CONVENTION) -> TimeResult:
    """
    Phase time tau = dPhi/dE by finite differences of the oracle transmission phase.

    Both the central second-order estimate and its Richardson extrapolation are computed; the plan's
    scheme picks the reported one and their disagreement guards against noise.

    Args:
        sys (BarrierSystem): The system; its energy is the differentiation point.
        plan (Optional[DifferentiationPlan]): Step and scheme, settings defaults otherwise.
        layers (Optional[List[Layer]]): Explicit stack overriding the double barrier.
        convention (str): D_conv choice.

    Returns:
        TimeResult: Phase time in natural units, method oracle.

    Raises:
        StencilOutOfRegime: If a stencil energy leaves the tunneling window.
        NoisyDerivative: If the two estimates disagree by more than NOISE_TOLERANCE relative to Richardson.
    """
    plan = plan or DifferentiationPlan()
    kin = derive_kinematics(sys)
    energy = kin.energy
    central_h, richardson = _stencil_estimates(sys, energy, plan.relative_step, layers, convention)

    gap = abs(central_h - richardson)
    if gap > NOISE_TOLERANCE * abs(richardson):
        raise NoisyDerivative(f"central and Richardson estimates differ by {gap:.3e} at E={energy:.12g}")

    value = richardson if plan.scheme is Scheme.RICHARDSON4 else central_h
    natural = to_natural(sys)
    return TimeResult(value=float(value), method=Method.ORACLE, qa=kin.q * natural.width)


def derivative_gap(sys: BarrierSystem, relative_step: float) -> float:
    """
    |Central2 - Richardson4| at the given step, the quantity whose h^2 scaling checks the stencil.
    """
    kin = derive_kinematics(sys)
    central, extrapolated = _stencil_estimates(sys, kin.energy, relative_step, None, PHASE_CONVENTION)
    return abs(central - extrapolated)


def calibrate_convention(reference_systems: Optional[List[BarrierSystem]] = None) -> str:
    """
    Picks the D_conv that reproduces the exact closed form on a free case and a transparent case.

    Returns:
        str: One of CONVENTIONS; 'structure' is frozen in settings.
    """
    systems = reference_systems or [
        BarrierSystem(energy=5.0, potential=5.5, width=0.0, gap=10.0),
        BarrierSystem(energy=5.0, potential=5.5, width=0.01, gap=10.0),
    ]
    errors = {}
    for convention in CONVENTIONS:
        worst = 0.0
        for system in systems:
            exact = phase_time_exact(system).value
            try:
                numeric = phase_time_numeric(system, convention=convention).value
            except TunnelingError as e:
                logger.warning(f"convention '{convention}' failed on {system}: {e}")
                worst = math.inf
                break
            worst = max(worst, abs(numeric - exact) / abs(exact))
        errors[convention] = worst
    chosen = min(errors, key=errors.get)
    logger.info(f"phase convention calibration: {errors}; chosen '{chosen}'")
    return chosen
