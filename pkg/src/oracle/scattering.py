import cmath
import logging
import math
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import EnergyBelowRest, IllConditioned, KleinRegime, Propagating
from ..core.kinematics import derive_kinematics
from ..core.schemas import BarrierSystem
from ..core.units import to_natural

logger = logging.getLogger(__name__)

MAX_SOLVE_RESIDUAL = 1e-8


class Layer(BaseModel):
    """
    A slab of constant potential in natural units. Potential 0 is free space.
    """
    model_config = ConfigDict(frozen=True)

    potential: float = Field(..., allow_inf_nan=False)
    thickness: float = Field(..., ge=0, allow_inf_nan=False)


class TransmissionRecord(BaseModel):
    """
    Plane-wave scattering result of a layer stack.

    The transmitted wave is t * exp(ikx) for x past the stack, so an empty stack gives t = 1.

    Attributes:
        t (complex): Transmission amplitude.
        r (complex): Reflection amplitude.
        flux_residual (float): |t|^2 + |r|^2 - 1.
        phase (float): Wrapped arg t of this single evaluation, in (-pi, pi]; phase_curve gives the
            unwrapped phase over an energy grid.
        structure_phase (float): arg(t * exp(ikD)) for a stack of total thickness D, in (-pi, pi].
    """
    model_config = ConfigDict(frozen=True)

    t: complex
    r: complex
    flux_residual: float
    phase: float
    structure_phase: float


def double_barrier_layers(sys: BarrierSystem) -> List[Layer]:
    """
    Layer stack [0, a] U [a + L, 2a + L] of the (natural-unit) system.
    """
    natural = to_natural(sys)
    barrier = Layer(potential=natural.potential, thickness=natural.width)
    if natural.width == 0.0:
        return [Layer(potential=0.0, thickness=natural.gap)]
    return [barrier, Layer(potential=0.0, thickness=natural.gap), barrier]


def single_barrier_layers(sys: BarrierSystem, width: float) -> List[Layer]:
    """
    One barrier of the system's height and the given natural width.
    """
    natural = to_natural(sys)
    return [Layer(potential=natural.potential, thickness=width)]


def check_layers_regime(energy: float, layers: List[Layer]) -> None:
    """
    Validates that every barrier of the stack is tunneled through, not propagated over or Klein-like.
    """
    if energy <= 1.0:
        raise EnergyBelowRest(f"energy {energy} does not exceed the rest energy")
    for layer in layers:
        if layer.potential == 0.0 or layer.thickness == 0.0:
            continue
        if layer.potential >= energy + 1.0:
            raise KleinRegime(f"layer potential {layer.potential} is at or above E + mc^2")
        if layer.potential <= energy - 1.0:
            raise Propagating(f"layer potential {layer.potential} is at or below E - mc^2")


def _propagator(energy: float, layer: Layer) -> tuple[np.ndarray, float]:
    """
    Spinor propagator exp(A d) across one layer and the log of the factor divided out of it.

    A = i sigma_x (E - V - sigma_z) satisfies A^2 = 1 - (E - V)^2, so inside a barrier the propagator
    is built from real exponentials exp(+-qd); the growing one is factored out as exp(qd).
    """
    kinetic = energy - layer.potential
    generator = np.array([[0.0, 1j * (kinetic + 1.0)],
                          [1j * (kinetic - 1.0), 0.0]], dtype=complex)
    identity = np.eye(2, dtype=complex)
    d = layer.thickness
    square = (1.0 - kinetic) * (1.0 + kinetic)

    if d == 0.0:
        return identity, 0.0
    if square > 0.0:
        q = math.sqrt(square)
        decay = math.exp(-2.0 * q * d)
        half_sum = 0.5 * (1.0 + decay)
        half_diff = -0.5 * math.expm1(-2.0 * q * d)
        return half_sum * identity + (half_diff / q) * generator, q * d
    if square < 0.0:
        k = math.sqrt(-square)
        return math.cos(k * d) * identity + (math.sin(k * d) / k) * generator, 0.0
    return identity + d * generator, 0.0


def transfer_matrix(energy: float, layers: List[Layer]) -> tuple[np.ndarray, float]:
    """
    Chains the layer propagators left to right: psi(D) = M psi(0), up to exp(log_scale).
    """
    total = np.eye(2, dtype=complex)
    log_scale = 0.0
    for layer in layers:
        propagator, layer_scale = _propagator(energy, layer)
        total = propagator @ total
        log_scale += layer_scale
    return total, log_scale


def scatter_layers(energy: float, layers: List[Layer]) -> TransmissionRecord:
    """
    Solves spinor continuity through a layer stack for a plane wave incident from the left.

    Args:
        energy (float): Total energy in units of mc^2.
        layers (List[Layer]): The stack, outside potential 0 on both sides.

    Returns:
        TransmissionRecord: t, r, flux residual and phases.

    Raises:
        IllConditioned: If the matching system cannot be solved to MAX_SOLVE_RESIDUAL.
    """
    check_layers_regime(energy, layers)
    k = math.sqrt((energy - 1.0) * (energy + 1.0))
    spinor_ratio = k / (energy + 1.0)
    forward = np.array([1.0, spinor_ratio], dtype=complex)
    backward = np.array([1.0, -spinor_ratio], dtype=complex)
    total_thickness = sum(layer.thickness for layer in layers)

    matrix, log_scale = transfer_matrix(energy, layers)
    # unknowns: r and the scaled amplitude at the far edge, exp(-log_scale) * t * exp(ikD)
    system = np.column_stack([matrix @ backward, -forward])
    rhs = -(matrix @ forward)
    try:
        r, edge_amplitude = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as e:
        raise IllConditioned(f"matching system is singular: {e}")

    residual = np.linalg.norm(system @ np.array([r, edge_amplitude]) - rhs) / max(np.linalg.norm(rhs), 1.0)
    if not residual <= MAX_SOLVE_RESIDUAL:
        raise IllConditioned(f"matching residual {residual:.3e} exceeds {MAX_SOLVE_RESIDUAL:.0e}")

    structure_phase = cmath.phase(edge_amplitude)
    log_modulus = math.log(abs(edge_amplitude)) + log_scale if edge_amplitude != 0 else -math.inf
    t = cmath.exp(complex(log_modulus, structure_phase - k * total_thickness))
    flux_residual = abs(t) ** 2 + abs(r) ** 2 - 1.0

    return TransmissionRecord(
        t=t,
        r=complex(r),
        flux_residual=float(flux_residual),
        phase=cmath.phase(t),
        structure_phase=structure_phase,
    )


def scatter(sys: BarrierSystem) -> TransmissionRecord:
    """
    Scatters a plane wave off the double barrier of the system.
    """
    kin = derive_kinematics(sys)
    record = scatter_layers(kin.energy, double_barrier_layers(sys))
    logger.debug(f"scatter E={kin.energy:.6g}: |t|^2={abs(record.t) ** 2:.6g}, flux residual {record.flux_residual:.2e}")
    return record
