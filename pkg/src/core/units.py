from enum import Enum

import scipy.constants as const

from .schemas import BarrierSystem, UnitSystem


class Dimension(str, Enum):
    ENERGY = "energy"
    LENGTH = "length"
    TIME = "time"
    VELOCITY = "velocity"


def rest_energy_ev(mass_kg: float) -> float:
    """
    Returns mc^2 in eV for a mass given in kg.
    """
    return mass_kg * const.c ** 2 / const.e


def _unit_scales(sys: BarrierSystem) -> dict[Dimension, float]:
    """
    Size of one natural unit expressed in the units of the system.

    Natural units here always mean hbar = c = m = 1, so a natural-mode system with mass != 1
    is rescaled as well.
    """
    if sys.units is UnitSystem.NATURAL:
        return {
            Dimension.ENERGY: sys.mass,
            Dimension.LENGTH: 1.0 / sys.mass,
            Dimension.TIME: 1.0 / sys.mass,
            Dimension.VELOCITY: 1.0,
        }
    rest_energy_joule = sys.mass * const.c ** 2
    return {
        Dimension.ENERGY: rest_energy_joule / const.e,
        Dimension.LENGTH: const.hbar / (sys.mass * const.c),
        Dimension.TIME: const.hbar / rest_energy_joule,
        Dimension.VELOCITY: const.c,
    }


def to_natural(sys: BarrierSystem) -> BarrierSystem:
    """
    Converts a system to natural units with m = 1.

    Args:
        sys (BarrierSystem): System in any unit convention.

    Returns:
        BarrierSystem: Equivalent system with mass 1 and natural units.
    """
    if sys.units is UnitSystem.NATURAL and sys.mass == 1.0:
        return sys
    scales = _unit_scales(sys)
    return BarrierSystem(
        mass=1.0,
        energy=sys.energy / scales[Dimension.ENERGY],
        potential=sys.potential / scales[Dimension.ENERGY],
        width=sys.width / scales[Dimension.LENGTH],
        gap=sys.gap / scales[Dimension.LENGTH],
        units=UnitSystem.NATURAL,
    )


def from_natural(value: float, dimension: Dimension, sys: BarrierSystem) -> float:
    """
    Converts a natural-unit quantity back to the units of the given system.
    """
    return value * _unit_scales(sys)[dimension]


def natural_to_si(sys: BarrierSystem, mass_kg: float = const.m_e) -> BarrierSystem:
    """
    Expresses a natural-unit system in SI units (kg, eV, m) for a particle of the given mass.
    """
    natural = to_natural(sys)
    target = BarrierSystem(mass=mass_kg, energy=1.0, potential=1.0, units=UnitSystem.SI)
    scales = _unit_scales(target)
    return BarrierSystem(
        mass=mass_kg,
        energy=natural.energy * scales[Dimension.ENERGY],
        potential=natural.potential * scales[Dimension.ENERGY],
        width=natural.width * scales[Dimension.LENGTH],
        gap=natural.gap * scales[Dimension.LENGTH],
        units=UnitSystem.SI,
    )
