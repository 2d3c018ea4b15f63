import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import EnergyBelowRest, KleinRegime, Propagating


class UnitSystem(str, Enum):
    """
    Unit convention of a BarrierSystem.

    natural: hbar = c = 1, energies in units of the mass (so mc^2 = mass), lengths in units of 1/mass.
    si: mass in kg, energies in eV, lengths in metres, times in seconds.
    """
    NATURAL = "natural"
    SI = "si"


class SolutionBranch(str, Enum):
    """
    Tunneling solution family: A for V0 > E, B for V0 < E, Degenerate for V0 = E.
    """
    A = "A"
    B = "B"
    DEGENERATE = "Degenerate"


class Method(str, Enum):
    EXACT = "exact"
    BRANCH_A = "branch-a"
    BRANCH_B = "branch-b"
    FIRST_ORDER = "first-order"
    ORACLE = "oracle"
    FREE_REFERENCE = "free-reference"


class BarrierSystem(BaseModel):
    """
    Physical scenario: a particle of mass m and energy E crossing two square barriers of height V0
    and width a, separated by a free gap L.

    Only structural constraints are checked on construction; the tunneling window
    E - mc^2 < V0 < E + mc^2 is checked by check_regime() so that sweeps can report
    out-of-regime rows instead of failing.

    Attributes:
        mass (float): Particle mass (natural mode: any positive scale, 1 by default; si mode: kg).
        energy (float): Total energy E (including rest energy).
        potential (float): Barrier height V0.
        width (float): Barrier width a.
        gap (float): Distance L between the barriers.
        units (UnitSystem): Unit convention of the fields above.
    """
    model_config = ConfigDict(frozen=True)

    mass: float = Field(1.0, gt=0, allow_inf_nan=False)
    energy: float = Field(..., allow_inf_nan=False)
    potential: float = Field(..., allow_inf_nan=False)
    width: float = Field(0.0, ge=0, allow_inf_nan=False)
    gap: float = Field(0.0, ge=0, allow_inf_nan=False)
    units: UnitSystem = UnitSystem.NATURAL

    def rest_energy(self) -> float:
        """
        Returns mc^2 in the energy unit of the system.
        """
        if self.units is UnitSystem.NATURAL:
            return self.mass
        from .units import rest_energy_ev
        return rest_energy_ev(self.mass)

    def check_regime(self) -> None:
        """
        Validates that the system lies inside the tunneling window.

        Raises:
            EnergyBelowRest: If E <= mc^2.
            KleinRegime: If V0 >= E + mc^2.
            Propagating: If V0 <= E - mc^2.
        """
        rest = self.rest_energy()
        if self.energy <= rest:
            raise EnergyBelowRest(f"energy {self.energy} does not exceed the rest energy {rest}")
        if self.potential >= self.energy + rest:
            raise KleinRegime(f"potential {self.potential} is at or above E + mc^2 = {self.energy + rest}")
        if self.potential <= self.energy - rest:
            raise Propagating(f"potential {self.potential} is at or below E - mc^2 = {self.energy - rest}")

    def with_changes(self, **changes) -> "BarrierSystem":
        """
        Returns a validated copy with the given fields replaced.
        """
        return BarrierSystem(**{**self.model_dump(), **changes})


class Kinematics(BaseModel):
    """
    Relativistic kinematics of a BarrierSystem, always in natural units (hbar = c = m = 1).

    Attributes:
        k (float): Outside wave number, k = sqrt(E^2 - 1).
        q (float): Evanescent wave number inside the barriers, q = sqrt(1 - (V0 - E)^2).
        phase_velocity (float): E / k.
        group_velocity (float): k / E.
        matching_ratio (float): (k/q)(E - V0 + 1)/(E + 1); not to be confused with the width ratio a/L.
        branch (SolutionBranch): Solution family.
        energy (float): E in units of mc^2.
        potential (float): V0 in units of mc^2.
    """
    model_config = ConfigDict(frozen=True)

    k: float
    q: float
    phase_velocity: float
    group_velocity: float
    matching_ratio: float
    branch: SolutionBranch
    energy: float
    potential: float


class TimeResult(BaseModel):
    """
    A phase time or reference time in natural units (hbar / mc^2) with the method that produced it.
    """
    model_config = ConfigDict(frozen=True)

    value: float
    method: Method
    qa: Optional[float] = None

    @model_validator(mode='after')
    def validate_value(self):
        if not math.isfinite(self.value):
            raise ValueError(f"{self.method.value} time is not finite")
        return self
