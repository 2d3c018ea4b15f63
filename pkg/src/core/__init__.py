from .errors import TunnelingError
from .kinematics import derive_kinematics, validate_transparency
from .schemas import BarrierSystem, Kinematics, Method, SolutionBranch, TimeResult, UnitSystem
