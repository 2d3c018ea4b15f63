import math

from fastapi import APIRouter, HTTPException

from ..core.errors import SingularDenominator, TunnelingError
from .docs import curve_sample_response, phase_time_sample_response, thresholds_sample_response
from .schemas import CurveRequestModel, PhaseTimeRequestModel
from .service import TunnelingCalculator

calculator_router = APIRouter()


@calculator_router.post("/phase-time", responses=phase_time_sample_response)
async def phase_time(request: PhaseTimeRequestModel):
    """
    Compute the exact, branch and free phase times of a double barrier.

    - **mass**: Particle mass (natural units: 1; SI: kg).
    - **energy**: Total energy including rest energy (natural: units of mc²; SI: eV).
    - **potential**: Barrier height V0, strictly between E - mc² and E + mc².
    - **width**: Width a of each barrier.
    - **gap**: Free separation L between the barriers.
    - **units**: `natural` or `si`.

    Returns inputs, k, q, qa, branch, tau_exact, tau_branch, tau_free, time_gain,
    traversal_velocity and verdict, all derived values in natural units.

    - **status_code 200**: Phase times computed.
    - **status_code 409**: The exact phase time is numerically singular.
    - **status_code 422**: Invalid data provided or the system lies outside the tunneling window.
    """
    try:
        return TunnelingCalculator().phase_time(request)
    except SingularDenominator as e:
        raise HTTPException(status_code=409, detail=f"{e.code}: {e}")
    except TunnelingError as e:
        raise HTTPException(status_code=422, detail=f"{e.code}: {e}")


@calculator_router.post("/curve", responses=curve_sample_response)
async def curve(request: CurveRequestModel):
    """
    Sample the V_T = c threshold curves a/L(beta).

    - **branches**: Subset of `A`, `B`.
    - **beta_min**, **beta_max**, **samples**: Evenly spaced beta range.
    - **betas**: Explicit betas in (0, 1], overrides the range.

    - **status_code 200**: Rows of branch, beta, alpha_ratio and feasible.
    - **status_code 422**: Invalid range provided.
    """
    rows = TunnelingCalculator.curve(request)
    for row in rows:
        if not math.isfinite(row["alpha_ratio"]):
            row["alpha_ratio"] = None
    return rows


@calculator_router.get("/thresholds", responses=thresholds_sample_response)
async def thresholds():
    """
    Fetch the critical betas of both branches and the branch-A time-gain threshold.

    - **status_code 200**: Thresholds returned.
    """
    return TunnelingCalculator.thresholds()
