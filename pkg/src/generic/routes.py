from fastapi import APIRouter

from ..settings import PHASE_CONVENTION, VERSION
from .generic_docs import service_healthy_sample_response

generic_router = APIRouter()

@generic_router.get('/health', responses=service_healthy_sample_response)
def health():
    """
    Check the health of the service (used, for example, for container orchestration).

    - **status_code 200**: Service healthy, with the running version and the frozen phase convention.
    """
    return {"detail": "OK", "version": VERSION, "phase_convention": PHASE_CONVENTION}
