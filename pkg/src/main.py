import logging

from fastapi import FastAPI

from .calculator.routes import calculator_router
from .generic.routes import generic_router
from .settings import PROJECT_NAME, VERSION

logger = logging.getLogger('uvicorn.error')


def main():
    logger.info(f"Starting {PROJECT_NAME} {VERSION}")
    return FastAPI(
        title=PROJECT_NAME,
        description="Phase times of a relativistic particle tunneling through two square barriers, "
                    "their transparent-limit approximations and the superluminality conditions they imply.",
        version=VERSION
    )


app = main()
app.include_router(generic_router)
app.include_router(calculator_router)
