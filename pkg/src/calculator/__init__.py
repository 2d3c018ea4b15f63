from .routes import calculator_router
from .service import TunnelingCalculator
