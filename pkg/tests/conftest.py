from functools import partial

import pytest

from tests.test_physics_constants import test_system_a, test_system_b, test_system_degenerate


def corrupted_terms(kin, sys):
    """
    Appendix terms with h1 off by one percent, the negative control of the verification suites.
    """
    from src.exact.appendix import appendix_terms
    terms = appendix_terms(kin, sys)
    return terms.model_copy(update={"h1": 1.01 * terms.h1})


@pytest.fixture
def system_a():
    from src.core.schemas import BarrierSystem
    return BarrierSystem(**test_system_a)


@pytest.fixture
def system_b():
    from src.core.schemas import BarrierSystem
    return BarrierSystem(**test_system_b)


@pytest.fixture
def system_degenerate():
    from src.core.schemas import BarrierSystem
    return BarrierSystem(**test_system_degenerate)


@pytest.fixture
def corrupted_evaluator():
    from src.exact.appendix import phase_time_exact
    return partial(phase_time_exact, terms=corrupted_terms)


@pytest.fixture
def calculator():
    from src.calculator.service import TunnelingCalculator
    return TunnelingCalculator(max_workers=2)


@pytest.fixture
def corrupted_calculator(corrupted_evaluator):
    from src.calculator.service import TunnelingCalculator
    return TunnelingCalculator(exact_evaluator=corrupted_evaluator, max_workers=2)


@pytest.fixture
def client():
    from fastapi.testclient import TestClient
    from src.main import app
    return TestClient(app)
