"""
Shared fixtures: the three bundled observation structures and quiet logging.
"""
import os

import pytest
from loguru import logger

from src.models.factory import StructureFactory
from src.syntax.parser import FormulaParser

STRUCTURES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config", "structures")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run acceptance-sized tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session", autouse=True)
def quiet_logger():
    logger.disable("src")
    yield
    logger.enable("src")


def structure_path(name: str) -> str:
    return os.path.join(STRUCTURES_DIR, f"{name}.json")


@pytest.fixture(scope="session")
def c1():
    """N={a,b}, O_a={oa}, O_b={ob}, R={0,1}, max."""
    return StructureFactory(structure_path("c1")).create_structure()


@pytest.fixture(scope="session")
def c2():
    """As C1 but O_b={ob1,ob2}."""
    return StructureFactory(structure_path("c2")).create_structure()


@pytest.fixture(scope="session")
def c3():
    """Union composition over the token sets of {x, y}."""
    return StructureFactory(structure_path("c3")).create_structure()


@pytest.fixture(scope="session")
def parse1(c1):
    return FormulaParser(c1).parse_formula


@pytest.fixture(scope="session")
def parse2(c2):
    return FormulaParser(c2).parse_formula


@pytest.fixture(scope="session")
def sequent2(c2):
    return FormulaParser(c2).parse_sequent
