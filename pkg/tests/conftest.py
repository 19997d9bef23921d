from pathlib import Path

import pytest

from cidiff.logmodel import Log, load_log

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_log(name: str) -> Log:
    return load_log(FIXTURES / name)


@pytest.fixture
def small_pass() -> Log:
    return fixture_log("regression_small_pass.log")


@pytest.fixture
def small_fail() -> Log:
    return fixture_log("regression_small_fail.log")


@pytest.fixture
def moves_pass() -> Log:
    return fixture_log("regression_moves_pass.log")


@pytest.fixture
def moves_fail() -> Log:
    return fixture_log("regression_moves_fail.log")
