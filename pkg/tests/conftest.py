import pathlib
import random

import pytest

from effcut import load_instance

from helpers import random_instance

INSTANCE_DIR = pathlib.Path(__file__).resolve().parent.parent / "instances"

CORPUS_SEED = 20240917
CORPUS_SIZE = 100


@pytest.fixture(scope="session")
def demo_instance():
    return load_instance(str(INSTANCE_DIR / "demo.txt"))


@pytest.fixture(scope="session")
def demo_path():
    return str(INSTANCE_DIR / "demo.txt")


@pytest.fixture(scope="session")
def corpus():
    rng = random.Random(CORPUS_SEED)
    return [random_instance(rng) for _ in range(CORPUS_SIZE)]


@pytest.fixture(scope="session")
def corpus_cache():
    """Filled by the oracle-equivalence criterion, reused by later ones."""
    return {}


@pytest.fixture(scope="session")
def acceptance_report():
    return []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    report = getattr(config, "_acceptance_report", None)
    if report:
        terminalreporter.section("acceptance criteria")
        for line in report:
            terminalreporter.write_line(line)


@pytest.fixture(autouse=True, scope="session")
def _register_report(request, acceptance_report):
    request.config._acceptance_report = acceptance_report
    yield
