import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from irscov.channel import Scenario  # noqa: E402


@pytest.fixture
def default_scenario():
    return Scenario()


@pytest.fixture(scope="session")
def oracle_table():
    import oracles

    return oracles.load_table()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda l: int(l.split()[1])):
        terminalreporter.write_line(line)
