import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from swmimo.config import parse_config  # noqa: E402


def small_config(**overrides):
    """Scenario with a short grid so unit tests stay fast."""
    base = {
        "grid.f_start_Hz": "1e8",
        "grid.f_stop_Hz": "1.5e8",
        "grid.delta_f_Hz": "1e7",
        "array.n_r": "4",
        "array.n_t": "4",
        "run.trials": "3",
        "fading.block_len": "4",
    }
    base.update({k.replace("__", "."): str(v) for k, v in overrides.items()})
    return parse_config("", base)


@pytest.fixture
def cfg():
    return small_config()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
