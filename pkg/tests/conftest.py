import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rel2pg.fixtures import hosp  # noqa: E402
from rel2pg.mapper import complete_map  # noqa: E402


@pytest.fixture
def db():
    return hosp()


@pytest.fixture
def gd(db):
    return complete_map(db)[0]


@pytest.fixture
def data_dir():
    return Path(__file__).parent.parent / "data"


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get("acceptance", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
