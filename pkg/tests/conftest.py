import sys
from pathlib import Path

import pytest

# helper modules (dense oracles) live next to the tests
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def table_cache(tmp_path_factory):
    """Shared on-disk presentation cache so repeated table cells are computed once."""
    return str(tmp_path_factory.mktemp("presentations"))


_CRITERIA = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_CRITERIA] = {}


@pytest.fixture
def record_criterion(request):
    """Store one pass/fail line per acceptance criterion for the terminal summary."""
    results = request.config.stash[_CRITERIA]

    def record(number: int, title: str, failures: list[str], extra: str = "") -> None:
        status = "PASS" if not failures else "FAIL"
        detail = extra if not failures else "; ".join(failures[:5])
        line = f"criterion {number} {status}: {title}" + (f" ({detail})" if detail else "")
        results[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_CRITERIA, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
