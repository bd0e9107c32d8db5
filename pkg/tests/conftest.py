import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from grpn.group_core import parse_element  # noqa: E402

# Elements used as worked examples.
SIGMA_333 = ("3 1^1 2^2", 3, 3)
SIGMA_334 = ("1^1 3^2 4 2^1", 3, 4)
PI_18_6_7 = ("7^2 3 2 4^9 5^9 6 1^16", 18, 7)


@pytest.fixture
def sigma333():
    return parse_element(*SIGMA_333)


@pytest.fixture
def sigma334():
    return parse_element(*SIGMA_334)


@pytest.fixture
def pi4():
    return parse_element(*PI_18_6_7)


# Acceptance verdicts, one line per criterion, echoed in the terminal summary
# so they show up even when output capture is on.
_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        _VERDICTS.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
