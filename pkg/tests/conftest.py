from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

from mgtc.parser import parse_input, parse_program

PROGRAMS = Path(str(resources.files("mgtc") / "programs"))


def read(name: str) -> str:
    return (PROGRAMS / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def rooms():
    return parse_program(read("rooms.mg"), "rooms.mg")


@pytest.fixture(scope="session")
def rooms2():
    return parse_program(read("rooms2.mg"), "rooms2.mg")


@pytest.fixture(scope="session")
def rooms_input(rooms):
    return parse_input(read("rooms.in"), rooms, "rooms.in")


@pytest.fixture(scope="session")
def pairs():
    return parse_program(read("pairs.mg"), "pairs.mg")


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
