from pathlib import Path

import pytest
from hypothesis import settings

from tmtensor import parse_machine

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

MACHINE_DIR = Path(__file__).parent / "machines"

# Tape tokens used whenever a corpus machine needs an input.
CORPUS_TAPES = {
    "m1_unary_append": ["1", "1"],
    "binary_increment": ["0", "1", "1"],
    "bouncer": [],
}


def machine_text(name: str) -> str:
    return (MACHINE_DIR / f"{name}.tm").read_text()


def machine_path(name: str) -> Path:
    return MACHINE_DIR / f"{name}.tm"


@pytest.fixture(scope="session")
def m1():
    return parse_machine(machine_text("m1_unary_append"))


@pytest.fixture(scope="session")
def increment():
    return parse_machine(machine_text("binary_increment"))


@pytest.fixture(scope="session")
def bouncer():
    return parse_machine(machine_text("bouncer"))


@pytest.fixture(scope="session")
def corpus():
    return [
        (name, parse_machine(machine_text(name)), tape)
        for name, tape in CORPUS_TAPES.items()
    ]
