import os
import subprocess
import sys

import pytest

from noneven import SignPattern
from noneven.digraph import Digraph, double_cycle

# Reference sign patterns (0-based indices).
OVERLAP_FAILURE = [
    [-1, 1, 0, -1],
    [0, -1, 0, 1],
    [0, -1, -1, 1],
    [0, -1, 0, -1],
]
C2_PATTERN = [[-1, 1], [-1, -1]]
C4_PATTERN = [
    [-1, -1, 0, -1],
    [1, -1, -1, 0],
    [0, 1, -1, -1],
    [1, 0, 1, -1],
]


@pytest.fixture
def overlap_failure():
    return SignPattern(OVERLAP_FAILURE)


@pytest.fixture
def c2_pattern():
    return SignPattern(C2_PATTERN)


@pytest.fixture
def c4_pattern():
    return SignPattern(C4_PATTERN)


@pytest.fixture
def c3star():
    return double_cycle(3)


@pytest.fixture
def c4star():
    return double_cycle(4)


def single_arc():
    return Digraph(2, [(0, 1)])


def run_cli(*args, stdin=None):
    """Run the CLI in a subprocess; returns (exit code, stdout, stderr)."""
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "noneven", *map(str, args)],
        input=stdin, capture_output=True, text=True, env=env,
    )
    return proc.returncode, proc.stdout, proc.stderr


def write_pattern(tmp_path, rows, name="h.txt"):
    path = tmp_path / name
    path.write_text(f"{len(rows)}\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    return path


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
