"""Shared fixtures: standard diagrams, seeded corpora and the acceptance summary."""

from __future__ import annotations

import pytest

from tanglevol import parse_pd
from tanglevol.generate import make_rng, signed_pair_sum

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
KINK = "X(1,1,2,2)"
TREFOIL_SUM = "X(1,4,2,5) X(3,6,4,1) X(5,8,6,3) X(7,10,8,11) X(9,12,10,7) X(11,2,12,9)"

ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    """Store one pass/fail line for the terminal summary and echo it."""
    line = f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}"
    if detail:
        line += f" :: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL)


@pytest.fixture
def figure_eight():
    return parse_pd(FIGURE_EIGHT)


@pytest.fixture
def kink():
    return parse_pd(KINK)


@pytest.fixture(scope="session")
def knot_sums():
    """200 knots T+ + T- built from one strongly alternating tangle of each sign."""
    rng = make_rng(20260101)
    return [signed_pair_sum(rng) for _ in range(200)]
