"""Shared fixtures: the worked example, reference labels, random generators."""

from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pargue import ArgumentationFramework, BetaLabel

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

_NAMES = "abcdefgh"

# one line per acceptance criterion, printed after the run (see test_acceptance)
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def example_af() -> ArgumentationFramework:
    """Two arguments jointly attacking a third, which attacks a fourth."""
    return ArgumentationFramework(
        ["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("c", "d")]
    )


@pytest.fixture
def example_labels() -> dict[str, BetaLabel]:
    return {
        "a": BetaLabel(1.0, 1.0),
        "b": BetaLabel(17.0, 2.0),
        "c": BetaLabel(4.0, 15.0),
        "d": BetaLabel(5.0, 1.5),
    }


@pytest.fixture
def chain_af() -> ArgumentationFramework:
    return ArgumentationFramework(["a", "b", "c"], [("a", "b"), ("b", "c")])


@st.composite
def frameworks(draw, min_args: int = 1, max_args: int = 6) -> ArgumentationFramework:
    n = draw(st.integers(min_args, max_args))
    names = list(_NAMES[:n])
    pairs = [(s, t) for s in names for t in names]
    attacks = draw(st.sets(st.sampled_from(pairs)))
    return ArgumentationFramework(names, attacks)


def random_framework(
    rng: random.Random, max_args: int = 6, density: float = 0.3
) -> ArgumentationFramework:
    """Seeded random framework: edge count binomial at the given density."""
    n = rng.randint(1, max_args)
    names = list(_NAMES[:n])
    attacks = [
        (s, t) for s in names for t in names if rng.random() < density
    ]
    return ArgumentationFramework(names, attacks)


def random_beta_labels(
    rng: random.Random, af: ArgumentationFramework
) -> dict[str, BetaLabel]:
    return {
        name: BetaLabel(rng.uniform(0.5, 20.0), rng.uniform(0.5, 20.0))
        for name in af.arguments
    }
