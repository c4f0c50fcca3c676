from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from distideals.digraph import Digraph, is_strong

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one line per acceptance criterion, printed after the test session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def strong_digraphs(draw, min_n: int = 1, max_n: int = 5) -> Digraph:
    """Strong digraphs: a random Hamiltonian cycle (forcing strongness) plus random arcs."""
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    arcs = {(perm[i], perm[(i + 1) % n]) for i in range(n)} if n > 1 else set()
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    # optionally drop cycle arcs again; keep only strong results
    drop = draw(st.lists(st.sampled_from(sorted(arcs)), max_size=2)) if arcs else []
    g = Digraph(n, frozenset((arcs | set(extra)) - set(drop)))
    if not is_strong(g):
        g = Digraph(n, frozenset(arcs | set(extra)))
    return g


@pytest.fixture
def slow_enabled() -> bool:
    return os.environ.get("DISTIDEALS_SLOW", "") not in ("", "0")
