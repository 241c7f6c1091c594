from __future__ import annotations

import sys

import pytest
from hypothesis import settings, strategies as st

from chainpoly import corpus
from chainpoly.poset import build_poset

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

BUNDLED = ("p1", "p2", "p3", "p4", "p5", "3x3")


@pytest.fixture(scope="session")
def posets():
    return {name: corpus.load(name) for name in BUNDLED}


@st.composite
def small_posets(draw, max_p: int = 7):
    """Random posets on up to ``max_p`` elements under a random labeling."""
    p = draw(st.integers(1, max_p))
    perm = draw(st.permutations(range(1, p + 1)))
    pairs = [(i, j) for i in range(p) for j in range(i + 1, p) if draw(st.booleans())]
    return build_poset(p, [(perm[i], perm[j]) for i, j in pairs])


@st.composite
def poset_and_family(draw, max_p: int = 7):
    P = draw(small_posets(max_p))
    chains = P.maximal_chains().chains
    picked = draw(st.sets(st.sampled_from(chains), min_size=1))
    return P, P.family(picked)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
