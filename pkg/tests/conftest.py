import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from compatcol.instance import Colour, EdgeColouring

ACCEPTANCE_LINES: list[str] = []


def from_letters(n: int, letters: str) -> EdgeColouring:
    """Instance whose row-major upper-triangle edge colours are spelled out."""
    pairs = list(itertools.combinations(range(n), 2))
    assert len(letters) == len(pairs)
    m = np.full((n, n), -1, dtype=np.int8)
    for (u, v), ch in zip(pairs, letters):
        m[u, v] = m[v, u] = int(Colour[ch])
    return EdgeColouring(m)


@st.composite
def edge_colourings(draw, min_n=0, max_n=7, palette=(0, 1, 2)):
    n = draw(st.integers(min_n, max_n))
    k = n * (n - 1) // 2
    cols = draw(st.lists(st.sampled_from(palette), min_size=k, max_size=k))
    return from_letters(n, "".join("RGB"[c] for c in cols))


@pytest.fixture
def letters():
    return from_letters


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
