from __future__ import annotations

from hypothesis import settings
from hypothesis import strategies as st

from edgereg.graph import Graph

# exact homology has uneven run times; wall-clock deadlines only add flakiness
settings.register_profile("edgereg", deadline=None)
settings.load_profile("edgereg")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
