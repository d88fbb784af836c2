from __future__ import annotations

from hypothesis import strategies as st


@st.composite
def tree_degree_sequences(draw, min_n: int = 2, max_n: int = 40):
    """Random tree degree sequences drawn through Prüfer words."""
    n = draw(st.integers(min_n, max_n))
    word = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    deg = [1] * n
    for v in word:
        deg[v] += 1
    return tuple(sorted(deg, reverse=True))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
