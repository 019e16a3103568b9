import pytest

from ifpart.graph import Graph

# criterion number -> list of outcomes recorded by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool]]] = {}


def record(criterion: int, detail: str, ok: bool) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((detail, ok))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        entries = ACCEPTANCE[k]
        ok = all(flag for _, flag in entries)
        detail = "; ".join(d for d, _ in entries)
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def k33() -> Graph:
    return Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@pytest.fixture
def k33_graph():
    return k33()
