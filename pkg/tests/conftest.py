import random
from pathlib import Path

import pytest

from holgds.grids import GdsGrid, HolantGrid, Multigraph
from holgds.signatures import Signature

DATA = Path(__file__).resolve().parents[1] / "src" / "holgds" / "data"


def data_text(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


def random_table(rnd: random.Random, domain: int, arity: int, lo=-3, hi=3) -> list:
    return [rnd.randint(lo, hi) for _ in range(domain ** arity)]


def random_holant_grid(rnd: random.Random, domain: int = 2, max_edges: int = 8,
                       loops: bool = True, max_degree: int = 6) -> HolantGrid:
    """Random multigraph grid with every degree in 1..max_degree."""
    while True:
        n = rnd.randint(1, 5)
        m = rnd.randint(1, max_edges)
        edges = []
        for _ in range(m):
            a, b = rnd.randrange(n), rnd.randrange(n)
            if a == b and not loops:
                continue
            edges.append((a, b))
        g = Multigraph(n, edges)
        if edges and all(0 < g.degree(v) <= max_degree for v in range(n)):
            break
    sigs, orders = [], []
    for v in range(n):
        inc = g.incident(v)
        rnd.shuffle(inc)
        orders.append(inc)
        sigs.append(Signature(domain, len(inc), random_table(rnd, domain, len(inc))))
    return HolantGrid.build(g, sigs, orders)


def random_simple_graph(rnd: random.Random, n: int, p: float = 0.5) -> Multigraph:
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rnd.random() < p]
    return Multigraph(n, edges)


def random_gds_grid(rnd: random.Random, max_n: int = 7, p: float = 0.5) -> GdsGrid:
    g = random_simple_graph(rnd, rnd.randint(1, max_n), p)
    sigs, orders = [], []
    for v in range(g.vertex_count):
        nb = g.neighbors(v)
        rnd.shuffle(nb)
        orders.append(nb)
        sigs.append(Signature(2, len(nb) + 1, random_table(rnd, 2, len(nb) + 1)))
    return GdsGrid.build(g, sigs, orders)


@pytest.fixture
def rnd():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def theta_report():
    from holgds.reduction import run_reduction, theta_graph
    return run_reduction(theta_graph(), flat_check=True)


# -- acceptance report ---------------------------------------------------------------------

ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion; the lines are echoed in the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
