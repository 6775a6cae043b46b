"""Constructive translations between Holant and #GDS instances."""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    ArityMismatch,
    InvalidPairing,
    NotBipartite,
    NotThreeRegular,
    NotUniform,
    UnsupportedMatrixShape,
)
from .evaluate import evaluate
from .exactnum import ExactMatrix, eigenvalues_2x2, normalize
from .grids import GdsGrid, HolantGrid, Multigraph
from .signatures import Signature, equality, is_uniform, split, symmetric

# domain-4 binary signature swapping the values 1 and 2
NEQ12 = Signature(4, 2, [1, 0, 0, 0,
                         0, 0, 1, 0,
                         0, 1, 0, 0,
                         0, 0, 0, 1])

SUBDIVIDER = symmetric([1, 1, 1, 1])


def _forced_zero(f: Signature) -> Signature:
    """g(0, a) = f(a), g(1, a) = 0."""
    return Signature(2, f.arity + 1, list(f.table) + [0] * len(f.table))


def holant_to_gds(g: HolantGrid) -> GdsGrid:
    """Subdivide every edge by a [1,1,1,1] vertex; force originals to 0.

    A self-loop at v is routed through two subdivision vertices joined by an
    extra forced-zero equality vertex, so the result stays simple.
    """
    g.validate()
    if g.domain_size != 2:
        raise ValueError("holant_to_gds needs a Boolean grid")
    n = g.graph.vertex_count
    edges, sigs, orders = [], list(_forced_zero(f) for f in g.signatures), [None] * n
    sides = [0] * n
    slot_vertex = {}  # (edge index, occurrence) -> subdivision vertex
    nxt = n

    def new_vertex(sig, side):
        nonlocal nxt
        sigs.append(sig)
        orders.append(None)
        sides.append(side)
        nxt += 1
        return nxt - 1

    adj = defaultdict(list)
    for i, (a, b) in enumerate(g.graph.edges):
        if a != b:
            w = new_vertex(SUBDIVIDER, 1)
            slot_vertex[(i, 0)] = slot_vertex[(i, 1)] = w
            for x in (a, b):
                edges.append((x, w))
            adj[w] = [a, b]
        else:
            w1 = new_vertex(SUBDIVIDER, 1)
            w2 = new_vertex(SUBDIVIDER, 1)
            m = new_vertex(_forced_zero(equality(2)), 0)
            slot_vertex[(i, 0)], slot_vertex[(i, 1)] = w1, w2
            edges += [(a, w1), (w1, m), (m, w2), (w2, a)]
            adj[w1], adj[w2], adj[m] = [a, m], [m, a], [w1, w2]
    for v in range(n):
        seen = defaultdict(int)
        order = []
        for e in g.orders[v]:
            order.append(slot_vertex[(e, seen[e])])
            seen[e] += 1
        orders[v] = order
    for w, nb in adj.items():
        orders[w] = nb
    graph = Multigraph(nxt, edges, sides)
    return GdsGrid.build(graph, sigs, orders, planar=g.planar)


def gds_to_holant4(g: GdsGrid) -> HolantGrid:
    """Domain-4 Holant grid with a NEQ12 vertex on every edge.

    The value on the edge between v and its subdivision vertex encodes
    2*sigma(v) + sigma(neighbor).
    """
    g.validate()
    n = g.graph.vertex_count
    edges, sigs = [], []
    half_edge = {}  # (vertex, neighbor) -> new edge index
    for i, (a, b) in enumerate(g.graph.edges):
        w = n + i
        half_edge[(a, b)] = len(edges)
        edges.append((a, w))
        half_edge[(b, a)] = len(edges)
        edges.append((w, b))
    for v in range(n):
        sigs.append(_encode4(g.signatures[v]))
    orders = [[half_edge[(v, u)] for u in g.orders[v]] for v in range(n)]
    for i, (a, b) in enumerate(g.graph.edges):
        sigs.append(NEQ12)
        orders.append([half_edge[(a, b)], half_edge[(b, a)]])
    graph = Multigraph(n + len(g.graph.edges), edges, [0] * n + [1] * len(g.graph.edges))
    return HolantGrid.build(graph, sigs, orders, planar=g.planar)


def _encode4(f: Signature) -> Signature:
    r = f.arity - 1
    if r == 0:  # isolated vertex: both of its own values survive
        return Signature(4, 0, [f((0,)) + f((1,))])
    table = []
    for alpha in itertools.product(range(4), repeat=r):
        if all(x < 2 for x in alpha):
            table.append(f((0,) + alpha))
        elif all(x >= 2 for x in alpha):
            table.append(f((1,) + tuple(x - 2 for x in alpha)))
        else:
            table.append(0)
    return Signature(4, r, table)


# -- vertex cover as #GDS ----------------------------------------------------------

def _require_cubic(g: Multigraph) -> None:
    g.validate()
    for v in range(g.vertex_count):
        if g.degree(v) != 3:
            raise NotThreeRegular(f"vertex {v} has degree {g.degree(v)}")


def simple_underlying(g: Multigraph) -> Multigraph:
    """Drop repeated parallel edges (neighborhoods are sets under #GDS)."""
    if any(a == b for a, b in g.edges):
        raise ValueError("self-loops have no vertex-cover meaning here")
    seen, edges = set(), []
    for a, b in g.edges:
        key = frozenset((a, b))
        if key not in seen:
            seen.add(key)
            edges.append((a, b))
    return Multigraph(g.vertex_count, edges, g.bipartition)


def vc_as_gds(g: Multigraph, variant: int = 1) -> GdsGrid:
    """#GDS grid whose value is the number of vertex covers of g.

    Variant 1 puts (f0, f1) = ([0,...,0,1], [1,...,1]) on every vertex.
    Variant 2 puts uniform [1,0,...,0] on side 0 and uniform [1,...,1,2]
    on side 1. Parallel edges are merged first.
    """
    _require_cubic(g)
    sides = g.two_coloring()
    h = simple_underlying(g).with_bipartition()
    sigs = []
    for v in range(h.vertex_count):
        d = h.degree(v)
        if variant == 1:
            f0, f1 = [0] * d + [1], [1] * (d + 1)
        elif variant == 2:
            f0 = [1] + [0] * d if sides[v] == 0 else [1] * d + [2]
            f1 = f0
        else:
            raise ValueError(f"unknown variant {variant}")
        sigs.append(Signature(2, d + 1, symmetric(f0).table + symmetric(f1).table))
    return GdsGrid.build(h, sigs)


# -- uniform bipartite factorization ------------------------------------------------

def _edge_between(g: Multigraph):
    idx = {}
    for i, (a, b) in enumerate(g.edges):
        idx[(a, b)] = idx[(b, a)] = i
    return idx


def uniform_holant_pair(g: GdsGrid):
    """The two Holant grids of the product factorization."""
    g.validate()
    sides = g.graph.two_coloring()
    idx = _edge_between(g.graph)
    cores = []
    for v, f in enumerate(g.signatures):
        if f.arity < 2 or not is_uniform(f):
            raise NotUniform(f"vertex {v} does not carry a uniform signature")
        cores.append(split(f).f0)
    orders = [[idx[(v, u)] for u in g.orders[v]] for v in range(g.graph.vertex_count)]
    graph = g.graph.with_bipartition()

    def build(core_side):
        sigs = [cores[v] if sides[v] == core_side else equality(g.graph.degree(v))
                for v in range(g.graph.vertex_count)]
        return HolantGrid.build(graph, sigs, orders)

    return build(0), build(1)


def times_factorization_check(g: GdsGrid, method: str = "ve"):
    """(#GDS value, Holant(Omega_1), Holant(Omega_2)); first = second * third."""
    om1, om2 = uniform_holant_pair(g)
    return evaluate(g, method), evaluate(om1, method), evaluate(om2, method)


# -- tripartite edge-weight form -----------------------------------------------------

def tripartite_form(g: Multigraph, m: ExactMatrix, k: int, flip: bool = False) -> HolantGrid:
    """Holant(=_k | M | =_k): an M vertex on every edge, rows facing side 0.

    With ``flip`` the column index faces side 0 instead.
    """
    sides = g.two_coloring()
    if (m.rows, m.cols) != (2, 2):
        raise ValueError("M must be 2x2")
    n = g.vertex_count
    for v in range(n):
        if g.degree(v) != k:
            raise ArityMismatch(f"vertex {v} has degree {g.degree(v)}, expected {k}")
    mt = Signature(2, 2, m.entries)
    edges, sigs = [], [equality(k)] * n
    slot = {}
    orders = [[] for _ in range(n)]
    extra_orders = []
    for i, (a, b) in enumerate(g.edges):
        u, w = (a, b) if sides[a] == 0 else (b, a)
        if sides[u] == sides[w]:
            raise NotBipartite(f"edge {i} lies within one side")
        eu, ew = len(edges), len(edges) + 1
        edges += [(u, n + i), (n + i, w)]
        slot[(i, u)], slot[(i, w)] = eu, ew
        extra_orders.append([ew, eu] if flip else [eu, ew])
    for v in range(n):
        orders[v] = [slot[(i, v)] for i in g.incident(v)]
    sigs = sigs + [mt] * len(g.edges)
    graph = Multigraph(n + len(g.edges), edges, [0] * n + [1] * len(g.edges))
    return HolantGrid.build(graph, sigs, orders + extra_orders)


def bipartite_holant(g: Multigraph, left: Signature, right: Signature) -> HolantGrid:
    """Holant grid with ``left`` on side 0 and ``right`` on side 1."""
    sides = g.two_coloring()
    sigs = [left if s == 0 else right for s in sides]
    return HolantGrid.build(g.with_bipartition(), sigs)


def eq_tensor(m: ExactMatrix, k: int) -> Signature:
    """(=_k) M^{(x)k} as a symmetric signature."""
    return symmetric([sum(m[b, 0] ** (k - j) * m[b, 1] ** j for b in (0, 1))
                      for j in range(k + 1)])


def gds_equals_holant_squared_check(g: Multigraph, m: ExactMatrix, k: int = 3, method: str = "ve"):
    """(#GDS with uniform f0 on both sides, Holant(f0 | =_k) squared)."""
    if (m.rows, m.cols) != (2, 2):
        raise UnsupportedMatrixShape("M must be 2x2")
    if not (m[0, 1] == m[1, 0] or m[0, 0] == m[1, 1]):
        raise UnsupportedMatrixShape("M must be symmetric or have equal diagonal entries")
    f0 = eq_tensor(m, k)
    sides = g.two_coloring()
    for v in range(g.vertex_count):
        if g.degree(v) != k:
            raise ArityMismatch(f"vertex {v} has degree {g.degree(v)}, expected {k}")
    uni = Signature(2, k + 1, f0.table + f0.table)
    gds = GdsGrid.build(g.with_bipartition(), [uni] * g.vertex_count)
    hol = bipartite_holant(g, f0, equality(k))
    return evaluate(gds, method), evaluate(hol, method) ** 2


def _exact(x):
    return Fraction(x) if isinstance(x, int) else x


def spectral_substitute(n: ExactMatrix, targets: Sequence, lambdas: Optional[Sequence] = None) -> ExactMatrix:
    """P diag(targets) P^{-1}, where column i of P is an eigenvector for lambdas[i].

    For distinct eigenvalues this equals alpha N + beta I with the linear
    interpolant through (lambda_i, target_i), so P is never formed.
    Default lambdas are the eigenvalues in ascending order.
    """
    l1, l2 = eigenvalues_2x2(n) if lambdas is None else lambdas
    if l1 == l2:
        raise ValueError("eigenvalues must be distinct")
    d1, d2 = (_exact(t) for t in targets)
    l1, l2 = _exact(l1), _exact(l2)
    alpha = (d1 - d2) / (l1 - l2)
    beta = d1 - alpha * l1
    return ExactMatrix.from_rows([[normalize(alpha * n[i, j] + (beta if i == j else 0))
                                   for j in range(2)] for i in range(2)])


def proportionality_factor(a: ExactMatrix, b: ExactMatrix):
    """c with a = c * b, or None."""
    pairs = [(a[i, j], b[i, j]) for i in range(a.rows) for j in range(a.cols)]
    c = None
    for x, y in pairs:
        if y == 0:
            if x != 0:
                return None
            continue
        r = normalize(_exact(x) / _exact(y))
        if c is None:
            c = r
        elif r != c:
            return None
    return c


# -- symmetric bipartite graphs -------------------------------------------------------

def swapped_grid(grid: HolantGrid) -> HolantGrid:
    """Exchange u_i and v_i along the stored pairing, keeping edge orders."""
    g = grid.graph
    if g.sym_pairing is None:
        raise InvalidPairing("grid has no symmetric pairing")
    g.validate()
    partner = {}
    for u, v in g.sym_pairing:
        partner[u], partner[v] = v, u
    # k-th copy of edge {x, y} maps to k-th copy of {partner x, partner y}
    copies = defaultdict(list)
    for i, (a, b) in enumerate(g.edges):
        copies[frozenset((a, b))].append(i)
    phi = {}
    for key, lst in copies.items():
        a, b = tuple(key)
        img = copies.get(frozenset((partner[a], partner[b])), [])
        if len(img) != len(lst):
            raise InvalidPairing("pairing does not preserve edge multiplicities")
        for e, f in zip(lst, img):
            phi[e] = f
    n = g.vertex_count
    sigs, orders = [None] * n, [None] * n
    for x in range(n):
        sigs[partner[x]] = grid.signatures[x]
        orders[partner[x]] = [phi[e] for e in grid.orders[x]]
    return HolantGrid.build(g, sigs, orders, planar=grid.planar)


def symmetric_swap_check(grid: HolantGrid, method: str = "ve"):
    """(Holant of the grid, Holant of its side-swapped twin)."""
    return evaluate(grid, method), evaluate(swapped_grid(grid), method)


def double(g: Multigraph) -> Multigraph:
    """G plus a side-swapped copy, with the explicit symmetric labeling."""
    sides = g.two_coloring()
    n = g.vertex_count
    left = [v for v in range(n) if sides[v] == 0]
    right = [v for v in range(n) if sides[v] == 1]
    edges = list(g.edges) + [(a + n, b + n) for a, b in g.edges]
    bip = list(sides) + [1 - s for s in sides]
    pairing = [(u, u + n) for u in left] + [(v + n, v) for v in right]
    out = Multigraph(2 * n, edges, bip, pairing)
    out.validate()
    return out


def swapped_copy(g: Multigraph) -> Multigraph:
    """G' : the same edges with the two sides exchanged."""
    sides = g.two_coloring()
    return Multigraph(g.vertex_count, g.edges, [1 - s for s in sides])
