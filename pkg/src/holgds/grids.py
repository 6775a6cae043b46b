"""Multigraphs, Holant and #GDS signature grids, and the JSON instance format."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import (
    ArityMismatch,
    BadEdgeOrder,
    InvalidPairing,
    NonBipartiteEdge,
    NonSimpleGdsGraph,
    NotBipartite,
    ParseError,
    ScalarFormatError,
)
from .signatures import Signature


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple
    bipartition: Optional[tuple] = None
    sym_pairing: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.bipartition is not None:
            object.__setattr__(self, "bipartition", tuple(self.bipartition))
        if self.sym_pairing is not None:
            object.__setattr__(self, "sym_pairing", tuple(tuple(p) for p in self.sym_pairing))

    def incident(self, v: int) -> list:
        """Edge indices at v in edge-sequence order; a self-loop appears twice."""
        out = []
        for i, (a, b) in enumerate(self.edges):
            if a == v:
                out.append(i)
            if b == v:
                out.append(i)
        return out

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def neighbors(self, v: int) -> list:
        """Distinct neighbors in order of first incidence."""
        seen = []
        for i in self.incident(v):
            a, b = self.edges[i]
            u = b if a == v else a
            if u not in seen:
                seen.append(u)
        return seen

    def other_end(self, edge: int, v: int) -> int:
        a, b = self.edges[edge]
        return b if a == v else a

    def is_simple(self) -> bool:
        keys = [frozenset(e) for e in self.edges]
        return all(a != b for a, b in self.edges) and len(set(keys)) == len(keys)

    def multiplicity(self, u: int, v: int) -> int:
        key = frozenset((u, v))
        return sum(1 for e in self.edges if frozenset(e) == key)

    def two_coloring(self) -> list:
        """A side label per vertex; uses the stored bipartition if present."""
        if self.bipartition is not None:
            return list(self.bipartition)
        color = [None] * self.vertex_count
        adj = [[] for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for start in range(self.vertex_count):
            if color[start] is not None:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if color[u] is None:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        raise NotBipartite(f"odd cycle through vertices {u} and {v}")
        return color

    def is_bipartite(self) -> bool:
        try:
            self.validate()
            self.two_coloring()
        except (NotBipartite, NonBipartiteEdge):
            return False
        return True

    def with_bipartition(self) -> "Multigraph":
        return Multigraph(self.vertex_count, self.edges, tuple(self.two_coloring()), self.sym_pairing)

    def validate(self) -> None:
        n = self.vertex_count
        for i, e in enumerate(self.edges):
            if len(e) != 2 or not all(isinstance(x, int) and 0 <= x < n for x in e):
                raise ValueError(f"edge {i} has endpoints out of range: {e}")
        if self.bipartition is not None:
            if len(self.bipartition) != n or any(s not in (0, 1) for s in self.bipartition):
                raise NonBipartiteEdge("bipartition must give side 0 or 1 for every vertex")
            for i, (a, b) in enumerate(self.edges):
                if self.bipartition[a] == self.bipartition[b]:
                    raise NonBipartiteEdge(f"edge {i} = ({a}, {b}) lies within one side")
        if self.sym_pairing is not None:
            self._check_pairing()

    def _check_pairing(self) -> None:
        sides = self.two_coloring()
        pairs = self.sym_pairing
        us = [p[0] for p in pairs]
        vs = [p[1] for p in pairs]
        left = [v for v in range(self.vertex_count) if sides[v] == 0]
        right = [v for v in range(self.vertex_count) if sides[v] == 1]
        if sorted(us) != sorted(left) or sorted(vs) != sorted(right):
            raise InvalidPairing("pairing must be a bijection between the two sides")
        mult = Counter(frozenset(e) for e in self.edges)
        for i in range(len(pairs)):
            for j in range(len(pairs)):
                if mult[frozenset((us[i], vs[j]))] != mult[frozenset((us[j], vs[i]))]:
                    raise InvalidPairing(
                        f"edge count of (u{i}, v{j}) differs from (u{j}, v{i})")


def check_pairing(g: Multigraph) -> bool:
    try:
        g.validate()
    except (InvalidPairing, NonBipartiteEdge, NotBipartite):
        return False
    return g.sym_pairing is not None


@dataclass(frozen=True)
class HolantGrid:
    graph: Multigraph
    signatures: tuple
    orders: tuple
    planar: Optional[bool] = None
    names: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "signatures", tuple(self.signatures))
        object.__setattr__(self, "orders", tuple(tuple(o) for o in self.orders))

    @property
    def domain_size(self) -> int:
        return self.signatures[0].domain_size if self.signatures else 2

    @classmethod
    def build(cls, graph: Multigraph, signatures, orders=None, planar=None) -> "HolantGrid":
        if orders is None:
            orders = [graph.incident(v) for v in range(graph.vertex_count)]
        grid = cls(graph, signatures, orders, planar)
        grid.validate()
        return grid

    def validate(self) -> None:
        g = self.graph
        g.validate()
        if len(self.signatures) != g.vertex_count or len(self.orders) != g.vertex_count:
            raise ArityMismatch("need one signature and one edge order per vertex")
        domains = {s.domain_size for s in self.signatures}
        if len(domains) > 1:
            raise ArityMismatch("all signatures of a grid must share a domain")
        for v in range(g.vertex_count):
            sig, order = self.signatures[v], self.orders[v]
            deg = g.degree(v)
            if sig.arity != deg:
                raise ArityMismatch(f"vertex {v}: arity {sig.arity} but degree {deg}")
            if Counter(order) != Counter(g.incident(v)):
                raise BadEdgeOrder(f"vertex {v}: order {list(order)} is not a permutation of its edge slots")


@dataclass(frozen=True)
class GdsGrid:
    graph: Multigraph
    signatures: tuple
    orders: tuple  # neighbor ids per vertex; the vertex itself is implicit first
    planar: Optional[bool] = None
    names: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "signatures", tuple(self.signatures))
        object.__setattr__(self, "orders", tuple(tuple(o) for o in self.orders))

    domain_size = 2

    @classmethod
    def build(cls, graph: Multigraph, signatures, orders=None, planar=None) -> "GdsGrid":
        if orders is None:
            orders = [graph.neighbors(v) for v in range(graph.vertex_count)]
        grid = cls(graph, signatures, orders, planar)
        grid.validate()
        return grid

    def validate(self) -> None:
        g = self.graph
        g.validate()
        if not g.is_simple():
            raise NonSimpleGdsGraph("GDS grids need a simple graph (no loops or parallel edges)")
        if len(self.signatures) != g.vertex_count or len(self.orders) != g.vertex_count:
            raise ArityMismatch("need one signature and one neighbor order per vertex")
        for v in range(g.vertex_count):
            sig, order = self.signatures[v], self.orders[v]
            if sig.domain_size != 2:
                raise ArityMismatch(f"vertex {v}: GDS signatures are Boolean")
            deg = g.degree(v)
            if sig.arity != deg + 1:
                raise ArityMismatch(f"vertex {v}: arity {sig.arity} but degree {deg} (expected degree + 1)")
            if sorted(order) != sorted(g.neighbors(v)):
                raise BadEdgeOrder(f"vertex {v}: order {list(order)} is not a permutation of its neighbors")


Grid = Union[HolantGrid, GdsGrid]


# -- instance format ---------------------------------------------------------------

def _fail(msg, fld=None):
    raise ParseError(msg, field=fld)


def _int_field(obj, key, where):
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        _fail(f"expected an integer", f"{where}.{key}")
    return v


def parse_instance(text: str) -> Grid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict):
        _fail("instance must be a JSON object")
    return instance_from_json(data)


def parse_signature_table(sigs_obj) -> dict:
    if not isinstance(sigs_obj, dict):
        _fail("expected an object of named signatures", "signatures")
    sigs = {}
    for name, obj in sigs_obj.items():
        try:
            sigs[name] = Signature.from_json(obj)
        except ScalarFormatError as exc:
            _fail(str(exc), f"signatures.{name}")
        except (KeyError, TypeError, ValueError) as exc:
            _fail(f"bad signature: {exc}", f"signatures.{name}")
    return sigs


def _edges_and_tags(data: dict):
    edges = data.get("edges")
    if not isinstance(edges, list):
        _fail("expected a list of edges", "edges")
    for i, e in enumerate(edges):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            _fail("edge must be a pair of vertex ids", f"edges[{i}]")
    tags = data.get("tags", {}) or {}
    if not isinstance(tags, dict):
        _fail("tags must be an object", "tags")
    return edges, tags


def instance_from_json(data: dict) -> Grid:
    kind = data.get("kind")
    if kind not in ("holant", "gds", "holant4"):
        _fail(f"unknown kind {kind!r}", "kind")
    sigs = parse_signature_table(data.get("signatures"))
    verts = data.get("vertices")
    if not isinstance(verts, list):
        _fail("expected a list of vertices", "vertices")
    n = len(verts)
    edges, tags = _edges_and_tags(data)
    for i, e in enumerate(edges):
        if not all(0 <= x < n for x in e):
            _fail(f"endpoint out of range 0..{n - 1}", f"edges[{i}]")
    bip = tags.get("bipartition")
    pairing = tags.get("sym_pairing")
    planar = tags.get("planar")
    if planar is not None and not isinstance(planar, bool):
        _fail("planar must be a boolean", "tags.planar")
    graph = Multigraph(n, edges, bip, pairing)
    by_id = {}
    for i, v in enumerate(verts):
        where = f"vertices[{i}]"
        if not isinstance(v, dict):
            _fail("vertex must be an object", where)
        vid = _int_field(v, "id", where)
        if vid in by_id or not 0 <= vid < n:
            _fail("vertex ids must be dense and 0-based", f"{where}.id")
        if v.get("sig") not in sigs:
            _fail(f"unknown signature {v.get('sig')!r}", f"{where}.sig")
        by_id[vid] = v
    signatures, orders, names = [], [], []
    for vid in range(n):
        v = by_id[vid]
        signatures.append(sigs[v["sig"]])
        names.append(v["sig"])
        order = v.get("order")
        if order is None:
            order = graph.incident(vid) if kind != "gds" else graph.neighbors(vid)
        elif not isinstance(order, list) or not all(isinstance(x, int) for x in order):
            _fail("order must be a list of integers", f"vertices[{vid}].order")
        orders.append(order)
    if kind == "gds":
        grid = GdsGrid(graph, signatures, orders, planar, tuple(names))
    else:
        want = 4 if kind == "holant4" else 2
        if any(s.domain_size != want for s in signatures):
            _fail(f"kind {kind} needs domain-{want} signatures", "signatures")
        grid = HolantGrid(graph, signatures, orders, planar, tuple(names))
    try:
        grid.validate()
    except (ValueError, InvalidPairing) as exc:
        raise ParseError(f"invalid grid: {exc}") from None
    return grid


def instance_to_json(grid: Grid) -> dict:
    if isinstance(grid, GdsGrid):
        kind = "gds"
    else:
        kind = "holant4" if grid.domain_size == 4 else "holant"
    sig_names = _assign_names(grid.signatures, grid.names)
    table = {}
    for name, sig in zip(sig_names, grid.signatures):
        table.setdefault(name, sig.to_json())
    verts = [{"id": v, "sig": sig_names[v], "order": list(grid.orders[v])}
             for v in range(grid.graph.vertex_count)]
    return {
        "kind": kind,
        "signatures": table,
        "vertices": verts,
        "edges": [list(e) for e in grid.graph.edges],
        "tags": graph_tags(grid.graph, grid.planar),
    }


def graph_tags(g: Multigraph, planar=None) -> dict:
    tags = {}
    if planar is not None:
        tags["planar"] = planar
    if g.bipartition is not None:
        tags["bipartition"] = list(g.bipartition)
    if g.sym_pairing is not None:
        tags["sym_pairing"] = [list(p) for p in g.sym_pairing]
    return tags


def _assign_names(signatures: Sequence[Signature], names=None) -> list:
    if names is not None:
        # keep given names as long as they are consistent
        seen = {}
        if all(seen.setdefault(n, s) == s for n, s in zip(names, signatures)):
            return list(names)
    out, known = [], []
    for s in signatures:
        for i, k in enumerate(known):
            if k == s:
                out.append(f"f{i}")
                break
        else:
            known.append(s)
            out.append(f"f{len(known) - 1}")
    return out


def render_instance(grid: Grid) -> str:
    return dump_canonical(instance_to_json(grid))


def dump_canonical(obj) -> str:
    """Deterministic JSON: top-level containers one item per line."""
    def compact(x):
        return json.dumps(x, separators=(", ", ": "))

    lines = ["{"]
    items = list(obj.items())
    for k, (key, val) in enumerate(items):
        end = "," if k < len(items) - 1 else ""
        if isinstance(val, list) and val:
            lines.append(f"  {json.dumps(key)}: [")
            for j, item in enumerate(val):
                lines.append(f"    {compact(item)}{',' if j < len(val) - 1 else ''}")
            lines.append(f"  ]{end}")
        elif isinstance(val, dict) and val:
            lines.append(f"  {json.dumps(key)}: {{")
            sub = list(val.items())
            for j, (sk, sv) in enumerate(sub):
                lines.append(f"    {json.dumps(sk)}: {compact(sv)}{',' if j < len(sub) - 1 else ''}")
            lines.append(f"  }}{end}")
        else:
            lines.append(f"  {json.dumps(key)}: {compact(val)}{end}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_instance(path) -> Grid:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def parse_source_graph(text: str) -> Multigraph:
    """Source multigraph file: {"n_per_side": n, "edges": [[u, v], ...]}.

    Vertices 0..n-1 form side U and n..2n-1 side V unless a "bipartition"
    list is given. An optional "sym_pairing" lists [u, v] pairs.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict):
        _fail("source graph must be a JSON object")
    n = data.get("n_per_side")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        _fail("n_per_side must be a positive integer", "n_per_side")
    edges, _ = _edges_and_tags(data)
    for i, e in enumerate(edges):
        if not all(0 <= x < 2 * n for x in e):
            _fail(f"endpoint out of range 0..{2 * n - 1}", f"edges[{i}]")
    bip = data.get("bipartition", [0] * n + [1] * n)
    g = Multigraph(2 * n, edges, bip, data.get("sym_pairing"))
    try:
        g.validate()
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), field="edges") from None
    return g


def render_source_graph(g: Multigraph) -> str:
    n = g.vertex_count // 2
    obj = {"n_per_side": n, "edges": [list(e) for e in g.edges]}
    sides = g.two_coloring()
    if list(sides) != [0] * n + [1] * n:
        obj["bipartition"] = list(sides)
    if g.sym_pairing is not None:
        obj["sym_pairing"] = [list(p) for p in g.sym_pairing]
    return dump_canonical(obj)
