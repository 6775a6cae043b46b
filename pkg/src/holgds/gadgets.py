"""#GDS gadgets: gadgetures, extension rules, transfer matrices, collapse.

A gadget's vertices are external (no signature of their own inside the
gadget), bridging (adjacent to an external) or internal. The gadgeture is
indexed by the external assignment followed by the bridging assignment,
first vertex most significant.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from .errors import ClassesNotEqual, InconsistentRule, NotCollapsible, RoleViolation, TooLarge
from .evaluate import Factor, FactorGraph, marginal_table
from .exactnum import ExactMatrix, normalize
from .grids import Multigraph, dump_canonical, parse_signature_table, _assign_names
from .signatures import Signature, symmetric

EXTERNAL, BRIDGING, INTERNAL = "E", "B", "I"
MAX_BRUTE_INTERNAL = 24


@dataclass(frozen=True)
class Gadgeture:
    a: int
    b: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(normalize(x) for x in self.table))
        if len(self.table) != 2 ** (self.a + self.b):
            raise ValueError(f"gadgeture needs {2 ** (self.a + self.b)} entries, got {len(self.table)}")

    def __call__(self, *bits):
        idx = 0
        for x in bits:
            idx = 2 * idx + x
        return self.table[idx]


@dataclass(frozen=True)
class GdsGadget:
    graph: Multigraph
    roles: tuple
    signatures: tuple  # None for externals
    orders: tuple  # neighbor order per vertex (externals: unused)
    ext_order: tuple
    bridge_order: tuple
    names: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("roles", "signatures", "ext_order", "bridge_order"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "orders", tuple(tuple(o) for o in self.orders))

    @classmethod
    def build(cls, graph, roles, signatures, ext_order=None, bridge_order=None, orders=None):
        n = graph.vertex_count
        if ext_order is None:
            ext_order = [v for v in range(n) if roles[v] == EXTERNAL]
        if bridge_order is None:
            bridge_order = [v for v in range(n) if roles[v] == BRIDGING]
        if orders is None:
            orders = [graph.neighbors(v) for v in range(n)]
        gad = cls(graph, roles, signatures, orders, ext_order, bridge_order)
        gad.validate()
        return gad

    def vertices(self, role) -> list:
        return [v for v, r in enumerate(self.roles) if r == role]

    def validate(self) -> None:
        g = self.graph
        g.validate()
        n = g.vertex_count
        if not g.is_simple():
            raise RoleViolation("gadget graphs must be simple")
        if len(self.roles) != n or len(self.signatures) != n or len(self.orders) != n:
            raise RoleViolation("roles, signatures and orders need one entry per vertex")
        ext = set(self.vertices(EXTERNAL))
        if any(r not in (EXTERNAL, BRIDGING, INTERNAL) for r in self.roles):
            raise RoleViolation("roles must be E, B or I")
        for v in range(n):
            near_ext = any(u in ext for u in g.neighbors(v))
            role = self.roles[v]
            if role == EXTERNAL:
                if self.signatures[v] is not None:
                    raise RoleViolation(f"external vertex {v} must not carry a signature")
                continue
            if role == BRIDGING and not near_ext:
                raise RoleViolation(f"bridging vertex {v} has no external neighbor")
            if role == INTERNAL and near_ext:
                raise RoleViolation(f"internal vertex {v} is adjacent to an external vertex")
            sig = self.signatures[v]
            if sig is None or sig.arity != g.degree(v) + 1 or sig.domain_size != 2:
                raise RoleViolation(f"vertex {v} needs a Boolean signature of arity degree + 1")
            if sorted(self.orders[v]) != sorted(g.neighbors(v)):
                raise RoleViolation(f"vertex {v}: order is not a permutation of its neighbors")
        if sorted(self.ext_order) != sorted(ext):
            raise RoleViolation("ext_order must list every external vertex once")
        if sorted(self.bridge_order) != sorted(self.vertices(BRIDGING)):
            raise RoleViolation("bridge_order must list every bridging vertex once")

    def factor_graph(self) -> FactorGraph:
        factors = [Factor((v,) + tuple(self.orders[v]), self.signatures[v].table)
                   for v in range(self.graph.vertex_count) if self.roles[v] != EXTERNAL]
        return FactorGraph((2,) * self.graph.vertex_count, factors)


def gadgeture(g: GdsGadget, method: str = "brute") -> Gadgeture:
    """Induced table over (externals, bridgings), internals summed out."""
    g.validate()
    keep = list(g.ext_order) + list(g.bridge_order)
    a, b = len(g.ext_order), len(g.bridge_order)
    if method == "ve":
        return Gadgeture(a, b, marginal_table(g.factor_graph(), keep))
    if method != "brute":
        raise ValueError(f"unknown method {method!r}")
    internal = g.vertices(INTERNAL)
    if len(internal) > MAX_BRUTE_INTERNAL:
        raise TooLarge(f"{len(internal)} internal vertices exceed the brute-force bound {MAX_BRUTE_INTERNAL}")
    evaluated = [v for v in range(g.graph.vertex_count) if g.roles[v] != EXTERNAL]
    prepared = [((v,) + tuple(g.orders[v]), g.signatures[v].table) for v in evaluated]
    sigma = [0] * g.graph.vertex_count
    table = []
    for outer in itertools.product((0, 1), repeat=a + b):
        for v, x in zip(keep, outer):
            sigma[v] = x
        total = 0
        for inner in itertools.product((0, 1), repeat=len(internal)):
            for v, x in zip(internal, inner):
                sigma[v] = x
            prod = 1
            for scope, tab in prepared:
                idx = 0
                for u in scope:
                    idx = 2 * idx + sigma[u]
                prod = prod * tab[idx]
                if not prod:
                    break
            total = total + prod
        table.append(total)
    return Gadgeture(a, b, table)


# -- extension rules -------------------------------------------------------------------

NEW, OLD_EXT, OLD_BR = "new", "old_ext", "old_br"


@dataclass(frozen=True)
class ExtensionRule:
    """One growth step of a gadget family.

    ``bridge_of[k]`` is the new bridging slot taken by old external k.
    ``templates[k]`` lists the closed neighborhood of old external k, as
    labels (kind, index) with kind in {new, old_ext, old_br}; the first label
    is the vertex itself. ``signatures[k]`` is placed on old external k.
    """
    new_externals: int
    bridge_of: tuple
    templates: tuple
    signatures: tuple

    def __post_init__(self):
        object.__setattr__(self, "bridge_of", tuple(self.bridge_of))
        object.__setattr__(self, "templates", tuple(tuple(tuple(l) for l in t) for t in self.templates))
        object.__setattr__(self, "signatures", tuple(self.signatures))

    def check(self, a_old: int, b_old: int) -> None:
        k = len(self.bridge_of)
        if k != a_old:
            raise InconsistentRule(f"rule evaluates {k} vertices but the gadget has {a_old} externals")
        if sorted(self.bridge_of) != list(range(k)):
            raise InconsistentRule("old externals must map one-to-one onto new bridging slots")
        if len(self.templates) != k or len(self.signatures) != k:
            raise InconsistentRule("need one template and one signature per evaluated vertex")
        limits = {NEW: self.new_externals, OLD_EXT: a_old, OLD_BR: b_old}
        for j, (tpl, sig) in enumerate(zip(self.templates, self.signatures)):
            if not tpl or tpl[0] != (OLD_EXT, j):
                raise InconsistentRule(f"template {j} must start with its own vertex")
            if len(set(tpl)) != len(tpl):
                raise InconsistentRule(f"template {j} repeats a label")
            for kind, idx in tpl:
                if kind not in limits or not 0 <= idx < limits[kind]:
                    raise InconsistentRule(f"template {j} references undeclared label {(kind, idx)}")
            if sig.arity != len(tpl) or sig.domain_size != 2:
                raise InconsistentRule(f"signature {j} has arity {sig.arity}, template has {len(tpl)} labels")


def transfer_matrix(rule: ExtensionRule, a_old: int, b_old: int) -> ExactMatrix:
    """T with g_next[new] = sum_old T[new, old] * g_prev[old]."""
    rule.check(a_old, b_old)
    a_new, b_new = rule.new_externals, len(rule.bridge_of)
    rows = []
    for new in itertools.product((0, 1), repeat=a_new + b_new):
        xn, yn = new[:a_new], new[a_new:]
        row = []
        for old in itertools.product((0, 1), repeat=a_old + b_old):
            xo, yo = old[:a_old], old[a_old:]
            if any(yn[rule.bridge_of[k]] != xo[k] for k in range(a_old)):
                row.append(0)
                continue
            vals = {NEW: xn, OLD_EXT: xo, OLD_BR: yo}
            prod = 1
            for tpl, sig in zip(rule.templates, rule.signatures):
                prod *= sig(tuple(vals[kind][idx] for kind, idx in tpl))
            row.append(prod)
        rows.append(row)
    return ExactMatrix.from_rows(rows)


def extend(g: GdsGadget, rule: ExtensionRule) -> GdsGadget:
    """Build the next gadget of the family explicitly."""
    a_old, b_old = len(g.ext_order), len(g.bridge_order)
    rule.check(a_old, b_old)
    n = g.graph.vertex_count
    new_ids = list(range(n, n + rule.new_externals))
    label = {NEW: new_ids, OLD_EXT: list(g.ext_order), OLD_BR: list(g.bridge_order)}
    edges = list(g.graph.edges)
    present = {frozenset(e) for e in edges}
    for j, tpl in enumerate(rule.templates):
        me = g.ext_order[j]
        for kind, idx in tpl[1:]:
            other = label[kind][idx]
            key = frozenset((me, other))
            if key in present:
                continue
            if kind == OLD_BR:
                raise InconsistentRule(f"old external {me} is not adjacent to old bridging {other}")
            present.add(key)
            edges.append((me, other))
    graph = Multigraph(n + rule.new_externals, edges)
    roles = [INTERNAL if r != EXTERNAL else BRIDGING for r in g.roles] + [EXTERNAL] * rule.new_externals
    sigs = list(g.signatures) + [None] * rule.new_externals
    orders = [list(o) for o in g.orders] + [graph.neighbors(v) for v in new_ids]
    bridge_order = [None] * a_old
    for j, tpl in enumerate(rule.templates):
        me = g.ext_order[j]
        closed = [label[kind][idx] for kind, idx in tpl]
        if sorted(closed) != sorted([me] + graph.neighbors(me)):
            raise InconsistentRule(f"template {j} does not match the closed neighborhood of vertex {me}")
        sigs[me] = rule.signatures[j]
        orders[me] = closed[1:]
        bridge_order[rule.bridge_of[j]] = me
    # old externals that stay unevaluated would break the role invariant
    out = GdsGadget(graph, roles, sigs, orders, new_ids, bridge_order)
    out.validate()
    return out


# -- recurrence systems -------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceSystem:
    matrix: ExactMatrix
    initial: tuple
    partition: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "initial", tuple(normalize(x) for x in self.initial))
        if self.matrix.rows != self.matrix.cols or self.matrix.rows != len(self.initial):
            raise ValueError("matrix must be k x k with a length-k initial vector")

    @property
    def k(self) -> int:
        return len(self.initial)


def iterate(sys: RecurrenceSystem, s: int) -> list:
    """A^s v."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    v = list(sys.initial)
    for _ in range(s):
        v = sys.matrix @ v
    return list(v)


def collapse(matrix: ExactMatrix, vector: Sequence, partition: Sequence[Sequence[int]]) -> RecurrenceSystem:
    """Lump equal-valued index classes into one coordinate each.

    Class representatives are the first listed member. Raises when the
    vector differs inside a class or the rows of one class disagree on the
    class sums.
    """
    flat = sorted(i for cls in partition for i in cls)
    if flat != list(range(len(vector))):
        raise NotCollapsible("partition must cover every index exactly once")
    for cls in partition:
        if len({vector[i] for i in cls}) != 1:
            raise ClassesNotEqual(f"class {list(cls)} holds values {[vector[i] for i in cls]}")
    rows = []
    for cls in partition:
        sums = [tuple(sum(matrix[i, j] for j in other) for other in partition) for i in cls]
        if len(set(sums)) != 1:
            raise NotCollapsible(f"rows of class {list(cls)} disagree on class sums")
        rows.append(list(sums[0]))
    init = [vector[cls[0]] for cls in partition]
    return RecurrenceSystem(ExactMatrix.from_rows(rows), init, tuple(tuple(c) for c in partition))


def expand(vec5: Sequence, partition) -> list:
    out = [None] * sum(len(c) for c in partition)
    for value, cls in zip(vec5, partition):
        for i in cls:
            out[i] = value
    return out


def swap_symmetric(t: Gadgeture) -> bool:
    """g(x1, x2, y1, y2) == g(x2, x1, y2, y1) for a 2+2 gadgeture."""
    if (t.a, t.b) != (2, 2):
        raise ValueError("swap symmetry is defined for two externals and two bridgings")
    return all(t(x1, x2, y1, y2) == t(x2, x1, y2, y1)
               for x1, x2, y1, y2 in itertools.product((0, 1), repeat=4))


# -- built-ins ------------------------------------------------------------------------------

DOMINATE4 = symmetric([0, 1, 1, 1, 1])

# closed neighborhoods of the ladder's evaluated vertices, 1-based names v1..v12
LADDER_FACTORS = (
    (1, 3, 4, 7), (2, 3, 4, 10), (5, 6, 7, 8), (5, 6, 9, 10), (3, 5, 7, 11),
    (5, 8, 9, 11), (6, 8, 9, 12), (4, 6, 10, 12), (7, 8, 11, 12), (9, 10, 11, 12),
)

LADDER_CLASSES = (
    (0b0000,),
    (0b0001, 0b0010, 0b0101, 0b0110, 0b1001, 0b1010, 0b1101, 0b1110),
    (0b0011, 0b0111, 0b1011, 0b1111),
    (0b0100, 0b1000),
    (0b1100,),
)


def adjacency_from_factors(factors, evaluated: Sequence[int]) -> list:
    """Recover edges from unlabeled closed neighborhoods.

    Each factor must be the closed neighborhood of exactly one evaluated
    vertex it contains; the owner assignment has to make adjacency symmetric
    between evaluated vertices. Raises ValueError unless exactly one
    assignment works.
    """
    evaluated = list(evaluated)
    solutions = []

    def consistent(owner):
        nb = {v: set(owner[v]) - {v} for v in owner}
        for v in nb:
            for u in nb[v]:
                if u in nb and v not in nb[u]:
                    return False
        return True

    def search(i, owner, used):
        if i == len(evaluated):
            if consistent(owner):
                solutions.append(dict(owner))
            return
        v = evaluated[i]
        for k, fac in enumerate(factors):
            if k in used or v not in fac:
                continue
            owner[v] = fac
            if consistent(owner):
                search(i + 1, owner, used | {k})
            del owner[v]

    search(0, {}, frozenset())
    if len(solutions) != 1:
        raise ValueError(f"expected a unique owner assignment, found {len(solutions)}")
    edges = set()
    for v, fac in solutions[0].items():
        for u in fac:
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def builtin_ladder(factors=LADDER_FACTORS):
    """(H_0, extension rule) for the ladder gadget; vertex i is v_{i+1}."""
    edges = [(a - 1, b - 1) for a, b in adjacency_from_factors(factors, range(3, 13))]
    graph = Multigraph(12, edges)
    roles = [EXTERNAL, EXTERNAL, BRIDGING, BRIDGING] + [INTERNAL] * 8
    sigs = [None, None] + [DOMINATE4] * 10
    h0 = GdsGadget.build(graph, roles, sigs, [0, 1], [2, 3])
    return h0, ladder_rule()


def ladder_rule() -> ExtensionRule:
    return ExtensionRule(
        new_externals=2,
        bridge_of=(0, 1),
        templates=(
            ((OLD_EXT, 0), (OLD_BR, 0), (NEW, 0), (OLD_EXT, 1)),
            ((OLD_EXT, 1), (OLD_BR, 1), (NEW, 1), (OLD_EXT, 0)),
        ),
        signatures=(DOMINATE4, DOMINATE4),
    )


def builtin_chain():
    """(H_1, extension rule) for the simple chain gadget: v1 external, v0 bridging."""
    graph = Multigraph(2, [(1, 0)])
    h1 = GdsGadget.build(graph, [BRIDGING, EXTERNAL], [symmetric([0, 1, 1]), None], [1], [0])
    rule = ExtensionRule(
        new_externals=1,
        bridge_of=(0,),
        templates=(((OLD_EXT, 0), (OLD_BR, 0), (NEW, 0)),),
        signatures=(symmetric([0, 1, 1, 1]),),
    )
    return h1, rule


def family_member(base: GdsGadget, rule: ExtensionRule, steps: int) -> GdsGadget:
    g = base
    for _ in range(steps):
        g = extend(g, rule)
    return g


def ladder_system(h0: Optional[GdsGadget] = None):
    """(16-dim system from the brute-forced H_0, collapsed 5-dim system)."""
    if h0 is None:
        h0, rule = builtin_ladder()
    else:
        rule = ladder_rule()
    t = transfer_matrix(rule, 2, 2)
    g0 = gadgeture(h0)
    full = RecurrenceSystem(t, g0.table)
    return full, collapse(t, g0.table, LADDER_CLASSES)


_LADDER_CACHE = {}


def ladder_collapsed() -> RecurrenceSystem:
    if "sys5" not in _LADDER_CACHE:
        _LADDER_CACHE["sys5"] = ladder_system()[1]
    return _LADDER_CACHE["sys5"]


def ladder_gadgeture(s: int) -> Gadgeture:
    """Full 16-entry gadgeture of H_s via the recurrence."""
    sys5 = ladder_collapsed()
    return Gadgeture(2, 2, expand(iterate(sys5, s), LADDER_CLASSES))


# -- serialization --------------------------------------------------------------------------

def gadget_to_json(g: GdsGadget) -> dict:
    carried = [v for v in range(g.graph.vertex_count) if g.signatures[v] is not None]
    names = _assign_names([g.signatures[v] for v in carried])
    name_of = dict(zip(carried, names))
    table = {}
    for v in carried:
        table.setdefault(name_of[v], g.signatures[v].to_json())
    verts = []
    for v in range(g.graph.vertex_count):
        rec = {"id": v}
        if v in name_of:
            rec["sig"] = name_of[v]
            rec["order"] = list(g.orders[v])
        verts.append(rec)
    return {
        "kind": "gds-gadget",
        "signatures": table,
        "vertices": verts,
        "edges": [list(e) for e in g.graph.edges],
        "roles": list(g.roles),
        "ext_order": list(g.ext_order),
        "bridge_order": list(g.bridge_order),
    }


def render_gadget(g: GdsGadget) -> str:
    return dump_canonical(gadget_to_json(g))


def parse_gadget(text: str) -> GdsGadget:
    from .errors import ParseError
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict) or data.get("kind") != "gds-gadget":
        raise ParseError("expected kind 'gds-gadget'", field="kind")
    sigs = parse_signature_table(data.get("signatures", {}))
    try:
        verts = sorted(data["vertices"], key=lambda r: r["id"])
        n = len(verts)
        graph = Multigraph(n, data["edges"])
        signatures, orders = [], []
        for rec in verts:
            name = rec.get("sig")
            signatures.append(sigs[name] if name is not None else None)
            orders.append(rec.get("order", graph.neighbors(rec["id"])))
        g = GdsGadget(graph, data["roles"], signatures, orders, data["ext_order"], data["bridge_order"])
        g.validate()
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed gadget: {exc}") from None
    except (ValueError, RoleViolation) as exc:
        raise ParseError(f"invalid gadget: {exc}") from None
    return g


def load_builtin_gadget(name: str) -> GdsGadget:
    text = resources.files("holgds.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return parse_gadget(text)
