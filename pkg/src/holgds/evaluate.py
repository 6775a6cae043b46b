"""Exact partition functions: brute force, variable elimination, powers."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import TableBlowup, TooLarge
from .exactnum import normalize
from .grids import GdsGrid, HolantGrid

DEFAULT_MAX_BITS = 30
DEFAULT_MAX_TABLE = 1 << 22


def max_bits() -> int:
    raw = os.environ.get("HOLGDS_MAX_BITS")
    return int(raw) if raw else DEFAULT_MAX_BITS


@dataclass(frozen=True)
class Factor:
    scope: tuple
    table: tuple


@dataclass(frozen=True)
class FactorGraph:
    domains: tuple  # domain size per variable
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "domains", tuple(self.domains))
        facs = []
        for f in self.factors:
            if not isinstance(f, Factor):
                f = Factor(tuple(f[0]), tuple(f[1]))
            size = 1
            for v in f.scope:
                if not 0 <= v < len(self.domains):
                    raise ValueError(f"factor scope mentions unknown variable {v}")
                size *= self.domains[v]
            if size != len(f.table):
                raise ValueError(f"factor over {f.scope} has {len(f.table)} entries, expected {size}")
            facs.append(f)
        object.__setattr__(self, "factors", tuple(facs))

    def bits(self) -> float:
        return sum(np.log2(d) for d in self.domains)


def to_factor_graph(grid) -> FactorGraph:
    if isinstance(grid, GdsGrid):
        n = grid.graph.vertex_count
        factors = [Factor((v,) + tuple(grid.orders[v]), grid.signatures[v].table) for v in range(n)]
        return FactorGraph((2,) * n, factors)
    if isinstance(grid, HolantGrid):
        d = grid.domain_size
        factors = [Factor(tuple(grid.orders[v]), grid.signatures[v].table)
                   for v in range(grid.graph.vertex_count)]
        return FactorGraph((d,) * len(grid.graph.edges), factors)
    raise TypeError(f"not a grid: {type(grid).__name__}")


def _as_fg(obj) -> FactorGraph:
    return obj if isinstance(obj, FactorGraph) else to_factor_graph(obj)


def _strides(scope, domains):
    out, acc = [0] * len(scope), 1
    for i in range(len(scope) - 1, -1, -1):
        out[i] = acc
        acc *= domains[scope[i]]
    return out


def brute_force(obj, bound=None):
    """Sum over every assignment of the product of all factor values."""
    fg = _as_fg(obj)
    bound = max_bits() if bound is None else bound
    if fg.bits() > bound:
        raise TooLarge(f"{fg.bits():.0f} assignment bits exceed the brute-force bound {bound}")
    prepared = [(f.scope, _strides(f.scope, fg.domains), f.table) for f in fg.factors]
    total = 0
    for assignment in itertools.product(*(range(d) for d in fg.domains)):
        prod = 1
        for scope, strides, table in prepared:
            idx = 0
            for v, s in zip(scope, strides):
                idx += assignment[v] * s
            prod = prod * table[idx]
            if not prod:
                break
        total = total + prod
    return normalize(total)


# -- variable elimination ---------------------------------------------------------

def _to_array(f: Factor, domains) -> tuple:
    """Numpy object array over the distinct variables of f's scope."""
    shape = [domains[v] for v in f.scope]
    arr = np.empty(len(f.table), dtype=object)
    arr[:] = list(f.table)
    arr = arr.reshape(shape) if shape else arr.reshape(())
    scope = list(f.scope)
    # repeated variables (self-loops) keep only the diagonal
    while len(set(scope)) < len(scope):
        for i in range(len(scope)):
            j = scope.index(scope[i], i + 1) if scope[i] in scope[i + 1:] else -1
            if j >= 0:
                arr = np.diagonal(arr, axis1=i, axis2=j)
                # diagonal moves the merged axis to the end
                v = scope[i]
                scope = [x for k, x in enumerate(scope) if k not in (i, j)] + [v]
                break
    return tuple(scope), arr


def _align(scope, arr, target):
    """Broadcast arr (over scope) to the axis order of target."""
    perm = [scope.index(v) for v in target if v in scope]
    arr = np.transpose(arr, perm)
    dims = iter(arr.shape)
    return arr.reshape([next(dims) if v in scope else 1 for v in target])


def elimination_order(scopes: Sequence[Sequence[int]], nvars: int) -> list:
    """Greedy min-fill order, ties by min degree then lowest id."""
    adj = {v: set() for v in range(nvars)}
    for s in scopes:
        for a in s:
            for b in s:
                if a != b:
                    adj[a].add(b)
    order = []
    remaining = set(range(nvars))
    while remaining:
        best = None
        for v in sorted(remaining):
            nb = list(adj[v])
            fill = 0
            for i in range(len(nb)):
                for j in range(i + 1, len(nb)):
                    if nb[j] not in adj[nb[i]]:
                        fill += 1
            key = (fill, len(nb), v)
            if best is None or key < best:
                best = key
        v = best[2]
        order.append(v)
        nb = adj.pop(v)
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        remaining.discard(v)
    return order


def eliminate(obj, max_table: int = DEFAULT_MAX_TABLE, order=None):
    """Exact partition function by summing out one variable at a time."""
    return normalize(_eliminate(_as_fg(obj), (), max_table, order)[()])


def marginal_table(obj, keep: Sequence[int], max_table: int = DEFAULT_MAX_TABLE) -> list:
    """Sum out every variable except ``keep``; table indexed like a Signature."""
    fg = _as_fg(obj)
    arr = _eliminate(fg, tuple(keep), max_table, None)
    return [normalize(x) for x in arr.reshape(-1)]


def _eliminate(fg: FactorGraph, keep: tuple, max_table: int, order):
    domains = fg.domains
    live = [_to_array(f, domains) for f in fg.factors]
    if order is None:
        order = elimination_order([s for s, _ in live], len(domains))
    keep_set = set(keep)
    if len(keep_set) != len(keep):
        raise ValueError("kept variables must be distinct")
    scalar = 1
    for var in order:
        if var in keep_set:
            continue
        touching = [f for f in live if var in f[0]]
        live = [f for f in live if var not in f[0]]
        if not touching:
            scalar = scalar * domains[var]
            continue
        scope = sorted({v for s, _ in touching for v in s})
        _check_size(scope, domains, max_table)
        prod = _product(touching, scope, domains)
        summed = prod.sum(axis=scope.index(var))
        new_scope = tuple(v for v in scope if v != var)
        if not new_scope:
            scalar = scalar * summed
        else:
            live.append((new_scope, np.asarray(summed, dtype=object)))
    target = list(keep)
    _check_size(target, domains, max_table)
    out = np.empty([domains[v] for v in target] or (), dtype=object)
    out[...] = scalar
    for s, arr in live:
        out = out * _align(list(s), arr, target)
    return np.asarray(out, dtype=object)


def _check_size(scope, domains, max_table):
    size = 1
    for v in scope:
        size *= domains[v]
    if size > max_table:
        raise TableBlowup(f"intermediate factor of {size} entries exceeds bound {max_table}")


def _product(touching, scope, domains):
    prod = None
    for s, arr in touching:
        a = _align(list(s), arr, scope)
        prod = a if prod is None else prod * a
    return np.broadcast_to(prod, [domains[v] for v in scope])


def evaluate(grid, method: str = "ve"):
    if method == "brute":
        return brute_force(grid)
    if method == "ve":
        return eliminate(grid)
    raise ValueError(f"unknown method {method!r}")


def holant_pow(grid, k: int, method: str = "ve"):
    if k < 1:
        raise ValueError("power must be at least 1")
    return normalize(evaluate(grid, method) ** k)
