"""Exact H-minor containment for small patterns (Petersen in particular).

A minor model maps each pattern vertex to a disjoint connected branch set
of the host and realizes every pattern edge by a host edge between the two
branch sets.  The search seeds branch sets in descending pattern-degree
order and grows them one host vertex at a time, always adjacent to the set
being grown, which reaches every inclusion-minimal model.  Parallel edges
never help a minor, so the host is reduced to its underlying simple graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from rgraphs.coloring import BudgetExhausted, _Counter, default_budget
from rgraphs.multigraph import InvalidArgument, Multigraph, underlying_simple


@dataclass(frozen=True)
class MinorModel:
    branch_sets: dict[int, frozenset[int]]   # pattern vertex -> host vertices
    edge_map: dict[int, int]                 # pattern edge id -> host edge id


@dataclass(frozen=True)
class MinorResult:
    found: bool | None        # None when the budget ran out
    model: MinorModel | None
    nodes: int

    @property
    def status(self) -> str:
        return "unknown" if self.found is None else "exact"


def verify_model(g: Multigraph, h: Multigraph, model: MinorModel) -> bool:
    """Re-check disjointness, connectivity, and edge realization from raw
    sets, independently of the search."""
    sets = model.branch_sets
    if set(sets) != set(h.vertices):
        return False
    all_used: set[int] = set()
    for p, bs in sets.items():
        if not bs or not bs <= g.vertices:
            return False
        if bs & all_used:
            return False
        all_used |= bs
        # connectivity of the induced branch set
        seen = {min(bs)}
        stack = [min(bs)]
        while stack:
            v = stack.pop()
            for e in g.incident(v):
                w = g.other_end(e, v)
                if w in bs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != set(bs):
            return False
    for eid, (p, q) in h.edges_items():
        host_edge = model.edge_map.get(eid)
        if host_edge is None or not g.has_edge_id(host_edge):
            return False
        u, v = g.endpoints(host_edge)
        if not ((u in sets[p] and v in sets[q]) or (u in sets[q] and v in sets[p])):
            return False
    return True


def has_minor(g: Multigraph, h: Multigraph,
              budget: int | None = None) -> MinorResult:
    """Exact verdict with a verifiable model on success; an exhausted budget
    yields found=None plus the explored-node count."""
    if h.m != underlying_simple(h).m:
        raise InvalidArgument("pattern must be simple")
    if not h.is_connected():
        raise InvalidArgument("pattern must be connected")
    host = underlying_simple(g)
    counter = _Counter(budget if budget is not None else default_budget())
    if h.n > host.n or h.m > host.m:
        return MinorResult(False, None, 0)

    pattern_order = sorted(h.vertices, key=lambda p: (-h.degree(p), p))
    pattern_edges = [(eid, frozenset(pair)) for eid, pair in h.edges_items()]
    host_adj = {v: host.neighbors(v) for v in host.vertices}

    def realized(sets: dict[int, frozenset[int]], p: int, q: int) -> bool:
        sp, sq = sets[p], sets[q]
        return any(host_adj[v] & sq for v in sp)

    def search(sets: dict[int, frozenset[int]], used: frozenset[int]):
        counter.tick()
        unassigned = [p for p in pattern_order if p not in sets]
        if len(unassigned) > host.n - len(used):
            return None
        pending = [
            (p, q) for _, pair in pattern_edges
            for p, q in [tuple(sorted(pair))]
            if p in sets and q in sets and not realized(sets, p, q)
        ]
        if not unassigned and not pending:
            return sets
        if unassigned and (not pending or len(unassigned) >= len(pending)):
            p = unassigned[0]
            for v in sorted(host.vertices - used):
                got = search({**sets, p: frozenset([v])}, used | {v})
                if got is not None:
                    return got
            return None
        p, q = pending[0]
        for side in (p, q):
            grow = sorted(
                {w for v in sets[side] for w in host_adj[v]} - used)
            for v in grow:
                got = search({**sets, side: sets[side] | {v}}, used | {v})
                if got is not None:
                    return got
        return None

    try:
        found = search({}, frozenset())
    except BudgetExhausted:
        return MinorResult(None, None, counter.nodes)
    if found is None:
        return MinorResult(False, None, counter.nodes)
    edge_map = {}
    for eid, pair in pattern_edges:
        p, q = tuple(pair)
        host_edge = min(
            e for v in found[p] for e in host.incident(v)
            if host.other_end(e, v) in found[q])
        edge_map[eid] = host_edge
    model = MinorModel(dict(found), edge_map)
    assert verify_model(g, h, model)
    return MinorResult(True, model, counter.nodes)
