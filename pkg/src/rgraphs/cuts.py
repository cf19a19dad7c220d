"""Odd cuts, r-graph checks, tight cuts, and minimum odd cuts.

An r-graph is an r-regular graph in which every odd vertex set X (including
X = V) has at least r boundary edges; odd-order graphs therefore never
qualify.  Minimum odd cuts are found exhaustively for small graphs and via
a Gomory-Hu tree scan for larger ones: some minimum odd cut is always a
fundamental cut of the tree whose side has odd cardinality.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from rgraphs.multigraph import (
    InvalidArgument,
    Multigraph,
    boundary,
    underlying_simple,
)

# Subset enumeration up to here (2^15 proper subsets after symmetry); beyond,
# only the Gomory-Hu path runs.
EXHAUSTIVE_THRESHOLD = 16


@dataclass(frozen=True)
class CutReport:
    """An odd/tight cut witness."""
    x: frozenset[int]
    size: int
    edges: frozenset[int]
    odd: bool
    tight: bool
    trivial: bool

    def to_json(self) -> dict:
        return {
            "witness": sorted(self.x),
            "size": self.size,
            "edges": sorted(self.edges),
            "odd": self.odd,
            "tight": self.tight,
            "trivial": self.trivial,
        }


def make_cut_report(g: Multigraph, x: frozenset[int], r: int | None = None) -> CutReport:
    edges = boundary(g, x) if x != g.vertices else frozenset()
    odd = len(x) % 2 == 1
    tight = odd and r is not None and len(edges) == r
    trivial = len(x) == 1 or len(g.vertices - x) == 1
    return CutReport(frozenset(x), len(edges), edges, odd, tight, trivial)


# -- bitmask helpers -------------------------------------------------------

def _index_edges(g: Multigraph) -> tuple[list[int], list[tuple[int, int]]]:
    order = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(order)}
    pairs = [(pos[u], pos[v]) for _, (u, v) in g.edges_items()]
    return order, pairs


def _cut_size(mask: int, pairs: list[tuple[int, int]]) -> int:
    return sum(1 for u, v in pairs if ((mask >> u) & 1) != ((mask >> v) & 1))


def _mask_to_set(mask: int, order: list[int]) -> frozenset[int]:
    return frozenset(order[i] for i in range(len(order)) if (mask >> i) & 1)


def _cut_key(g: Multigraph, x: frozenset[int]) -> tuple:
    """Deterministic tie-break: smallest witness set, then vertex ids."""
    return (len(x), tuple(sorted(x)))


# -- exhaustive route ------------------------------------------------------

def _min_odd_cut_exhaustive(g: Multigraph) -> CutReport:
    order, pairs = _index_edges(g)
    n = len(order)
    best: tuple[int, tuple, int] | None = None
    # |V| even: X and its complement are both odd, so fix vertex 0 in X.
    for mask in range(1, 1 << n, 2):
        if bin(mask).count("1") % 2 == 0:
            continue
        size = _cut_size(mask, pairs)
        x = _mask_to_set(mask, order)
        cand = (size, _cut_key(g, x), mask)
        if best is None or cand[:2] < best[:2]:
            best = cand
    assert best is not None
    return make_cut_report(g, _mask_to_set(best[2], order))


def _odd_cuts_exhaustive(g: Multigraph, limit_size: int) -> list[frozenset[int]]:
    """All odd X of cut size ≤ limit_size.  For even |V| the scan fixes
    min(V) in X, since the complement of an odd set is odd again; odd-order
    graphs get the full scan."""
    order, pairs = _index_edges(g)
    n = len(order)
    step = 2 if n % 2 == 0 else 1
    found = []
    for mask in range(1, 1 << n, step):
        if bin(mask).count("1") % 2 == 0:
            continue
        if _cut_size(mask, pairs) <= limit_size:
            found.append(_mask_to_set(mask, order))
    return found


# -- max flow / Gomory-Hu --------------------------------------------------

def _max_flow_min_cut(cap: dict[int, dict[int, int]], s: int, t: int) -> tuple[int, set[int]]:
    """Edmonds-Karp on symmetric integer capacities.  Returns (value, side
    containing s in the residual graph)."""
    flow: dict[int, dict[int, int]] = {u: {v: 0 for v in nbrs} for u, nbrs in cap.items()}
    value = 0
    while True:
        parent: dict[int, tuple[int, int]] = {}
        seen = {s}
        queue = deque([s])
        while queue and t not in seen:
            u = queue.popleft()
            for v in cap[u]:
                if v not in seen and cap[u][v] - flow[u][v] > 0:
                    seen.add(v)
                    parent[v] = (u, cap[u][v] - flow[u][v])
                    queue.append(v)
        if t not in seen:
            return value, seen
        bottleneck = None
        v = t
        while v != s:
            u, residual = parent[v]
            bottleneck = residual if bottleneck is None else min(bottleneck, residual)
            v = u
        v = t
        while v != s:
            u, _ = parent[v]
            flow[u][v] += bottleneck
            flow[v][u] -= bottleneck
            v = u
        value += bottleneck


def _capacity_graph(g: Multigraph) -> dict[int, dict[int, int]]:
    cap: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
    for _, (u, v) in g.edges_items():
        cap[u][v] = cap[u].get(v, 0) + 1
        cap[v][u] = cap[v].get(u, 0) + 1
    return cap


@dataclass(frozen=True)
class GomoryHuEdge:
    u: int
    v: int
    weight: int
    side: frozenset[int]   # a minimum u-v cut: original vertices on u's side


def gomory_hu_tree(g: Multigraph) -> list[GomoryHuEdge]:
    """Gomory-Hu tree by recursive contraction; fundamental cuts are minimum
    cuts, which is what the odd-cut scan relies on."""
    if not g.is_connected():
        raise InvalidArgument("Gomory-Hu tree needs a connected graph")
    base_cap = _capacity_graph(g)
    next_super = [max(g.vertices, default=0) + 1]

    def recurse(terminals: list[int],
                cap: dict[int, dict[int, int]],
                members: dict[int, frozenset[int]]) -> list[GomoryHuEdge]:
        if len(terminals) <= 1:
            return []
        s, t = terminals[0], terminals[1]
        value, side = _max_flow_min_cut(cap, s, t)
        orig_side = frozenset().union(*(members[v] for v in side))
        term_a = [v for v in terminals if v in side]
        term_b = [v for v in terminals if v not in side]

        def contracted(keep_side: set[int]) -> tuple[dict, dict]:
            """Contract the complement of keep_side to a fresh supernode."""
            super_id = next_super[0]
            next_super[0] += 1
            new_cap: dict[int, dict[int, int]] = {v: {} for v in keep_side}
            new_cap[super_id] = {}
            for u in cap:
                a = u if u in keep_side else super_id
                for v, c in cap[u].items():
                    b = v if v in keep_side else super_id
                    if a == b or a == super_id:
                        continue
                    new_cap[a][b] = new_cap[a].get(b, 0) + c
            for a in list(new_cap):
                for b, c in new_cap[a].items():
                    if b == super_id:
                        new_cap[super_id][a] = c
            new_members = {v: members[v] for v in keep_side}
            new_members[super_id] = frozenset().union(
                *(members[v] for v in cap if v not in keep_side))
            return new_cap, new_members

        other = set(cap) - side
        cap_a, mem_a = contracted(set(side))
        cap_b, mem_b = contracted(other)
        edges = [GomoryHuEdge(s, t, value, orig_side)]
        edges += recurse(term_a, cap_a, mem_a)
        edges += recurse(term_b, cap_b, mem_b)
        return edges

    members = {v: frozenset([v]) for v in g.vertices}
    return recurse(sorted(g.vertices), base_cap, members)


def _min_odd_cut_gomory_hu(g: Multigraph) -> CutReport:
    tree = gomory_hu_tree(g)
    best = None
    for e in tree:
        if len(e.side) % 2 == 1:
            witness = e.side if min(g.vertices) in e.side else g.vertices - e.side
            cand = (e.weight,) + _cut_key(g, witness) + (witness,)
            if best is None or cand[:3] < best[:3]:
                best = cand
    if best is None:
        raise InvalidArgument("no odd fundamental cut; is |V| even?")
    return make_cut_report(g, best[3])


# -- public operations -----------------------------------------------------

def min_odd_cut(g: Multigraph, method: str = "auto") -> CutReport:
    """Minimum-cardinality odd cut of a connected even-order multigraph."""
    if g.n % 2 == 1:
        raise InvalidArgument("minimum odd cut needs an even number of vertices")
    if g.n == 0:
        raise InvalidArgument("empty graph")
    if not g.is_connected():
        raise InvalidArgument("minimum odd cut needs a connected graph")
    if method == "exhaustive" or (method == "auto" and g.n <= EXHAUSTIVE_THRESHOLD):
        return _min_odd_cut_exhaustive(g)
    return _min_odd_cut_gomory_hu(g)


def min_even_cut(g: Multigraph) -> CutReport:
    """Minimum |∂(X)| over proper nonempty X of even cardinality.

    Exposed separately from is_r_graph: the minimum-counterexample theorem
    lower-bounds even cuts as well, and the lemma reductions rely on it.
    """
    if g.n < 3:
        raise InvalidArgument("even cut needs at least 3 vertices")
    if g.n > EXHAUSTIVE_THRESHOLD + 2:
        raise InvalidArgument("even-cut scan is exhaustive only")
    order, pairs = _index_edges(g)
    n = len(order)
    best = None
    for mask in range(1, (1 << n) - 1):
        pc = bin(mask).count("1")
        if pc % 2 == 1 or pc == 0 or pc == n:
            continue
        size = _cut_size(mask, pairs)
        x = _mask_to_set(mask, order)
        cand = (size, _cut_key(g, x), x)
        if best is None or cand[:2] < best[:2]:
            best = cand
    assert best is not None
    return make_cut_report(g, best[2])


def is_r_graph(g: Multigraph, r: int) -> tuple[bool, CutReport | None]:
    """True iff g is r-regular and every odd X ⊆ V (X = V included) has at
    least r boundary edges.  A violation carries a cut witness when one
    exists (regularity failures do not)."""
    if g.n == 0:
        return False, None
    if not g.is_regular(r):
        return False, None
    if g.n % 2 == 1:
        return False, make_cut_report(g, g.vertices, r)
    if not g.is_connected():
        # an even-order disconnected graph: some union of components is odd,
        # or an odd cut lies inside a component; scan components.
        seen: set[int] = set()
        for v in sorted(g.vertices):
            if v in seen:
                continue
            comp = g._component_of(v)
            seen |= comp
            if len(comp) % 2 == 1:
                return False, make_cut_report(g, frozenset(comp), r)
        # all components even: recurse on each induced piece
        seen = set()
        for v in sorted(g.vertices):
            if v in seen:
                continue
            comp = g._component_of(v)
            seen |= comp
            sub = Multigraph(comp, {e: p for e, p in g.edges_items()
                                    if p[0] in comp and p[1] in comp})
            ok, witness = is_r_graph(sub, r)
            if not ok:
                return False, witness
        return True, None
    report = min_odd_cut(g)
    if report.size < r:
        return False, report
    return True, None


def find_nontrivial_tight_cuts(g: Multigraph, r: int,
                               first_only: bool = False) -> list[CutReport]:
    """All odd X with |∂(X)| = r and both sides larger than one vertex.
    Exhaustive below the threshold; above it, scans the Gomory-Hu tree
    (sound, and complete whenever a tight fundamental cut exists)."""
    ok, _ = is_r_graph(g, r)
    if not ok:
        raise InvalidArgument(f"not a {r}-graph")
    reports = []
    if g.n <= EXHAUSTIVE_THRESHOLD + 2:
        for x in _odd_cuts_exhaustive(g, r):
            if 1 < len(x) < g.n - 1:
                rep = make_cut_report(g, x, r)
                if rep.size == r:
                    reports.append(rep)
                    if first_only:
                        return reports
    else:
        for e in gomory_hu_tree(g):
            if e.weight == r and len(e.side) % 2 == 1 and 1 < len(e.side) < g.n - 1:
                witness = e.side if min(g.vertices) in e.side else g.vertices - e.side
                reports.append(make_cut_report(g, witness, r))
                if first_only:
                    return reports
    reports.sort(key=lambda rep: _cut_key(g, rep.x))
    return reports


TWO_CUT_NOT_APPLICABLE = "not-applicable"
TWO_CUT_TIGHT = "has-nontrivial-tight-cut"
TWO_CUT_C4 = "underlying-C4"
TWO_CUT_VIOLATED = "lemma-violated"


def two_vertex_cut_classification(g: Multigraph, r: int) -> str:
    """Check one instance of the 2-vertex-cut dichotomy: an r-graph with a
    2-vertex cut has a nontrivial tight cut or its underlying simple graph
    is a 4-circuit."""
    ok, _ = is_r_graph(g, r)
    if not ok:
        raise InvalidArgument(f"not a {r}-graph")
    if g.n < 4:
        return TWO_CUT_NOT_APPLICABLE
    has_two_cut = False
    for a, b in itertools.combinations(sorted(g.vertices), 2):
        blocked = frozenset((a, b))
        rest = g.vertices - blocked
        comp = g._component_of(min(rest), blocked)
        if len(comp) != len(rest):
            has_two_cut = True
            break
    if not has_two_cut:
        return TWO_CUT_NOT_APPLICABLE
    if find_nontrivial_tight_cuts(g, r, first_only=True):
        return TWO_CUT_TIGHT
    simple = underlying_simple(g)
    if simple.n == 4 and simple.m == 4 and all(simple.degree(v) == 2 for v in simple.vertices):
        return TWO_CUT_C4
    return TWO_CUT_VIOLATED
