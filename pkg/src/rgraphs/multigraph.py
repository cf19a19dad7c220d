"""Loopless multigraphs with stable vertex and edge identities.

Vertices and edges are opaque non-negative integers.  Parallel edges are
distinct edge ids sharing the same endpoint pair; loops are rejected.
Graphs are immutable values: every transform returns a new graph and keeps
the ids of surviving edges, so reductions can be replayed and edges tracked
across them.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping


class InvalidArgument(ValueError):
    """Raised when an operation's precondition is violated."""


class Multigraph:
    __slots__ = ("_vertices", "_edges", "_adj", "_degree")

    def __init__(self, vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]):
        vs = frozenset(int(v) for v in vertices)
        es: dict[int, tuple[int, int]] = {}
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for eid, (u, v) in edges.items():
            eid, u, v = int(eid), int(u), int(v)
            if u == v:
                raise InvalidArgument(f"edge {eid} is a loop at vertex {u}")
            if u not in vs or v not in vs:
                raise InvalidArgument(f"edge {eid} has endpoint outside the vertex set")
            if eid in es:
                raise InvalidArgument(f"duplicate edge id {eid}")
            es[eid] = (u, v)
            adj[u].append(eid)
            adj[v].append(eid)
        self._vertices = vs
        self._edges = es
        self._adj = {v: tuple(sorted(ids)) for v, ids in adj.items()}
        self._degree = {v: len(self._adj[v]) for v in vs}

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Multigraph":
        """Build a graph from endpoint pairs, assigning edge ids 0, 1, ..."""
        pairs = list(pairs)
        vertices = set()
        for u, v in pairs:
            vertices.add(u)
            vertices.add(v)
        return cls(vertices, {i: (u, v) for i, (u, v) in enumerate(pairs)})

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._edges))

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._edges[eid]

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._edges

    def other_end(self, eid: int, v: int) -> int:
        u, w = self._edges[eid]
        if v == u:
            return w
        if v == w:
            return u
        raise InvalidArgument(f"vertex {v} is not an endpoint of edge {eid}")

    def incident(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._degree[v]

    def max_degree(self) -> int:
        return max(self._degree.values(), default=0)

    def is_regular(self, r: int) -> bool:
        return all(d == r for d in self._degree.values())

    def edges_items(self) -> list[tuple[int, tuple[int, int]]]:
        return sorted(self._edges.items())

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self.other_end(e, v) for e in self._adj[v])

    def parallel_class(self, u: int, v: int) -> tuple[int, ...]:
        """All edge ids between u and v."""
        pair = frozenset((u, v))
        return tuple(e for e in self._adj.get(u, ()) if frozenset(self._edges[e]) == pair)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (self._vertices == other._vertices
                and {e: frozenset(p) for e, p in self._edges.items()}
                == {e: frozenset(p) for e, p in other._edges.items()})

    def __hash__(self):
        return hash((self._vertices,
                     frozenset((e, frozenset(p)) for e, p in self._edges.items())))

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"

    # -- connectivity ------------------------------------------------------

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        return len(self._component_of(min(self._vertices))) == self.n

    def _component_of(self, start: int, blocked: frozenset[int] = frozenset()) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for e in self._adj[v]:
                w = self.other_end(e, v)
                if w not in seen and w not in blocked:
                    seen.add(w)
                    stack.append(w)
        return seen


def _check_subset(g: Multigraph, x: Iterable[int]) -> frozenset[int]:
    xs = frozenset(x)
    if not xs <= g.vertices:
        raise InvalidArgument(f"vertex set {sorted(xs - g.vertices)} not in the graph")
    return xs


def edges_between(g: Multigraph, x: Iterable[int], y: Iterable[int]) -> frozenset[int]:
    """Edge ids with one end in x and the other in y; x and y must be disjoint."""
    xs, ys = _check_subset(g, x), _check_subset(g, y)
    if xs & ys:
        raise InvalidArgument("vertex sets overlap")
    out = set()
    for v in xs:
        for e in g.incident(v):
            if g.other_end(e, v) in ys:
                out.add(e)
    return frozenset(out)


def boundary(g: Multigraph, x: Iterable[int]) -> frozenset[int]:
    """Edges with exactly one endpoint in x."""
    xs = _check_subset(g, x)
    if not xs:
        raise InvalidArgument("boundary of the empty set")
    out = set()
    for v in xs:
        for e in g.incident(v):
            if g.other_end(e, v) not in xs:
                out.add(e)
    return frozenset(out)


def multiplicity(g: Multigraph) -> int:
    """Maximum number of parallel edges over all vertex pairs; 0 if edgeless."""
    counts: dict[frozenset[int], int] = {}
    for _, pair in g.edges_items():
        key = frozenset(pair)
        counts[key] = counts.get(key, 0) + 1
    return max(counts.values(), default=0)


def k_edge_count(g: Multigraph, k: int) -> int:
    """Number of vertex pairs joined by exactly k parallel edges."""
    counts: dict[frozenset[int], int] = {}
    for _, pair in g.edges_items():
        key = frozenset(pair)
        counts[key] = counts.get(key, 0) + 1
    return sum(1 for c in counts.values() if c == k)


def underlying_simple(g: Multigraph) -> Multigraph:
    """Same vertex set, one edge per adjacent pair.  Edge ids are the smallest
    id of each parallel class, so they remain ids of g."""
    chosen: dict[frozenset[int], int] = {}
    for eid, pair in g.edges_items():
        chosen.setdefault(frozenset(pair), eid)
    return Multigraph(g.vertices, {eid: g.endpoints(eid) for eid in chosen.values()})


def contract_set(g: Multigraph, x: Iterable[int]) -> tuple[Multigraph, int]:
    """g/X: identify X to a single vertex and drop the resulting loops.

    The new vertex id is min(X); surviving edges keep their ids, so the
    boundary correspondence |∂_{g/X}(Y⁻)| = |∂_g(Y)| (for Y containing or
    disjoint from X) can be tracked edge by edge.
    """
    xs = _check_subset(g, x)
    if not xs:
        raise InvalidArgument("cannot contract the empty set")
    w = min(xs)
    vertices = (g.vertices - xs) | {w}
    edges = {}
    for eid, (u, v) in g.edges_items():
        u2 = w if u in xs else u
        v2 = w if v in xs else v
        if u2 == v2:
            continue
        edges[eid] = (u2, v2)
    return Multigraph(vertices, edges), w


def delete_edges(g: Multigraph, eids: Iterable[int]) -> Multigraph:
    drop = set(eids)
    for e in drop:
        if not g.has_edge_id(e):
            raise InvalidArgument(f"edge id {e} not in the graph")
    return Multigraph(g.vertices, {e: p for e, p in g.edges_items() if e not in drop})


def delete_vertices(g: Multigraph, vs: Iterable[int]) -> Multigraph:
    drop = _check_subset(g, vs)
    keep = g.vertices - drop
    return Multigraph(keep, {e: p for e, p in g.edges_items()
                             if p[0] in keep and p[1] in keep})


def add_edge(g: Multigraph, u: int, v: int, eid: int | None = None) -> tuple[Multigraph, int]:
    if u == v:
        raise InvalidArgument("adding a loop")
    if u not in g.vertices or v not in g.vertices:
        raise InvalidArgument("endpoint not in the graph")
    if eid is None:
        eid = max(g.edge_ids, default=-1) + 1
    elif g.has_edge_id(eid):
        raise InvalidArgument(f"edge id {eid} already used")
    edges = dict(g.edges_items())
    edges[eid] = (u, v)
    return Multigraph(g.vertices, edges), eid


def is_k_connected(g: Multigraph, k: int) -> bool:
    """True iff no vertex cut of size ≤ k-1 disconnects g (parallel edges
    irrelevant).  Requires |V| ≥ k+1."""
    if g.n <= k:
        raise InvalidArgument(f"k-connectivity needs at least {k + 1} vertices")
    if not g.is_connected():
        return False
    for size in range(1, k):
        for cut in itertools.combinations(sorted(g.vertices), size):
            blocked = frozenset(cut)
            rest = g.vertices - blocked
            if not rest:
                continue
            comp = g._component_of(min(rest), blocked)
            if len(comp) != len(rest):
                return False
    return True


SMALLER = -1
EQUAL = 0
LARGER = 1


def compare_smaller(g: Multigraph, h: Multigraph) -> int:
    """Order used for minimum counterexamples: fewer vertices first; at equal
    order more 3-edges is smaller; then more 2-edges is smaller.

    Returns SMALLER if g is smaller than h, LARGER if h is smaller, EQUAL
    when the (order, #3-edges, #2-edges) signatures coincide.
    """
    sig_g = (g.n, -k_edge_count(g, 3), -k_edge_count(g, 2))
    sig_h = (h.n, -k_edge_count(h, 3), -k_edge_count(h, 2))
    if sig_g < sig_h:
        return SMALLER
    if sig_g > sig_h:
        return LARGER
    return EQUAL
