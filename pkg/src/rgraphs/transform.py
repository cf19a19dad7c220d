"""Graph surgeries: C_n-swaps, r-sums, Petersen-plus-matchings, line graphs,
and the reductions used by the lemma proofs.

Every transform returns the new graph together with provenance (which edge
ids were deleted, added, or remapped), so a reduction can be replayed and
edges tracked back to the original graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from rgraphs import cuts
from rgraphs.multigraph import (
    InvalidArgument,
    Multigraph,
    add_edge,
    contract_set,
    delete_edges,
    delete_vertices,
)
from rgraphs.embedding import Embedding


class NotApplicable(ValueError):
    """The site does not match the reduction's hypothesis pattern."""


class ReductionInvariantError(AssertionError):
    """A reduction produced a graph that is not an r-graph."""


# -- C_n-swaps ---------------------------------------------------------------

@dataclass(frozen=True)
class SwapSpec:
    """Cyclic vertex list v1..vn (n in {4, 6}) plus, for each even-indexed
    circuit edge (v2 v3), (v4 v5), ..., (vn v1), the edge id to delete."""
    cycle: tuple[int, ...]
    delete: tuple[int, ...] = ()

    def deleted_pairs(self) -> list[tuple[int, int]]:
        c = self.cycle
        n = len(c)
        return [(c[(2 * i + 1) % n], c[(2 * i + 2) % n]) for i in range(n // 2)]

    def added_pairs(self) -> list[tuple[int, int]]:
        c = self.cycle
        n = len(c)
        return [(c[2 * i], c[2 * i + 1]) for i in range(n // 2)]


def resolve_swap_spec(g: Multigraph, cycle: tuple[int, ...],
                      delete: tuple[int, ...] | None = None) -> SwapSpec:
    """Validate the circuit and pick default delete edges (lowest id in each
    parallel class) when none are named."""
    n = len(cycle)
    if n not in (4, 6):
        raise InvalidArgument("swaps are defined for circuits of length 4 or 6")
    if len(set(cycle)) != n:
        raise InvalidArgument("swap cycle repeats a vertex")
    for i in range(n):
        if not g.parallel_class(cycle[i], cycle[(i + 1) % n]):
            raise InvalidArgument(
                f"vertices {cycle[i]} and {cycle[(i + 1) % n]} are not adjacent")
    spec = SwapSpec(tuple(cycle), tuple(delete or ()))
    pairs = spec.deleted_pairs()
    if not spec.delete:
        spec = SwapSpec(spec.cycle,
                        tuple(min(g.parallel_class(u, v)) for u, v in pairs))
    if len(spec.delete) != n // 2:
        raise InvalidArgument(f"expected {n // 2} edges to delete")
    for eid, (u, v) in zip(spec.delete, pairs):
        if eid not in g.parallel_class(u, v):
            raise InvalidArgument(f"edge {eid} is not a {u}-{v} edge")
    return spec


@dataclass(frozen=True)
class SwapResult:
    graph: Multigraph
    spec: SwapSpec
    added: tuple[int, ...]
    deleted: tuple[int, ...]


def cn_swap(g: Multigraph, spec: SwapSpec) -> SwapResult:
    """Delete one chosen edge on each even-indexed circuit edge and add one
    parallel edge on each odd-indexed one; the degree sequence is preserved."""
    spec = resolve_swap_spec(g, spec.cycle, spec.delete or None)
    out = delete_edges(g, spec.delete)
    added = []
    for u, v in spec.added_pairs():
        out, eid = add_edge(out, u, v)
        added.append(eid)
    return SwapResult(out, spec, tuple(added), spec.delete)


def cn_swap_embedding(emb: Embedding, spec: SwapSpec) -> tuple[Embedding, SwapResult]:
    """Swap on an embedded graph: each added edge is drawn alongside an
    existing parallel circuit edge, which keeps the embedding.

    For a +1 mate the copy follows it in one rotation and precedes it in the
    other (the 2-gon between them closes); for a -1 mate it follows at both
    ends.
    """
    res = cn_swap(emb.graph, spec)
    rot = {v: list(r) for v, r in emb.rotation.items()}
    signs = dict(emb.signs)
    for eid in res.deleted:
        u, v = emb.graph.endpoints(eid)
        rot[u].remove(eid)
        rot[v].remove(eid)
        del signs[eid]
    for eid, (u, v) in zip(res.added, res.spec.added_pairs()):
        mate = min(e for e in emb.graph.parallel_class(u, v) if e not in res.deleted)
        rot[u].insert(rot[u].index(mate) + 1, eid)
        if emb.signs[mate] == -1:
            rot[v].insert(rot[v].index(mate) + 1, eid)
        else:
            rot[v].insert(rot[v].index(mate), eid)
        signs[eid] = emb.signs[mate]
    new_emb = Embedding(res.graph, {v: tuple(r) for v, r in rot.items()},
                        signs, emb.surface)
    return new_emb, res


# -- r-sums ------------------------------------------------------------------

@dataclass(frozen=True)
class RSumSpec:
    """Glue G-v and H-u by pairing their dangling ends.  Each pairing entry
    names one neighbor of v in G and one neighbor of u in H; entries consume
    parallel edges with multiplicity."""
    g: Multigraph
    h: Multigraph
    v: int
    u: int
    pairing: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class RSumResult:
    graph: Multigraph
    new_edges: tuple[int, ...]
    h_vertex_map: dict[int, int]


def r_sum(spec: RSumSpec, r: int) -> RSumResult:
    g, h, v, u = spec.g, spec.h, spec.v, spec.u
    if v not in g.vertices or u not in h.vertices:
        raise InvalidArgument("summed vertices missing")
    g_ends = sorted(g.other_end(e, v) for e in g.incident(v))
    h_ends = sorted(h.other_end(e, u) for e in h.incident(u))
    if len(g_ends) != r or len(h_ends) != r:
        raise InvalidArgument(f"summed vertices must have degree {r}")
    pairing = spec.pairing or tuple(zip(g_ends, h_ends))
    if sorted(a for a, _ in pairing) != g_ends or sorted(b for _, b in pairing) != h_ends:
        raise InvalidArgument("pairing must use each dangling end exactly once")

    g_side = delete_vertices(g, {v})
    offset = max(g.vertices) + 1
    h_map = {w: offset + i for i, w in enumerate(sorted(h.vertices) ) if w != u}
    eid_base = max(g.edge_ids, default=-1) + 1
    edges = dict(g_side.edges_items())
    for k, (eid, (a, b)) in enumerate(delete_vertices(h, {u}).edges_items()):
        edges[eid_base + k] = (h_map[a], h_map[b])
    graph = Multigraph(set(g_side.vertices) | set(h_map.values()), edges)
    new_edges = []
    for a, b in pairing:
        if a == h_map.get(b):
            raise InvalidArgument("pairing would create a loop")
        graph, eid = add_edge(graph, a, h_map[b])
        new_edges.append(eid)
    if not graph.is_regular(r):
        raise InvalidArgument("r-sum result is not r-regular")
    return RSumResult(graph, tuple(new_edges), h_map)


# -- Petersen plus matchings ---------------------------------------------------

def petersen_plus(base: Multigraph,
                  pairings: list[frozenset[frozenset[int]]] | list,
                  ) -> tuple[Multigraph, tuple[bool, ...]]:
    """Add one parallel copy per pair of each 1-regular pairing of V(base).

    Returns the (deg+len)-regular result and, per pairing, whether all of its
    pairs are edges of the base graph.
    """
    base_pairs = {frozenset(p) for _, p in base.edges_items()}
    out = base
    flags = []
    for pairing in pairings:
        pairs = [frozenset(p) for p in pairing]
        touched = [w for p in pairs for w in p]
        if sorted(touched) != sorted(base.vertices):
            raise InvalidArgument("pairing is not 1-regular on the vertex set")
        flags.append(all(p in base_pairs for p in pairs))
        for p in sorted(pairs, key=sorted):
            a, b = sorted(p)
            out, _ = add_edge(out, a, b)
    return out, tuple(flags)


# -- line graph ----------------------------------------------------------------

def line_graph(g: Multigraph) -> Multigraph:
    """Vertices are edge ids of g; one edge per co-incident pair per shared
    endpoint, so parallel edges of g give parallel line-graph edges and
    |E(L(g))| = sum over v of C(deg v, 2)."""
    edges = {}
    next_id = 0
    for v in sorted(g.vertices):
        for e, f in itertools.combinations(g.incident(v), 2):
            edges[next_id] = (e, f)
            next_id += 1
    return Multigraph(g.edge_ids, edges)


# -- lemma reductions ------------------------------------------------------------

@dataclass(frozen=True)
class ReductionResult:
    graph: Multigraph
    kind: str
    site: tuple
    edge_map: dict[int, int | None] = field(default_factory=dict)
    added: tuple[int, ...] = ()
    new_vertex: int | None = None


def _assert_r_graph(graph: Multigraph, r: int, kind: str) -> None:
    ok, witness = cuts.is_r_graph(graph, r)
    if not ok:
        raise ReductionInvariantError(
            f"{kind} reduction did not produce a {r}-graph"
            + (f" (witness {sorted(witness.x)})" if witness else ""))


def _contracted_triangle(g: Multigraph, r: int, apex: int,
                         others: tuple[int, int], kind: str) -> ReductionResult:
    """Shared shape of the triangle reductions: contract the 3-face, delete
    the contracted copies of the apex's two outside edges, join their far
    ends."""
    tri = (apex,) + others
    for a, b in itertools.combinations(tri, 2):
        if not g.parallel_class(a, b):
            raise NotApplicable(f"{tri} is not a triangle")
    outside = [e for e in g.incident(apex)
               if g.other_end(e, apex) not in others]
    if len(outside) != 2:
        raise NotApplicable(f"apex {apex} needs exactly two outside edges")
    x3, x4 = (g.other_end(e, apex) for e in outside)
    if x3 == x4:
        raise NotApplicable(
            f"apex {apex} has a repeated outside neighbor; use the (r-2)-edge reduction")
    contracted, z = contract_set(g, set(tri))
    reduced = delete_edges(contracted, outside)
    reduced, new_eid = add_edge(reduced, x3, x4)
    _assert_r_graph(reduced, r, kind)
    edge_map = {e: (e if reduced.has_edge_id(e) else None) for e in g.edge_ids}
    return ReductionResult(reduced, kind, tri, edge_map, (new_eid,), z)


def _suppress_degree_two(g: Multigraph, v: int) -> tuple[Multigraph, int]:
    e1, e2 = g.incident(v)
    x, y = g.other_end(e1, v), g.other_end(e2, v)
    if x == y:
        raise NotApplicable(f"suppressing {v} would create a loop at {x}")
    out = delete_vertices(g, {v})
    out, eid = add_edge(out, x, y)
    return out, eid


def lemma_reduction(g: Multigraph, kind: str, site: tuple, r: int) -> ReductionResult:
    """Named reductions from the lemma proofs.

    kind = "triangle":        site = (v, v1, v2), 3-face with apex v (r = 4).
    kind = "fat-triangle":    site = (v, u, w), heavy 3-face uvw whose 2-edge
                              is vw; v's outside neighbors must differ (r = 5).
    kind = "suppress":        site = (u, v) with |E(u, v)| = r - 2.
    kind = "five-face-path":  site = (v1, ..., v5), 5-face with 2-edges
                              v1v2, v2v3, v4v5 (r = 5).
    kind = "three-2-edges":   site = (v1, v2, v3, v4), 2-face 3-path (r = 5).
    """
    if kind == "triangle":
        if r != 4:
            raise NotApplicable("triangle reduction is the r = 4 case")
        v, v1, v2 = site
        return _contracted_triangle(g, 4, v, (v1, v2), kind)
    if kind == "fat-triangle":
        if r != 5:
            raise NotApplicable("fat-triangle reduction is the r = 5 case")
        v, u, w = site
        if len(g.parallel_class(v, w)) != 2:
            raise NotApplicable("fat triangle needs the 2-edge vw")
        return _contracted_triangle(g, 5, v, (u, w), kind)
    if kind == "suppress":
        u, v = site
        band = g.parallel_class(u, v)
        if len(band) != r - 2:
            raise NotApplicable(f"|E({u},{v})| must be {r - 2}")
        out = delete_edges(g, band)
        out, e_new1 = _suppress_degree_two(out, u)
        out, e_new2 = _suppress_degree_two(out, v)
        _assert_r_graph(out, r, kind)
        edge_map = {e: (e if out.has_edge_id(e) else None) for e in g.edge_ids}
        return ReductionResult(out, kind, tuple(site), edge_map, (e_new1, e_new2))
    if kind == "five-face-path":
        if r != 5:
            raise NotApplicable("five-face-path reduction is the r = 5 case")
        v1, v2, v3, v4, v5 = site
        if (len(g.parallel_class(v1, v2)) != 2 or len(g.parallel_class(v2, v3)) != 2
                or len(g.parallel_class(v3, v4)) != 1 or len(g.parallel_class(v1, v5)) != 1):
            raise NotApplicable("site does not match the 5-face 2-edge pattern")
        contracted, z = contract_set(g, {v1, v2, v3})
        drop = contracted.parallel_class(z, v4) + contracted.parallel_class(z, v5)
        out = delete_edges(contracted, drop)
        out, new_eid = add_edge(out, v4, v5)
        _assert_r_graph(out, 5, kind)
        edge_map = {e: (e if out.has_edge_id(e) else None) for e in g.edge_ids}
        return ReductionResult(out, kind, tuple(site), edge_map, (new_eid,), z)
    if kind == "three-2-edges":
        if r != 5:
            raise NotApplicable("three-2-edges reduction is the r = 5 case")
        v1, v2, v3, v4 = site
        for a, b in ((v1, v2), (v2, v3), (v3, v4)):
            if len(g.parallel_class(a, b)) != 2:
                raise NotApplicable(f"|E({a},{b})| must be 2")
        e1, e2 = sorted(g.parallel_class(v2, v3))
        out = delete_edges(g, [e2])
        out, _ = contract_set(out, {v1, v2})
        out, _ = contract_set(out, {v3, v4})
        _assert_r_graph(out, 5, kind)
        edge_map = {e: (e if out.has_edge_id(e) else None) for e in g.edge_ids}
        return ReductionResult(out, kind, tuple(site), edge_map, ())
    raise InvalidArgument(f"unknown reduction kind {kind!r}")
