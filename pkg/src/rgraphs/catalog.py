"""Named instances with fixed vertex/edge ids, for tests and the CLI.

Petersen uses the standard labeling: outer cycle 0..4 (edges 0..4), spokes
i-(i+5) (edges 5..9), inner pentagram (edges 10..14).  Its projective
rotation system is the hemi-dodecahedral embedding with six pentagonal
faces.
"""

from __future__ import annotations

import functools
import itertools

from rgraphs.multigraph import InvalidArgument, Multigraph
from rgraphs.embedding import Embedding, PROJECTIVE, SPHERE
from rgraphs.transform import RSumSpec, line_graph, petersen_plus, r_sum


def petersen() -> Multigraph:
    edges = {}
    for i in range(5):
        edges[i] = (i, (i + 1) % 5)
        edges[5 + i] = (i, 5 + i)
        edges[10 + i] = (5 + i, 5 + (i + 2) % 5)
    return Multigraph(range(10), edges)


_PETERSEN_ROTATION = {
    0: (5, 4, 0), 1: (6, 1, 0), 2: (1, 2, 7), 3: (2, 3, 8), 4: (9, 4, 3),
    5: (5, 10, 13), 6: (14, 11, 6), 7: (12, 10, 7), 8: (13, 11, 8), 9: (9, 12, 14),
}
_PETERSEN_NEGATIVE = frozenset({2, 11, 12})


def petersen_projective() -> Embedding:
    g = petersen()
    signs = {e: (-1 if e in _PETERSEN_NEGATIVE else 1) for e in g.edge_ids}
    return Embedding(g, dict(_PETERSEN_ROTATION), signs, PROJECTIVE)


def doubled_c4() -> Multigraph:
    edges = {}
    for i in range(4):
        edges[i] = (i, (i + 1) % 4)       # inner copies
        edges[4 + i] = (i, (i + 1) % 4)   # outer copies
    return Multigraph(range(4), edges)


def doubled_c4_planar() -> Embedding:
    g = doubled_c4()
    rot = {i: ((i - 1) % 4, i, 4 + i, 4 + (i - 1) % 4) for i in range(4)}
    return Embedding(g, rot, {e: 1 for e in g.edge_ids}, SPHERE)


def complete_graph(n: int) -> Multigraph:
    return Multigraph.from_pairs(itertools.combinations(range(n), 2))


@functools.lru_cache(maxsize=1)
def petersen_perfect_matchings() -> tuple[tuple[tuple[int, int], ...], ...]:
    """All perfect matchings of the Petersen graph as sorted vertex pairs
    (there are exactly six)."""
    g = petersen()

    def extend(uncovered: frozenset[int]) -> list[tuple[tuple[int, int], ...]]:
        if not uncovered:
            return [()]
        v = min(uncovered)
        out = []
        for w in sorted(g.neighbors(v)):
            if w in uncovered:
                for rest in extend(uncovered - {v, w}):
                    out.append(((v, w),) + rest)
        return out

    found = extend(frozenset(g.vertices))
    return tuple(sorted(set(found)))


def p_plus_matching(index: int) -> Multigraph:
    matchings = petersen_perfect_matchings()
    if not 1 <= index <= len(matchings):
        raise InvalidArgument(f"matching index must be 1..{len(matchings)}")
    out, flags = petersen_plus(petersen(), [matchings[index - 1]])
    assert flags == (True,)
    return out


def p_plus_two_matchings() -> Multigraph:
    matchings = petersen_perfect_matchings()
    out, flags = petersen_plus(petersen(), [matchings[0], matchings[1]])
    assert flags == (True, True)
    return out


def add_parallel_embedded(emb: Embedding, pairs) -> Embedding:
    """Insert a parallel copy of each pair alongside an existing edge, taking
    its sign, so that the two strands bound a 2-face.

    Closing the 2-gon walk fixes where the copy sits in the rotations: for a
    +1 mate the copy follows it at one end and precedes it at the other; for
    a -1 mate the traversal direction flips across the edge and the copy
    must follow the mate at both ends.
    """
    g = emb.graph
    rot = {v: list(r) for v, r in emb.rotation.items()}
    signs = dict(emb.signs)
    edges = dict(g.edges_items())
    next_id = max(edges) + 1
    for a, b in sorted(tuple(sorted(p)) for p in pairs):
        band = [e for e, (u, v) in edges.items() if {u, v} == {a, b}]
        if not band:
            raise InvalidArgument(f"no edge between {a} and {b} to parallel")
        mate = max(band)   # follow the latest copy so a 3-edge stays nested
        edges[next_id] = (a, b)
        rot[a].insert(rot[a].index(mate) + 1, next_id)
        if signs[mate] == -1:
            rot[b].insert(rot[b].index(mate) + 1, next_id)
        else:
            rot[b].insert(rot[b].index(mate), next_id)
        signs[next_id] = signs[mate]
        next_id += 1
    graph = Multigraph(g.vertices, edges)
    return Embedding(graph, {v: tuple(r) for v, r in rot.items()}, signs, emb.surface)


def p_plus_matching_projective(index: int) -> Embedding:
    matchings = petersen_perfect_matchings()
    return add_parallel_embedded(petersen_projective(), matchings[index - 1])


def p_plus_two_matchings_projective() -> Embedding:
    matchings = petersen_perfect_matchings()
    emb = add_parallel_embedded(petersen_projective(), matchings[0])
    return add_parallel_embedded(emb, matchings[1])


def p_like_12() -> Multigraph:
    """3-sum of the Petersen graph (at vertex 9) and K4: a 12-vertex cubic
    P-like graph."""
    return r_sum(RSumSpec(petersen(), complete_graph(4), 9, 3), 3).graph


def doubled_c4_4sum() -> Multigraph:
    """Two doubled C4s glued by a 4-sum; carries a nontrivial tight cut."""
    return r_sum(RSumSpec(doubled_c4(), doubled_c4(), 0, 0), 4).graph


_GRAPHS = {
    "petersen": petersen,
    "doubled-c4": doubled_c4,
    "k4": lambda: complete_graph(4),
    "k5": lambda: complete_graph(5),
    "k6": lambda: complete_graph(6),
    "p-like-12": p_like_12,
    "4sum-doubled-c4": doubled_c4_4sum,
    "p-plus-mm": p_plus_two_matchings,
    "l-k4": lambda: line_graph(complete_graph(4)),
    "l-petersen": lambda: line_graph(petersen()),
    "l-p-like-12": lambda: line_graph(p_like_12()),
}
for _i in range(1, 7):
    _GRAPHS[f"p-plus-m-{_i}"] = functools.partial(p_plus_matching, _i)

_EMBEDDINGS = {
    "petersen-projective": petersen_projective,
    "doubled-c4-planar": doubled_c4_planar,
    "p-plus-mm-projective": p_plus_two_matchings_projective,
}
for _i in range(1, 7):
    _EMBEDDINGS[f"p-plus-m-{_i}-projective"] = functools.partial(
        p_plus_matching_projective, _i)


def graph_names() -> list[str]:
    return sorted(_GRAPHS)


def embedding_names() -> list[str]:
    return sorted(_EMBEDDINGS)


def catalog(name: str) -> Multigraph | Embedding:
    """Named instance lookup; embedding names carry a surface suffix."""
    if name in _GRAPHS:
        return _GRAPHS[name]()
    if name in _EMBEDDINGS:
        return _EMBEDDINGS[name]()
    raise InvalidArgument(
        f"unknown catalog name {name!r}; try one of "
        + ", ".join(graph_names() + embedding_names()))
