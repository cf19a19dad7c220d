"""Randomized cross-checks against independently coded oracles."""

import itertools
import random

import pytest

from rgraphs.embedding import Embedding, EmbeddingError, PROJECTIVE, SPHERE, trace_faces
from rgraphs.minors import has_minor
from rgraphs.multigraph import Multigraph

from test_multigraph import random_multigraph


# -- orientable face tracing, the classic way ---------------------------------

def orientable_face_count(g, rotation):
    """Faces of an all-positive rotation system: orbits of the next-corner
    map (enter w along e, leave along e's successor at w)."""
    darts = [(e, v) for e, (u, v) in g.edges_items() for v in g.endpoints(e)]
    succ = {}
    for v in g.vertices:
        order = rotation[v]
        for i, e in enumerate(order):
            succ[(e, v)] = order[(i + 1) % len(order)]
    count = 0
    seen = set()
    for dart in darts:
        if dart in seen:
            continue
        count += 1
        cur = dart
        while cur not in seen:
            seen.add(cur)
            e, v = cur
            e2 = succ[(e, v)]
            cur = (e2, g.other_end(e2, v))
    return count


def random_rotation(rng, g):
    rot = {}
    for v in g.vertices:
        order = list(g.incident(v))
        rng.shuffle(order)
        rot[v] = tuple(order)
    return rot


def test_face_tracing_matches_orientable_oracle():
    rng = random.Random(99)
    spheres = 0
    for _ in range(300):
        g = random_multigraph(rng, rng.randint(2, 7), rng.randint(0, 8))
        rot = random_rotation(rng, g)
        faces = orientable_face_count(g, rot)
        euler = g.n - g.m + faces
        signs = {e: 1 for e in g.edge_ids}
        if euler == 2:
            spheres += 1
            fs = trace_faces(Embedding(g, rot, signs, SPHERE))
            assert len(fs) == faces
            assert sum(f.size for f in fs.faces) == 2 * g.m
        else:
            # all-positive systems are orientable: neither tag can validate
            with pytest.raises(EmbeddingError):
                trace_faces(Embedding(g, rot, signs, SPHERE))
            with pytest.raises(EmbeddingError):
                trace_faces(Embedding(g, rot, signs, PROJECTIVE))
    assert spheres > 50


def test_signed_tracing_consistency():
    """Signed systems that pass the Euler check satisfy the side counts and
    are invariant under vertex-local flips."""
    rng = random.Random(5)
    accepted = 0
    for _ in range(400):
        g = random_multigraph(rng, rng.randint(2, 6), rng.randint(1, 7))
        rot = random_rotation(rng, g)
        signs = {e: rng.choice((1, -1)) for e in g.edge_ids}
        emb = None
        for tag in (SPHERE, PROJECTIVE):
            try:
                candidate = Embedding(g, rot, signs, tag)
                fs = trace_faces(candidate)
                emb = (candidate, fs)
                break
            except EmbeddingError:
                continue
        if emb is None:
            continue
        accepted += 1
        candidate, fs = emb
        assert sum(f.size for f in fs.faces) == 2 * g.m
        sides = [s for f in fs.faces for s in f.edge_seq()]
        assert all(sides.count(e) == 2 for e in g.edge_ids)
        # flip a random vertex: same embedding, same face size profile
        v = rng.choice(sorted(g.vertices))
        rot2 = dict(candidate.rotation)
        rot2[v] = tuple(reversed(rot2[v]))
        signs2 = dict(signs)
        for e in g.incident(v):
            signs2[e] = -signs2[e]
        fs2 = trace_faces(Embedding(g, rot2, signs2, candidate.surface))
        assert fs2.sizes() == fs.sizes()
    assert accepted > 60


# -- minors, by exhaustive labeled assignment ----------------------------------

def brute_force_has_minor(g, h):
    """Assign every host vertex to a pattern vertex or to none; check
    nonempty connected branch sets and edge realization."""
    host_vertices = sorted(g.vertices)
    pattern_vertices = sorted(h.vertices)
    k = len(pattern_vertices)
    for assignment in itertools.product(range(k + 1), repeat=len(host_vertices)):
        sets = {p: frozenset(host_vertices[i] for i, a in enumerate(assignment)
                             if a == idx + 1)
                for idx, p in enumerate(pattern_vertices)}
        if any(not s for s in sets.values()):
            continue
        ok = True
        for s in sets.values():
            seen = {min(s)}
            stack = [min(s)]
            while stack:
                v = stack.pop()
                for e in g.incident(v):
                    w = g.other_end(e, v)
                    if w in s and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen != set(s):
                ok = False
                break
        if not ok:
            continue
        for _, (p, q) in h.edges_items():
            if not any(g.other_end(e, v) in sets[q]
                       for v in sets[p] for e in g.incident(v)):
                ok = False
                break
        if ok:
            return True
    return False


@pytest.mark.parametrize("pattern", [
    Multigraph.from_pairs([(0, 1), (1, 2)]),                   # path
    Multigraph.from_pairs([(0, 1), (1, 2), (2, 0)]),           # triangle
    Multigraph.from_pairs([(0, 1), (1, 2), (2, 3), (3, 0)]),   # 4-cycle
    Multigraph.from_pairs(list(itertools.combinations(range(4), 2))),  # K4
])
def test_minor_search_matches_brute_force(pattern):
    rng = random.Random(sum(pattern.edge_ids))
    for _ in range(25):
        g = random_multigraph(rng, rng.randint(2, 6), rng.randint(0, 5))
        got = has_minor(g, pattern).found
        want = brute_force_has_minor(g, pattern)
        assert got == want, (sorted(g.edges_items()), pattern.m)
