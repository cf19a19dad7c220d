import itertools
import random

import pytest

from rgraphs.catalog import complete_graph, doubled_c4, petersen
from rgraphs.multigraph import (
    EQUAL,
    LARGER,
    SMALLER,
    InvalidArgument,
    Multigraph,
    add_edge,
    boundary,
    compare_smaller,
    contract_set,
    delete_edges,
    edges_between,
    is_k_connected,
    k_edge_count,
    multiplicity,
    underlying_simple,
)


def random_multigraph(rng, n, extra_edges, max_mult=3):
    """Connected multigraph: a random spanning tree plus random extras."""
    verts = list(range(n))
    pairs = []
    for i in range(1, n):
        pairs.append((rng.choice(verts[:i]), i))
    for _ in range(extra_edges):
        u, v = rng.sample(verts, 2)
        if len([p for p in pairs if set(p) == {u, v}]) < max_mult:
            pairs.append((u, v))
    return Multigraph.from_pairs(pairs)


def test_no_loops():
    with pytest.raises(InvalidArgument):
        Multigraph({0, 1}, {0: (0, 0)})


def test_edges_between_examples():
    g = doubled_c4()
    assert len(edges_between(g, {0}, {1})) == 2
    p = petersen()
    assert len(edges_between(p, {0}, {1})) == 1
    # hand enumeration: of the 8 edges, the two (0,1) pairs stay inside,
    # the two (2,3) pairs stay inside, the four (1,2)/(3,0) copies cross
    assert len(edges_between(g, {0, 1}, {2, 3})) == 4


def test_edges_between_overlap_rejected():
    g = doubled_c4()
    with pytest.raises(InvalidArgument):
        edges_between(g, {0, 1}, {1, 2})


def test_boundary_examples():
    g = doubled_c4()
    for v in g.vertices:
        assert len(boundary(g, {v})) == 4
    # 12 incident ends minus 2*4 internal
    assert len(boundary(g, {0, 1, 2})) == 4
    assert boundary(g, g.vertices) == frozenset()
    with pytest.raises(InvalidArgument):
        boundary(g, set())


def test_multiplicity_examples():
    assert multiplicity(petersen()) == 1
    assert multiplicity(doubled_c4()) == 2
    five = Multigraph({0, 1}, {i: (0, 1) for i in range(5)})
    assert multiplicity(five) == 5
    assert multiplicity(Multigraph({0, 1}, {})) == 0


def test_underlying_simple():
    g = underlying_simple(doubled_c4())
    assert g.n == 4 and g.m == 4 and all(g.degree(v) == 2 for v in g.vertices)
    assert underlying_simple(petersen()) == petersen()
    five = Multigraph({0, 1}, {i: (0, 1) for i in range(5)})
    assert underlying_simple(five).m == 1
    # idempotent
    assert underlying_simple(g) == g


def test_contract_k4_triangle():
    k4 = complete_graph(4)
    g, w = contract_set(k4, {1, 2, 3})
    assert g.n == 2 and g.m == 3
    assert multiplicity(g) == 3
    assert w == 1


def test_contract_singleton_is_identity():
    p = petersen()
    g, _ = contract_set(p, {3})
    assert g == p


def test_contract_spokes_yields_k5():
    g = petersen()
    for i in range(5):
        g, _ = contract_set(g, {min(i, 5 + i), max(i, 5 + i)})
    simple = underlying_simple(g)
    assert simple.n == 5 and simple.m == 10


def test_contract_cut_correspondence():
    rng = random.Random(7)
    for _ in range(25):
        g = random_multigraph(rng, rng.randint(4, 8), rng.randint(2, 8))
        verts = sorted(g.vertices)
        x = frozenset(rng.sample(verts, rng.randint(1, 3)))
        contracted, w = contract_set(g, x)
        for size in range(1, len(verts) - len(x)):
            for y in itertools.combinations([v for v in verts if v not in x], size):
                ys = frozenset(y)
                assert len(boundary(g, ys)) == len(boundary(contracted, ys))
                with_x = ys | x
                if with_x != g.vertices:
                    assert len(boundary(g, with_x)) == len(boundary(contracted, ys | {w}))


def test_delete_add_edges():
    g = doubled_c4()
    pair = g.parallel_class(0, 1)
    g2 = delete_edges(g, [pair[0]])
    assert len(g2.parallel_class(0, 1)) == 1
    g3, eid = add_edge(g2, 0, 1)
    assert len(g3.parallel_class(0, 1)) == 2
    assert not g2.has_edge_id(eid)
    g4 = delete_edges(g, [g.parallel_class(i, (i + 1) % 4)[1] for i in range(4)])
    assert underlying_simple(g4) == g4 and g4.m == 4
    with pytest.raises(InvalidArgument):
        add_edge(g, 0, 0)


def test_handshake_and_boundary_symmetry():
    rng = random.Random(21)
    for _ in range(30):
        g = random_multigraph(rng, rng.randint(3, 9), rng.randint(0, 10))
        assert sum(g.degree(v) for v in g.vertices) == 2 * g.m
        verts = sorted(g.vertices)
        x = frozenset(rng.sample(verts, rng.randint(1, g.n - 1)))
        assert boundary(g, x) == boundary(g, g.vertices - x)


def test_is_k_connected():
    assert is_k_connected(petersen(), 3)
    assert not is_k_connected(doubled_c4(), 3)   # remove 0 and 2
    assert is_k_connected(complete_graph(4), 3)
    with pytest.raises(InvalidArgument):
        is_k_connected(complete_graph(3), 3)


def test_compare_smaller():
    g8 = random_multigraph(random.Random(1), 8, 3)
    g10 = random_multigraph(random.Random(2), 10, 3)
    assert compare_smaller(g8, g10) == SMALLER
    assert compare_smaller(g10, g8) == LARGER
    assert compare_smaller(g8, g8) == EQUAL
    # equal order: more 3-edges is smaller
    base = [(0, 1), (1, 2), (2, 3), (3, 0)]
    two_triples = Multigraph.from_pairs(base + [(0, 1)] * 2 + [(2, 3)] * 2)
    one_triple = Multigraph.from_pairs(base + [(0, 1)] * 2 + [(2, 3)])
    assert k_edge_count(two_triples, 3) == 2
    assert k_edge_count(one_triple, 3) == 1
    assert compare_smaller(two_triples, one_triple) == SMALLER
    # equal 3-edges: more 2-edges is smaller
    more_twos = Multigraph.from_pairs(base + [(0, 1), (1, 2)])
    fewer_twos = Multigraph.from_pairs(base + [(0, 1)])
    assert compare_smaller(more_twos, fewer_twos) == SMALLER


def test_compare_smaller_total_preorder():
    rng = random.Random(5)
    graphs = [random_multigraph(rng, rng.randint(3, 6), rng.randint(0, 6))
              for _ in range(12)]
    for a, b, c in itertools.product(graphs, repeat=3):
        ab, bc, ac = compare_smaller(a, b), compare_smaller(b, c), compare_smaller(a, c)
        if ab == SMALLER and bc == SMALLER:
            assert ac == SMALLER
        if ab == EQUAL and bc == EQUAL:
            assert ac == EQUAL
