import itertools
import random

import pytest

from rgraphs import cuts
from rgraphs.catalog import (
    complete_graph,
    doubled_c4,
    doubled_c4_4sum,
    p_plus_matching,
    petersen,
)
from rgraphs.coloring import chromatic_index
from rgraphs.multigraph import InvalidArgument, Multigraph, boundary

from test_multigraph import random_multigraph


def brute_force_min_odd_cut(g):
    """Independent oracle: direct scan over odd subsets."""
    verts = sorted(g.vertices)
    best = None
    for size in range(1, g.n, 2):
        for x in itertools.combinations(verts, size):
            cut = len(boundary(g, x))
            if best is None or cut < best:
                best = cut
    return best


def test_is_r_graph_examples():
    ok, witness = cuts.is_r_graph(doubled_c4(), 4)
    assert ok and witness is None
    ok, witness = cuts.is_r_graph(complete_graph(5), 4)
    assert not ok and witness.x == complete_graph(5).vertices and witness.size == 0
    ok, _ = cuts.is_r_graph(petersen(), 3)
    assert ok
    assert not cuts.is_r_graph(petersen(), 4)[0]   # wrong regularity


def test_min_odd_cut_examples():
    assert cuts.min_odd_cut(petersen()).size == 3
    assert cuts.min_odd_cut(doubled_c4()).size == 4
    assert cuts.min_odd_cut(p_plus_matching(1)).size == 4
    with pytest.raises(InvalidArgument):
        cuts.min_odd_cut(complete_graph(5))


def test_nontrivial_tight_cuts():
    assert cuts.find_nontrivial_tight_cuts(doubled_c4(), 4) == []
    assert cuts.find_nontrivial_tight_cuts(petersen(), 3) == []
    reports = cuts.find_nontrivial_tight_cuts(doubled_c4_4sum(), 4)
    assert reports
    assert any(r.size == 4 and len(r.x) == 3 for r in reports)
    # one of the witnesses is one glued side, cut by the four sum edges
    sides = {frozenset(r.x) for r in reports}
    assert frozenset({1, 2, 3}) in sides


def test_two_vertex_cut_classification():
    assert cuts.two_vertex_cut_classification(doubled_c4(), 4) == cuts.TWO_CUT_C4
    assert cuts.two_vertex_cut_classification(doubled_c4_4sum(), 4) == cuts.TWO_CUT_TIGHT
    assert cuts.two_vertex_cut_classification(petersen(), 3) == cuts.TWO_CUT_NOT_APPLICABLE


def test_min_even_cut():
    rep = cuts.min_even_cut(doubled_c4())
    assert rep.size == 4 and len(rep.x) == 2
    rep_p = cuts.min_even_cut(petersen())
    assert rep_p.size == 4   # two adjacent vertices: 3 + 3 - 2


def test_gomory_hu_tree_invariants():
    rng = random.Random(11)
    for _ in range(25):
        g = random_multigraph(rng, rng.choice([4, 6, 8]), rng.randint(1, 8))
        tree = cuts.gomory_hu_tree(g)
        assert len(tree) == g.n - 1
        for e in tree:
            # the stored side realizes the stated cut weight
            assert len(boundary(g, e.side)) == e.weight


def test_gomory_hu_matches_exhaustive_small():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.choice([4, 6, 8, 10])
        g = random_multigraph(rng, n, rng.randint(1, 2 * n))
        exh = cuts._min_odd_cut_exhaustive(g)
        gh = cuts._min_odd_cut_gomory_hu(g)
        assert exh.size == gh.size == brute_force_min_odd_cut(g)


def test_matchings_meet_odd_cuts():
    """Every perfect matching of an r-graph intersects every odd cut, and
    deleting it lowers each odd cut by exactly the intersection size."""
    g = doubled_c4()
    res = chromatic_index(g)
    assert res.chi == 4
    classes = res.coloring.classes()
    verts = sorted(g.vertices)
    for matching in classes:
        for size in (1, 3):
            for x in itertools.combinations(verts, size):
                cut = boundary(g, x)
                hit = cut & matching
                assert len(hit) % 2 == 1
                remaining = Multigraph(
                    g.vertices,
                    {e: p for e, p in g.edges_items() if e not in matching})
                assert len(boundary(remaining, x)) == len(cut) - len(hit)


def test_is_r_graph_odd_component():
    # two disjoint triangles with doubled edges: 4-regular but odd components
    pairs = []
    for base in (0, 3):
        for i in range(3):
            a, b = base + i, base + (i + 1) % 3
            pairs += [(a, b), (a, b)]
    g = Multigraph.from_pairs(pairs)
    ok, witness = cuts.is_r_graph(g, 4)
    assert not ok and len(witness.x) == 3


def test_odd_cut_scan_covers_odd_order():
    # triangle with a pendant edge: 4 vertices... use a 5-vertex star so the
    # scan must find odd sets avoiding the lowest vertex
    g = Multigraph.from_pairs([(0, 1), (0, 2), (0, 3), (0, 4)])
    small = cuts._odd_cuts_exhaustive(g, 1)
    found = {frozenset(x) for x in small}
    # each leaf singleton is an odd set with boundary 1, incl. those without 0
    for leaf in (1, 2, 3, 4):
        assert frozenset({leaf}) in found
