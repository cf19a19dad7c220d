import itertools

import pytest

from rgraphs import cuts
from rgraphs.catalog import (
    complete_graph,
    doubled_c4,
    doubled_c4_planar,
    p_like_12,
    p_plus_matching,
    p_plus_two_matchings,
    petersen,
    petersen_perfect_matchings,
)
from rgraphs.embedding import trace_faces
from rgraphs.multigraph import InvalidArgument, Multigraph, multiplicity, underlying_simple
from rgraphs.transform import (
    NotApplicable,
    RSumSpec,
    SwapSpec,
    cn_swap,
    cn_swap_embedding,
    lemma_reduction,
    line_graph,
    petersen_plus,
    r_sum,
    resolve_swap_spec,
)


def test_swap_doubled_c4():
    g = doubled_c4()
    spec = resolve_swap_spec(g, (0, 1, 2, 3))
    res = cn_swap(g, spec)
    out = res.graph
    assert out.is_regular(4)
    assert len(out.parallel_class(0, 1)) == 3
    assert len(out.parallel_class(2, 3)) == 3
    assert len(out.parallel_class(1, 2)) == 1
    assert len(out.parallel_class(3, 0)) == 1
    ok, _ = cuts.is_r_graph(out, 4)
    assert ok


def test_swap_involution_on_multiplicities():
    g = doubled_c4()
    res = cn_swap(g, resolve_swap_spec(g, (0, 1, 2, 3)))
    # swapping the same circuit with roles shifted by one undoes the profile
    back = cn_swap(res.graph, resolve_swap_spec(res.graph, (1, 2, 3, 0)))
    for u, v in ((0, 1), (1, 2), (2, 3), (3, 0)):
        assert len(back.graph.parallel_class(u, v)) == len(g.parallel_class(u, v))


def test_swap_simple_subgraph():
    g = petersen()
    hexagon = (0, 1, 2, 7, 9, 4)
    res = cn_swap(g, resolve_swap_spec(g, hexagon))
    simple_before = {frozenset(p) for _, p in underlying_simple(g).edges_items()}
    simple_after = {frozenset(p) for _, p in underlying_simple(res.graph).edges_items()}
    assert simple_after <= simple_before


def test_swap_validates_spec():
    g = doubled_c4()
    with pytest.raises(InvalidArgument):
        resolve_swap_spec(g, (0, 1, 2))          # wrong length
    with pytest.raises(InvalidArgument):
        resolve_swap_spec(g, (0, 1, 0, 3))       # repeated vertex
    with pytest.raises(InvalidArgument):
        resolve_swap_spec(g, (0, 2, 1, 3))       # 0-2 not adjacent
    with pytest.raises(InvalidArgument):
        cn_swap(g, SwapSpec((0, 1, 2, 3), (99, 0)))


def test_swap_keeps_embedding():
    emb = doubled_c4_planar()
    spec = resolve_swap_spec(emb.graph, (0, 1, 2, 3))
    new_emb, res = cn_swap_embedding(emb, spec)
    fs = trace_faces(new_emb)
    assert sum(f.size for f in fs.faces) == 2 * new_emb.graph.m
    assert new_emb.graph == res.graph


def test_r_sum_doubled_c4():
    res = r_sum(RSumSpec(doubled_c4(), doubled_c4(), 0, 0), 4)
    g = res.graph
    assert g.n == 6 and g.is_regular(4)
    ok, _ = cuts.is_r_graph(g, 4)
    assert ok
    tights = cuts.find_nontrivial_tight_cuts(g, 4)
    assert any(r.edges == frozenset(res.new_edges) for r in tights)


def test_r_sum_p_like():
    g = p_like_12()
    assert g.n == 12 and g.is_regular(3)
    ok, _ = cuts.is_r_graph(g, 3)
    assert ok


def test_r_sum_validates():
    with pytest.raises(InvalidArgument):
        r_sum(RSumSpec(doubled_c4(), doubled_c4(), 0, 0), 3)


def test_petersen_plus_flags():
    p = petersen()
    matchings = petersen_perfect_matchings()
    assert len(matchings) == 6
    g, flags = petersen_plus(p, [matchings[0]])
    assert g.is_regular(4) and flags == (True,)
    chord = ((0, 2), (1, 3), (4, 9), (5, 7), (6, 8))
    g2, flags2 = petersen_plus(p, [chord])
    assert g2.is_regular(4) and flags2 == (False,)
    g3, flags3 = petersen_plus(p, [matchings[0], matchings[1]])
    assert g3.is_regular(5) and flags3 == (True, True)
    with pytest.raises(InvalidArgument):
        petersen_plus(p, [((0, 1), (2, 3))])


def test_line_graph_counts():
    k4 = complete_graph(4)
    lk4 = line_graph(k4)
    assert lk4.n == 6 and lk4.is_regular(4)
    assert lk4.m == sum(len(list(itertools.combinations(range(k4.degree(v)), 2)))
                        for v in k4.vertices)
    lp = line_graph(petersen())
    assert lp.n == 15 and lp.is_regular(4)
    lpl = line_graph(p_like_12())
    assert lpl.n == 18 and lpl.is_regular(4)
    # parallel edges become parallel line-graph edges
    two = Multigraph({0, 1}, {0: (0, 1), 1: (0, 1)})
    ltwo = line_graph(two)
    assert ltwo.n == 2 and ltwo.m == 2 and multiplicity(ltwo) == 2


def test_triangle_reduction_octahedron():
    oct_ = line_graph(complete_graph(4))
    site = next(
        (a, b, c)
        for a, b, c in itertools.combinations(sorted(oct_.vertices), 3)
        if oct_.parallel_class(a, b) and oct_.parallel_class(a, c)
        and oct_.parallel_class(b, c))
    res = lemma_reduction(oct_, "triangle", site, 4)
    assert res.graph.n == oct_.n - 2
    ok, _ = cuts.is_r_graph(res.graph, 4)
    assert ok
    assert len(res.added) == 1
    # surviving edges keep their ids
    for old, new in res.edge_map.items():
        assert new is None or new == old


def test_triangle_reduction_not_applicable_on_repeated_neighbor():
    # apex whose two outside edges reach the same vertex: the (r-2)-edge
    # case, not the triangle case
    pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (0, 3), (1, 3), (2, 3)]
    g = Multigraph.from_pairs(pairs)
    with pytest.raises(NotApplicable):
        lemma_reduction(g, "triangle", (0, 1, 2), 4)


def test_suppress_reduction_on_p_plus_matching():
    pm = p_plus_matching(1)
    u, v = petersen_perfect_matchings()[0][0]
    res = lemma_reduction(pm, "suppress", (u, v), 4)
    assert res.graph.n == pm.n - 2
    ok, _ = cuts.is_r_graph(res.graph, 4)
    assert ok


def test_fat_triangle_reduction_on_k6_swap():
    k6 = complete_graph(6)
    g5 = cn_swap(k6, resolve_swap_spec(k6, (0, 1, 2, 3))).graph
    ok, _ = cuts.is_r_graph(g5, 5)
    assert ok
    res = lemma_reduction(g5, "fat-triangle", (0, 4, 1), 5)
    assert res.graph.n == g5.n - 2
    ok, _ = cuts.is_r_graph(res.graph, 5)
    assert ok


def test_three_2_edges_reduction():
    pmm = p_plus_two_matchings()
    res = lemma_reduction(pmm, "three-2-edges", (2, 3, 4, 9), 5)
    assert res.graph.n == pmm.n - 2
    ok, _ = cuts.is_r_graph(res.graph, 5)
    assert ok


def five_face_host():
    """5-graph containing the 5-face reduction pattern: a 5-cycle with
    2-edges on (v1,v2), (v2,v3), (v4,v5), singles elsewhere, completed by
    three mutually adjacent outside vertices."""
    pairs = []
    cyc = [(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (3, 4), (3, 4), (4, 0)]
    pairs += cyc
    pairs += [(0, 5), (0, 6), (1, 7), (2, 5), (2, 6), (3, 5), (3, 7), (4, 6), (4, 7)]
    pairs += [(5, 6), (5, 7), (6, 7)]
    return Multigraph.from_pairs(pairs)


def test_five_face_path_reduction():
    g = five_face_host()
    assert g.is_regular(5)
    ok, _ = cuts.is_r_graph(g, 5)
    assert ok
    res = lemma_reduction(g, "five-face-path", (0, 1, 2, 3, 4), 5)
    assert res.graph.n == g.n - 2
    ok, _ = cuts.is_r_graph(res.graph, 5)
    assert ok


def test_reduction_pattern_mismatch():
    with pytest.raises(NotApplicable):
        lemma_reduction(doubled_c4(), "suppress", (0, 2), 4)   # not adjacent
    with pytest.raises(NotApplicable):
        lemma_reduction(petersen(), "fat-triangle", (0, 1, 2), 5)


def test_r_sum_contraction_recovers_inputs():
    from rgraphs.multigraph import compare_smaller, contract_set, EQUAL
    a, b = doubled_c4(), doubled_c4()
    res = r_sum(RSumSpec(a, b, 0, 0), 4)
    g = res.graph
    left = set(a.vertices) - {0}
    right = set(g.vertices) - left
    ga, _ = contract_set(g, right)
    gb, _ = contract_set(g, left)
    # contracting either side recovers a graph with the input's signature
    assert compare_smaller(ga, a) == EQUAL
    assert compare_smaller(gb, b) == EQUAL


def test_p_plus_anything_has_petersen_minor():
    from rgraphs.minors import has_minor
    p = petersen()
    chord = ((0, 2), (1, 3), (4, 9), (5, 7), (6, 8))
    for pairing in (petersen_perfect_matchings()[3], chord):
        g, _ = petersen_plus(p, [pairing])
        assert has_minor(g, p).found
