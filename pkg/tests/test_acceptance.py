"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest -v -s tests/test_acceptance.py` to see the per-criterion
lines and timings.  Expected values marked as derived in the docstrings are
recomputed here by independent oracles (subset scans, plain backtracking,
permutation-canonical enumeration) rather than trusted.
"""

import itertools
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from rgraphs import cuts
from rgraphs.catalog import (
    catalog,
    complete_graph,
    doubled_c4,
    p_plus_matching,
    p_plus_matching_projective,
    p_plus_two_matchings,
    p_plus_two_matchings_projective,
    petersen,
    petersen_perfect_matchings,
    petersen_projective,
)
from rgraphs.coloring import build_e_coloring, chromatic_index, find_mates
from rgraphs.discharging.charges import initial_charges
from rgraphs.discharging.profiles import ablation, verify_case_analysis
from rgraphs.embedding import classify_faces, trace_faces
from rgraphs.minors import has_minor
from rgraphs.multigraph import Multigraph, boundary
from rgraphs.transform import cn_swap, petersen_plus, resolve_swap_spec

from test_coloring import brute_force_chi
from test_multigraph import random_multigraph


def report(num, ok, detail, t0):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num}: {status} - {detail} ({time.time() - t0:.1f}s)")
    assert ok, detail


PROJECTIVE_4GRAPH_EMBEDDINGS = [f"p-plus-m-{i}-projective" for i in range(1, 7)]
PROJECTIVE_5GRAPH_EMBEDDINGS = ["p-plus-mm-projective"]


def test_criterion_1_charge_identities():
    t0 = time.time()
    ok = True
    for name in PROJECTIVE_4GRAPH_EMBEDDINGS:
        ledger = initial_charges(catalog(name), 4)
        ok = ok and ledger.total_initial() == -4
    for name in PROJECTIVE_5GRAPH_EMBEDDINGS:
        ledger = initial_charges(catalog(name), 5)
        ok = ok and ledger.total_initial() == Fraction(-10, 3)
    report(1, ok, "projective catalog charge totals are exactly -4 and -10/3", t0)


def test_criterion_2_case_analysis():
    t0 = time.time()
    rep4 = verify_case_analysis(4, 20)
    rep5 = verify_case_analysis(5, 20)
    ok = (rep4.negatives == [] and rep5.negatives == []
          and all(t.status == "ok" for t in rep4.tail)
          and all(t.status == "ok" for t in rep5.tail)
          and not rep4.path_bound_failures and not rep5.path_bound_failures)
    report(2, ok,
           f"zero negative profiles (r=4: {rep4.admissible} admissible, "
           f"r=5: {rep5.admissible}) and symbolic tails verified", t0)


def test_criterion_3_ablation():
    t0 = time.time()
    rep4 = ablation(4, ("(r-2)-edge",))
    rep5 = ablation(5, ("5-case-4-face-2-face",))
    ok = len(rep4.negatives) >= 1 and len(rep5.negatives) >= 1
    report(3, ok,
           f"dropping (r-2)-edge gives {len(rep4.negatives)} negatives (r=4); "
           f"dropping the 4-face 2-face lemma gives {len(rep5.negatives)} (r=5)", t0)


def _connected_simple_classes(n):
    """Connected simple graphs on n labeled vertices up to isomorphism,
    canonicalized by minimizing the edge bitmask over all permutations."""
    pairs = list(itertools.combinations(range(n), 2))
    m = len(pairs)
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(pairs)}
    perm_maps = np.array([[index[tuple(sorted((perm[a], perm[b])))]
                           for (a, b) in pairs] for perm in perms])
    masks = np.arange(1 << m, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(m)) & 1).astype(np.int64)
    weights = (1 << np.arange(m)).astype(np.int64)
    canon = masks.copy()
    for row in perm_maps:
        canon = np.minimum(canon, bits[:, row] @ weights)
    out = []
    for mask in np.unique(canon):
        chosen = [pairs[i] for i in range(m) if (int(mask) >> i) & 1]
        if not chosen:
            continue
        g = Multigraph(range(n), {i: p for i, p in enumerate(chosen)})
        if g.is_connected():
            out.append(chosen)
    return out


def test_criterion_4_coloring_oracle_equivalence():
    t0 = time.time()
    checked = 0
    mismatches = []
    for n in range(2, 7):
        for edges in _connected_simple_classes(n):
            eset = {frozenset(e) for e in edges}
            auts = [p for p in itertools.permutations(range(n))
                    if {frozenset((p[a], p[b])) for a, b in edges} == eset]
            seen = set()
            for mults in itertools.product((1, 2, 3), repeat=len(edges)):
                if sum(mults) > 12:
                    continue
                key = min(tuple(sorted((tuple(sorted((p[a], p[b]))), mu)
                                       for (a, b), mu in zip(edges, mults)))
                          for p in auts)
                if key in seen:
                    continue
                seen.add(key)
                g = Multigraph.from_pairs(
                    [e for e, mu in zip(edges, mults) for _ in range(mu)])
                if chromatic_index(g).chi != brute_force_chi(g):
                    mismatches.append(sorted(g.edges_items()))
                checked += 1
    ok = checked > 17000 and not mismatches
    report(4, ok, f"chromatic_index matches plain backtracking on {checked} "
           f"connected multigraphs (<= 6 vertices, <= 12 edges, mu <= 3)", t0)


def test_criterion_5_p_plus_matching_theorem():
    t0 = time.time()
    ok = True
    for i in range(1, 7):
        res = chromatic_index(p_plus_matching(i))
        ok = ok and res.graph_class == 2
    rng = random.Random(2026)
    p = petersen()
    p_edges = {frozenset(pair) for _, pair in p.edges_items()}
    tested = 0
    while tested < 20:
        verts = list(range(10))
        rng.shuffle(verts)
        pairing = tuple(tuple(sorted((verts[2 * i], verts[2 * i + 1])))
                        for i in range(5))
        if all(frozenset(pr) in p_edges for pr in pairing):
            continue          # a perfect matching of P itself: skip
        g, flags = petersen_plus(p, [pairing])
        assert flags == (False,)
        res = chromatic_index(g)
        ok = ok and res.graph_class == 1
        tested += 1
    report(5, ok, "P+M is class 2 for all 6 perfect matchings of P and "
           "class 1 for 20 random pairings not inside E(P)", t0)


def test_criterion_6_kotzig_instance():
    t0 = time.time()
    lg = catalog("l-p-like-12")
    ok = lg.n == 18 and lg.is_regular(4)
    res = chromatic_index(lg)
    ok = ok and res.status == "exact" and res.chi == 5
    # cross-check via Kotzig's theorem direction: the cubic base is class 2
    base = chromatic_index(catalog("p-like-12"))
    ok = ok and base.graph_class == 2
    report(6, ok, f"L(P-like-12) is 4-regular on 18 vertices with chi' = 5 "
           f"({res.nodes} search nodes)", t0)


def test_criterion_7_cut_oracle_equivalence():
    t0 = time.time()
    rng = random.Random(404)
    ok = True
    for _ in range(200):
        n = rng.choice([4, 6, 8, 10, 12])
        g = random_multigraph(rng, n, rng.randint(1, 2 * n))
        exh = cuts._min_odd_cut_exhaustive(g)
        gh = cuts._min_odd_cut_gomory_hu(g)
        ok = ok and exh.size == gh.size
        ok = ok and len(boundary(g, gh.x)) == gh.size and len(gh.x) % 2 == 1
    report(7, ok, "Gomory-Hu minimum odd cut equals brute force on 200 "
           "random even-order multigraphs (n <= 12)", t0)


def test_criterion_8_mate_existence():
    t0 = time.time()
    g = petersen()
    ec = build_e_coloring(g, 0, 3)
    ok = ec.l_e == 3 and ec.strong and ec.minimal_certified
    mates = find_mates(g, ec)
    for i, mate in mates.items():
        ok = ok and mate is not None
        if mate is None:
            continue
        x = mate.cut.x
        edges = boundary(g, x)
        ok = ok and len(x) % 2 == 1 and ec.e in edges
        for j, join in enumerate(ec.joins):
            if j != i:
                ok = ok and len(edges & join) == 1
    report(8, ok, "a strong e-coloring of Petersen with l_e = 3 has an "
           "independently re-verified mate for every join", t0)


def test_criterion_9_embedding_suite():
    t0 = time.time()
    ok = True
    for name in (["petersen-projective", "doubled-c4-planar"]
                 + PROJECTIVE_4GRAPH_EMBEDDINGS + PROJECTIVE_5GRAPH_EMBEDDINGS):
        emb = catalog(name)
        fs = trace_faces(emb)
        ok = ok and sum(f.size for f in fs.faces) == 2 * emb.graph.m
        expected = 2 if emb.surface == "sphere" else 1
        ok = ok and emb.graph.n - emb.graph.m + len(fs) == expected
    fs = trace_faces(petersen_projective())
    ok = ok and fs.sizes() == [5] * 6
    report(9, ok, "edge-side conservation and Euler identities hold on every "
           "catalog embedding; Petersen has six pentagonal faces", t0)


def _circuits(g, length):
    """Distinct vertex circuits of the given length in the underlying
    simple graph."""
    verts = sorted(g.vertices)
    out = []
    seen = set()
    def extend(path):
        if len(path) == length:
            if path[0] in g.neighbors(path[-1]):
                key = frozenset(path)
                if key not in seen:
                    seen.add(key)
                    out.append(tuple(path))
            return
        for w in sorted(g.neighbors(path[-1])):
            if w not in path:
                extend(path + [w])
    for v in verts:
        extend([v])
    return out


def test_criterion_10_swap_suite():
    t0 = time.time()
    p = petersen()
    hosts = [("doubled-c4", doubled_c4(), 4), ("k6", complete_graph(6), 5),
             ("petersen", p, 3), ("p-plus-m-1", p_plus_matching(1), 4),
             ("p-plus-mm", p_plus_two_matchings(), 5)]
    ok = True
    swaps_run = 0
    for name, g, r in hosts:
        assert cuts.is_r_graph(g, r)[0]
        if cuts.find_nontrivial_tight_cuts(g, r):
            continue
        had_minor = has_minor(g, p).found
        for length in (4, 6):
            circuits = _circuits(g, length)[:3]
            for cyc in circuits:
                res = cn_swap(g, resolve_swap_spec(g, cyc))
                swaps_run += 1
                good, witness = cuts.is_r_graph(res.graph, r)
                ok = ok and good
                after = has_minor(res.graph, p).found
                # a swap never introduces a Petersen minor
                ok = ok and (not after or had_minor)
    ok = ok and swaps_run >= 8
    report(10, ok, f"{swaps_run} C4/C6 swaps on tight-cut-free catalog "
           "r-graphs stay r-graphs and never gain a Petersen minor", t0)
