"""Lemma predicates over embedded r-graphs, and the audit runner.

Each predicate checks every instance of one lemma's hypothesis pattern in a
circular embedding and reports holds / violated-with-witness /
not-applicable (no instance, or a stated hypothesis such as |N(v)| = 4
fails).  Violations are expected on colorable graphs; the audit exists to
validate the predicate implementations and to ground the case-analysis
constraints in checkable form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from rgraphs import cuts
from rgraphs.embedding import Embedding, FaceClassification, classify_faces
from rgraphs.multigraph import InvalidArgument, boundary, is_k_connected, multiplicity

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class PredicateReport:
    pred_id: str
    description: str
    status: str
    witnesses: tuple = ()


@dataclass
class AuditReport:
    r: int
    reports: list[PredicateReport]

    def by_id(self, pred_id: str) -> PredicateReport:
        for rep in self.reports:
            if rep.pred_id == pred_id:
                return rep
        raise KeyError(pred_id)

    def violated_ids(self) -> list[str]:
        return [rep.pred_id for rep in self.reports if rep.status == VIOLATED]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "predicates": [
                {"id": rep.pred_id, "description": rep.description,
                 "status": rep.status,
                 "witnesses": [list(map(str, w)) if isinstance(w, tuple) else str(w)
                               for w in rep.witnesses]}
                for rep in self.reports
            ],
        }


def _report(pred_id: str, desc: str, instances: int, bad: list) -> PredicateReport:
    if instances == 0:
        return PredicateReport(pred_id, desc, NOT_APPLICABLE)
    if bad:
        return PredicateReport(pred_id, desc, VIOLATED, tuple(bad))
    return PredicateReport(pred_id, desc, HOLDS)


def _faces_of_size(cls: FaceClassification, k: int) -> list[int]:
    return sorted(f for f, info in cls.info.items() if info.size == k)


def _two_face_neighbors(cls: FaceClassification, fid: int) -> list[int]:
    return sorted(o for o in cls.adjacency[fid] if cls.info[o].size == 2)


# -- structural predicates ---------------------------------------------------

def _pred_tight_cuts(g, r, cls):
    bad = []
    for x in cuts._odd_cuts_exhaustive(g, r):
        if 1 < len(x) < g.n - 1 and len(boundary(g, x)) == r:
            bad.append(tuple(sorted(x)))
    return _report("no-nontrivial-tight-cut",
                   "no odd X with |boundary(X)| = r and both sides > 1",
                   1, bad)


def _pred_three_connected(g, r, cls):
    if g.n < 4:
        return PredicateReport("three-connected", "no 2-vertex cut", NOT_APPLICABLE)
    ok = is_k_connected(g, 3)
    return _report("three-connected", "no 2-vertex cut", 1, [] if ok else [("not-3-connected",)])


def _pred_min_cut_four(g, r, cls):
    if g.n < 4:
        return PredicateReport("min-cut-4", "every proper cut has >= 4 edges",
                               NOT_APPLICABLE)
    worst = min(cuts.min_even_cut(g).size, cuts.min_odd_cut(g).size)
    return _report("min-cut-4", "every proper cut has >= 4 edges", 1,
                   [] if worst >= 4 else [("min-cut", worst)])


def _pred_nontrivial_odd_cut(g, r, cls):
    bound = r + 2
    bad = []
    for x in cuts._odd_cuts_exhaustive(g, bound - 1):
        if 1 < len(x) < g.n - 1:
            bad.append(tuple(sorted(x)))
    return _report(f"nontrivial-odd-cut-ge-{bound}",
                   f"every nontrivial odd cut has >= {bound} edges (parity + no tight cut)",
                   1, bad)


def _pred_mu(g, r, cls):
    mu = multiplicity(g)
    return _report("mu-le-r-minus-2", "multiplicity at most r - 2", 1,
                   [] if mu <= r - 2 else [("mu", mu)])


def _pred_obs_faces(g, r, cls):
    bad = []
    instances = 0
    for k in (2, 3):
        for fid in _faces_of_size(cls, k):
            instances += 1
            if len(cls.adjacency[fid]) != k:
                bad.append((fid, len(cls.adjacency[fid])))
    return _report("obs-k-face-neighbors",
                   "every 2-/3-face is adjacent to that many distinct faces",
                   instances, bad)


def _pred_r2_edge(g, r, cls):
    bad = []
    instances = 0
    for fid, info in sorted(cls.info.items()):
        if info.size < 3:
            continue
        verts = sorted(cls.faces.face(fid).vertex_set())
        for u, v in itertools.combinations(verts, 2):
            if len(g.parallel_class(u, v)) != r - 2:
                continue
            instances += 1
            if info.size < r + 1 or info.val < r:
                bad.append((fid, u, v, info.size, info.val))
    return _report("r2-edge",
                   "a 3+-face on an (r-2)-edge has size >= r+1 and val >= r",
                   instances, bad)


# -- r = 4 face structure ------------------------------------------------------

def _pred_cor_33_53(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 3):
        instances += 1
        for o in cls.adjacency[fid]:
            if cls.info[o].size in (3, 4):
                bad.append((fid, o))
    for fid in _faces_of_size(cls, 5):
        instances += 1
        count = sum(1 for o in cls.adjacency[fid] if cls.info[o].size == 3)
        if count > 2:
            bad.append((fid, "three-faces", count))
    return _report("cor-33-53",
                   "no 3-face meets a 3-/4-face; a 5-face meets at most two 3-faces",
                   instances, bad)


def _pred_triangle_sides(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 3):
        face = cls.faces.face(fid)
        for idx, (v, e) in enumerate(face.walk):
            instances += 1
            other = cls.faces.opposite(fid, idx)
            if other == fid:
                continue
            o_info = cls.info[other]
            apex_choices = [w for w in face.vertex_set() if w in g.endpoints(e)]
            needed_val = 4 if any(len(g.neighbors(w)) == 3 for w in apex_choices) else 2
            if o_info.size < 5 or o_info.val < needed_val:
                bad.append((fid, other, o_info.size, o_info.val))
    return _report("triangle-side-faces",
                   "faces flanking a 3-face have size >= 5 and val >= 2 (>= 4 at a 3-neighbor apex)",
                   instances, bad)


# -- r = 5 face structure -------------------------------------------------------

def _pred_triangle_one_2face(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 3):
        instances += 1
        if len(_two_face_neighbors(cls, fid)) > 1:
            bad.append((fid,))
    return _report("3face-one-2face", "a 3-face is adjacent to at most one 2-face",
                   instances, bad)


def _pred_cor_diamond(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 3):
        instances += 1
        big = sum(1 for o in cls.adjacency[fid] if cls.info[o].size >= 4)
        if big < 2:
            bad.append((fid, big))
    return _report("cor-diamond", "a 3-face is adjacent to at least two 4+-faces",
                   instances, bad)


def _pred_diamond(g, r, cls):
    bad = []
    instances = 0
    threes = _faces_of_size(cls, 3)
    for f1, f2 in itertools.combinations(threes, 2):
        if f2 not in cls.adjacency[f1]:
            continue
        for fid, info in sorted(cls.info.items()):
            if fid in (f1, f2):
                continue
            if f1 in cls.adjacency[fid] or f2 in cls.adjacency[fid]:
                instances += 1
                if info.val < 4:
                    bad.append((f1, f2, fid, info.val))
    return _report("diamond", "a face meeting adjacent 3-faces has val >= 4",
                   instances, bad)


def _pred_4face_2face(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 4):
        instances += 1
        if len(_two_face_neighbors(cls, fid)) > 1:
            bad.append((fid,))
    return _report("4face-one-2face", "a 4-face is adjacent to at most one 2-face",
                   instances, bad)


def _pred_4face_antipode(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 4):
        for idx in range(2):
            a = cls.faces.opposite(fid, idx)
            b = cls.faces.opposite(fid, idx + 2)
            for x, y in ((a, b), (b, a)):
                if x == fid or y == fid:
                    continue
                if cls.info[x].size == 3:
                    instances += 1
                    if cls.info[y].size < 4 or cls.info[y].val < 4:
                        bad.append((fid, x, y, cls.info[y].size, cls.info[y].val))
    return _report("4face-antipode",
                   "opposite a 3-face across a 4-face sits a 4+-face with val >= 4",
                   instances, bad)


def _pred_4face_shame(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 4):
        info = cls.info[fid]
        if not info.heavy:
            continue
        face = cls.faces.face(fid)
        walk = face.walk
        for idx in range(4):
            # orient so the 2-face sits on edge (v1, v4) = slot idx and the
            # 3-face on the slot at v1 next to it, in either direction
            if cls.info[cls.faces.opposite(fid, idx)].size != 2:
                continue
            for nb_idx, shared_vertex_pos in ((idx + 1) % 4, None), ((idx - 1) % 4, None):
                other = cls.faces.opposite(fid, nb_idx)
                if other == fid or cls.info[other].size != 3:
                    continue
                instances += 1
                shared_edge = walk[nb_idx][1]
                v1, v2 = g.endpoints(shared_edge)
                two_edge = walk[idx][1]
                if v2 in g.endpoints(two_edge):
                    v1, v2 = v2, v1   # v1 carries the 2-edge
                tri = cls.faces.face(other)
                apex = next(w for w in tri.vertex_set() if w not in (v1, v2))
                f2 = None
                for j, (_, e) in enumerate(tri.walk):
                    if set(g.endpoints(e)) == {v2, apex}:
                        f2 = cls.faces.opposite(other, j)
                if f2 is None or f2 == other:
                    continue
                if cls.info[f2].val < 3:
                    bad.append((fid, other, f2, cls.info[f2].val))
    return _report("4face-shame",
                   "heavy 4-face next to a 3-face forces val >= 3 across the far triangle edge",
                   instances, bad)


def _pred_5face_2faces(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 5):
        instances += 1
        if len(_two_face_neighbors(cls, fid)) > 2:
            bad.append((fid,))
    return _report("5face-two-2faces", "a 5-face is adjacent to at most two 2-faces",
                   instances, bad)


def _pred_5face_direct_heavy(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 5):
        twos = _two_face_neighbors(cls, fid)
        heavy3 = [o for o in cls.adjacency[fid]
                  if cls.info[o].size == 3 and cls.info[o].heavy]
        if len(twos) == 2 and heavy3:
            instances += 1
            low = [o for o in cls.adjacency[fid] if cls.info[o].size <= 3]
            if len(low) > 3:
                bad.append((fid, tuple(low)))
    return _report("5face-direct-heavy",
                   "a 5-face with two 2-faces and a heavy 3-face meets no other 2-/3-face",
                   instances, bad)


def _consecutive_two_slots(cls: FaceClassification, fid: int) -> tuple[list[int], int]:
    info = cls.info[fid]
    slots = [i for i, s in enumerate(info.neighbor_sizes) if s == 2]
    d = info.size
    pairs = sum(1 for i in slots if (i + 1) % d in slots)
    return slots, pairs


def _pred_6face_four_2faces(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 6):
        slots, _ = _consecutive_two_slots(cls, fid)
        if len(slots) == 4:
            instances += 1
            runs = _cyclic_runs(slots, 6)
            if sorted(len(run) for run in runs) != [4]:
                bad.append((fid, tuple(slots)))
    return _report("6face-four-2faces",
                   "four 2-faces on a 6-face form a 2-face 4-path",
                   instances, bad)


def _pred_6face_incident(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 6):
        slots, pairs = _consecutive_two_slots(cls, fid)
        if len(slots) >= 3:
            instances += 1
            if pairs == 0:
                bad.append((fid, tuple(slots)))
    return _report("6face-incident",
                   "three 2-faces on a 6-face include two incident ones",
                   instances, bad)


def _cyclic_runs(slots: list[int], d: int) -> list[list[int]]:
    in_set = set(slots)
    runs = []
    seen = set()
    for s in slots:
        if s in seen:
            continue
        start = s
        while (start - 1) % d in in_set and (start - 1) % d != s:
            start = (start - 1) % d
            if start == s:
                break
        run = [start]
        seen.add(start)
        nxt = (start + 1) % d
        while nxt in in_set and nxt not in seen:
            run.append(nxt)
            seen.add(nxt)
            nxt = (nxt + 1) % d
        runs.append(run)
    return runs


def _pred_three_2edges(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 2):
        info = cls.info[fid]
        if not info.internal or len(info.two_face_path) < 4:
            continue
        u, v = sorted(cls.faces.face(fid).vertex_set())
        path = info.two_face_path
        pos_u = path.index(u)
        pos_v = path.index(v)
        lo, hi = min(pos_u, pos_v), max(pos_u, pos_v)
        window = set(path[max(0, lo - 1):hi + 2])
        nbrs = sorted(cls.adjacency[fid])
        if len(nbrs) != 2:
            continue
        instances += 1
        counts = []
        for side in nbrs:
            side_face = cls.faces.face(side)
            if cls.info[side].size < 4:
                bad.append((fid, side, "size", cls.info[side].size))
            n_i = 0
            part2 = False
            for j in range(side_face.size):
                opp = cls.faces.opposite(side, j)
                if opp == side or cls.info[opp].size < 4:
                    continue
                endpoints = set(g.endpoints(side_face.walk[j][1]))
                if not endpoints & {u, v}:
                    n_i += 1
                if not endpoints & window:
                    part2 = True
            counts.append(n_i)
            if n_i < 1:
                bad.append((fid, side, "n_i", n_i))
            if not part2:
                bad.append((fid, side, "part2"))
        if sum(counts) < 4:
            bad.append((fid, "n1+n2", sum(counts)))
    return _report("three-2edges",
                   "internal 2-face of a 2-face 3-path: flanking faces are 4+ with"
                   " enough non-incident 4+-neighbors",
                   instances, bad)


def _pred_fat_triangle(g, r, cls):
    bad = []
    instances = 0
    for fid in _faces_of_size(cls, 2):
        nbrs = sorted(cls.adjacency[fid])
        if len(nbrs) != 2:
            continue
        for f, f_other in (nbrs, reversed(nbrs)):
            if cls.info[f].size != 3:
                continue
            vset = cls.faces.face(fid).vertex_set()
            v, w = sorted(vset)
            tri = cls.faces.face(f)
            apex = next(x for x in tri.vertex_set() if x not in vset)
            for end in (v, w):
                if len(g.neighbors(end)) != 4:
                    continue    # hypothesis |N(v)| = 4 fails: not applicable
                instances += 1
                far = cls.info[f_other]
                if far.val < 3 or far.size < 6:
                    bad.append((fid, f, f_other, "f-prime", far.size, far.val))
                for j, (_, e) in enumerate(tri.walk):
                    if set(g.endpoints(e)) == {end, apex}:
                        side = cls.faces.opposite(f, j)
                        if side != f and cls.info[side].size >= 3:
                            s_info = cls.info[side]
                            if s_info.size < 5 or s_info.val < 3:
                                bad.append((fid, f, side, "f-dblprime",
                                            s_info.size, s_info.val))
    return _report("fat-triangle",
                   "across a heavy 3-face: the far face has val >= 3, size >= 6;"
                   " its side faces have val >= 3, size >= 5 (|N(v)| = 4 ends only)",
                   instances, bad)


_COMMON = [
    ("no-nontrivial-tight-cut", _pred_tight_cuts),
    ("three-connected", _pred_three_connected),
    ("min-cut-4", _pred_min_cut_four),
    ("nontrivial-odd-cut", _pred_nontrivial_odd_cut),
    ("mu-le-r-minus-2", _pred_mu),
    ("obs-k-face-neighbors", _pred_obs_faces),
    ("r2-edge", _pred_r2_edge),
]
_R4_ONLY = [
    ("cor-33-53", _pred_cor_33_53),
    ("triangle-side-faces", _pred_triangle_sides),
]
_R5_ONLY = [
    ("3face-one-2face", _pred_triangle_one_2face),
    ("cor-diamond", _pred_cor_diamond),
    ("diamond", _pred_diamond),
    ("4face-one-2face", _pred_4face_2face),
    ("4face-antipode", _pred_4face_antipode),
    ("4face-shame", _pred_4face_shame),
    ("5face-two-2faces", _pred_5face_2faces),
    ("5face-direct-heavy", _pred_5face_direct_heavy),
    ("6face-four-2faces", _pred_6face_four_2faces),
    ("6face-incident", _pred_6face_incident),
    ("three-2edges", _pred_three_2edges),
    ("fat-triangle", _pred_fat_triangle),
]


def lemma_audit(emb: Embedding, r: int,
                classification: FaceClassification | None = None) -> AuditReport:
    """Run every lemma predicate for the given regularity over a circular
    embedding.  Predicates whose own preconditions fail on a handcrafted
    instance (odd order, wrong regularity, too small) report not-applicable
    instead of aborting the audit."""
    if r not in (4, 5):
        raise InvalidArgument("audits are defined for r in {4, 5}")
    g = emb.graph
    cls = classification if classification is not None else classify_faces(emb, r)
    checks = _COMMON + (_R4_ONLY if r == 4 else _R5_ONLY)
    reports = []
    for pred_id, check in checks:
        try:
            reports.append(check(g, r, cls))
        except InvalidArgument as exc:
            reports.append(PredicateReport(
                pred_id, "precondition failed on this instance",
                NOT_APPLICABLE, ((str(exc),),)))
    return AuditReport(r, reports)
