"""Embeddings as signed rotation systems, face tracing, and face vocabulary.

An embedding is a cyclic order of incident edges at every vertex plus a sign
per edge; the surface tag only declares which Euler characteristic the trace
must reproduce (2 for the sphere, 1 for the projective plane).  Embeddings
are inputs, never computed: a wrong claim fails the Euler check loudly.

Face tracing walks states (e, v, s): we arrived at vertex v along edge e,
carrying a local orientation s.  The next edge is the rotation successor of
e at v when s = +1 and the predecessor when s = -1, and s flips when the
next edge has sign -1.  Each facial walk is traced twice, once per side; the
two traversals of a walk are exchanged by the fixed-point-free involution
(e, v, s) -> (e, other end of e, -s*sign(e)), so faces are the orbit pairs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from rgraphs.multigraph import InvalidArgument, Multigraph
from rgraphs.graphio import GraphDocument

SPHERE = "sphere"
PROJECTIVE = "projective"
_EULER = {SPHERE: 2, PROJECTIVE: 1}


class EmbeddingError(ValueError):
    """The rotation/sign data is not a 2-cell embedding of the tagged surface."""


@dataclass(frozen=True)
class Embedding:
    graph: Multigraph
    rotation: dict[int, tuple[int, ...]]
    signs: dict[int, int]
    surface: str

    def __post_init__(self):
        if self.surface not in _EULER:
            raise EmbeddingError(f"unknown surface {self.surface!r}")
        for v in self.graph.vertices:
            rot = self.rotation.get(v)
            if rot is None:
                raise EmbeddingError(f"missing rotation at vertex {v}")
            if sorted(rot) != sorted(self.graph.incident(v)):
                raise EmbeddingError(
                    f"rotation at vertex {v} does not list its incident edges once each")
        for eid in self.graph.edge_ids:
            if self.signs.get(eid) not in (1, -1):
                raise EmbeddingError(f"missing or bad sign for edge {eid}")

    @classmethod
    def from_document(cls, doc: GraphDocument) -> "Embedding":
        if doc.rotation is None:
            raise EmbeddingError("file carries no rotation system")
        if doc.surface is None:
            raise EmbeddingError("file carries no surface tag")
        signs = doc.signs or {e: 1 for e in doc.graph.edge_ids}
        return cls(doc.graph, dict(doc.rotation), dict(signs), doc.surface)

    def to_document(self) -> GraphDocument:
        return GraphDocument(self.graph, self.surface,
                             {v: tuple(r) for v, r in self.rotation.items()},
                             dict(self.signs))


@dataclass(frozen=True)
class Face:
    fid: int
    walk: tuple[tuple[int, int], ...]   # (vertex, edge leaving it toward the next corner)

    @property
    def size(self) -> int:
        return len(self.walk)

    def vertex_seq(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.walk)

    def edge_seq(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.walk)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertex_seq())

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edge_seq())

    def is_circuit(self) -> bool:
        seq = self.vertex_seq()
        return len(set(seq)) == len(seq)


def _normalize(emb: Embedding) -> tuple[dict[int, tuple[int, ...]], dict[int, int]]:
    """Force a BFS spanning tree to sign +1 by vertex-local flips (reverse the
    rotation and negate all incident signs); canonicalizes the presentation."""
    g = emb.graph
    if not g.is_connected():
        raise EmbeddingError("face tracing needs a connected graph")
    rot = {v: list(r) for v, r in emb.rotation.items()}
    signs = dict(emb.signs)
    root = min(g.vertices)
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e in g.incident(u):
            w = g.other_end(e, u)
            if w in seen:
                continue
            seen.add(w)
            if signs[e] == -1:
                rot[w] = list(reversed(rot[w]))
                for f in g.incident(w):
                    signs[f] = -signs[f]
            queue.append(w)
    return {v: tuple(r) for v, r in rot.items()}, signs


@dataclass
class FaceSet:
    faces: list[Face]
    edge_sides: dict[int, tuple[tuple[int, int], ...]]  # eid -> ((fid, walk idx), (fid, walk idx))
    normalized_signs: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.faces)

    def face(self, fid: int) -> Face:
        return self.faces[fid]

    def sizes(self) -> list[int]:
        return sorted(f.size for f in self.faces)

    def opposite(self, fid: int, idx: int) -> int:
        """Face on the other side of the idx-th edge of face fid (may be fid
        itself when the walk uses both sides of that edge)."""
        eid = self.faces[fid].walk[idx][1]
        (f1, i1), (f2, i2) = self.edge_sides[eid]
        return f2 if (f1, i1) == (fid, idx) else f1

    def faces_at_edge(self, eid: int) -> tuple[int, int]:
        (f1, _), (f2, _) = self.edge_sides[eid]
        return f1, f2

    def all_circuits(self) -> bool:
        return all(f.is_circuit() for f in self.faces)


def trace_faces(emb: Embedding) -> FaceSet:
    """Trace all facial walks and verify the Euler identity for the tagged
    surface.  Face ids are assigned in trace order, seeded from the lowest
    (vertex, edge) corner."""
    g = emb.graph
    rot, signs = _normalize(emb)
    if emb.surface == SPHERE and any(s == -1 for s in signs.values()):
        raise EmbeddingError("sphere embedding has essential -1 signs")

    index = {v: {e: i for i, e in enumerate(rot[v])} for v in g.vertices}

    def step(state):
        e, v, s = state
        order = rot[v]
        i = index[v][e]
        e2 = order[(i + 1) % len(order)] if s > 0 else order[(i - 1) % len(order)]
        s2 = s * signs[e2]
        return (e2, g.other_end(e2, v), s2)

    def partner(state):
        e, v, s = state
        return (e, g.other_end(e, v), -s * signs[e])

    seeds = sorted(
        ((e, v, s) for v in g.vertices for e in g.incident(v) for s in (1, -1)),
        key=lambda st: (st[1], st[0], -st[2]))
    visited: set[tuple[int, int, int]] = set()
    faces: list[Face] = []
    edge_sides: dict[int, list[tuple[int, int]]] = {e: [] for e in g.edge_ids}

    for seed in seeds:
        if seed in visited:
            continue
        orbit = [seed]
        cur = step(seed)
        while cur != seed:
            orbit.append(cur)
            cur = step(cur)
        mirror = [partner(st) for st in orbit]
        if any(st in orbit for st in mirror):
            raise EmbeddingError("facial walk equals its own reverse; not a 2-cell embedding")
        visited.update(orbit)
        visited.update(mirror)
        fid = len(faces)
        # orbit entry (e, v, s): arrived at v via e; the edge leaving v is the
        # next state's edge, so corner i pairs v_i with e_{i+1}.
        walk = tuple((orbit[i][1], orbit[(i + 1) % len(orbit)][0])
                     for i in range(len(orbit)))
        faces.append(Face(fid, walk))
        for i, (_, e) in enumerate(walk):
            edge_sides[e].append((fid, i))

    for e, sides in edge_sides.items():
        if len(sides) != 2:
            raise EmbeddingError(f"edge {e} appears {len(sides)} times in facial walks")
    euler = g.n - g.m + len(faces)
    if euler != _EULER[emb.surface]:
        raise EmbeddingError(
            f"Euler check failed: V-E+F = {euler}, expected {_EULER[emb.surface]} "
            f"for the {emb.surface}")
    return FaceSet(faces, {e: tuple(s) for e, s in edge_sides.items()}, signs)


def check_circular(emb: Embedding, faces: FaceSet | None = None) -> bool:
    """True iff every facial walk is a circuit (no repeated vertex)."""
    faces = faces if faces is not None else trace_faces(emb)
    return faces.all_circuits()


def face_relations(emb: Embedding, faces: FaceSet | None = None
                   ) -> tuple[dict[int, set[int]], dict[int, set[int]]]:
    """(adjacency, incidence): faces sharing an edge / sharing a vertex."""
    faces = faces if faces is not None else trace_faces(emb)
    adjacency: dict[int, set[int]] = {f.fid: set() for f in faces.faces}
    for eid in emb.graph.edge_ids:
        f1, f2 = faces.faces_at_edge(eid)
        if f1 != f2:
            adjacency[f1].add(f2)
            adjacency[f2].add(f1)
    by_vertex: dict[int, set[int]] = {}
    for f in faces.faces:
        for v in f.vertex_set():
            by_vertex.setdefault(v, set()).add(f.fid)
    incidence: dict[int, set[int]] = {f.fid: set() for f in faces.faces}
    for group in by_vertex.values():
        for fid in group:
            incidence[fid] |= group - {fid}
    return adjacency, incidence


def val(emb: Embedding, face: Face, faces: FaceSet | None = None) -> int:
    """Number of edges of the face shared with a distinct face of size >= 4."""
    faces = faces if faces is not None else trace_faces(emb)
    count = 0
    for idx in range(face.size):
        other = faces.opposite(face.fid, idx)
        if other != face.fid and faces.face(other).size >= 4:
            count += 1
    return count


@dataclass(frozen=True)
class FaceProfileInfo:
    """Per-face classification used by the discharging engine."""
    fid: int
    size: int
    heavy: bool                      # 2-, 3-, or 4-face adjacent to a 2-face
    val: int
    neighbor_sizes: tuple[int, ...]  # per walk position, size of the opposite face
    indirect_heavy3: tuple[int, ...]  # heavy 3-face ids this face is indirectly adjacent to
    two_face_path: tuple[int, ...] = ()   # maximal all-2-edge path through this 2-face
    internal: bool = False               # 2-face not incident to a path end


@dataclass
class FaceClassification:
    faces: FaceSet
    info: dict[int, FaceProfileInfo]
    adjacency: dict[int, set[int]]
    incidence: dict[int, set[int]]


def _two_edge_paths(g: Multigraph) -> dict[frozenset[int], tuple[tuple[int, ...], bool]]:
    """For each 2-edge {u, v}: the maximal path of 2-edges through it in the
    underlying simple graph, and whether {u, v} avoids the path's ends.
    Extension stops at vertices meeting more than two 2-edges."""
    pair_count: dict[frozenset[int], int] = {}
    for _, (u, v) in g.edges_items():
        key = frozenset((u, v))
        pair_count[key] = pair_count.get(key, 0) + 1
    two_edges = {key for key, c in pair_count.items() if c == 2}
    nbr: dict[int, set[int]] = {}
    for key in two_edges:
        u, v = tuple(key)
        nbr.setdefault(u, set()).add(v)
        nbr.setdefault(v, set()).add(u)

    def extend(start: int, prev: int) -> list[int]:
        path = [prev, start]
        while len(nbr.get(path[-1], ())) == 2:
            nxt = next(iter(nbr[path[-1]] - {path[-2]}))
            if nxt in path:
                break
            path.append(nxt)
        return path

    out = {}
    for key in two_edges:
        u, v = sorted(key)
        left = extend(u, v)[1:]      # [u, x1, ..., xk]: outward from u
        right = extend(v, u)[1:]     # [v, y1, ..., yl]: outward from v
        full = list(reversed(left)) + right
        internal = u not in (full[0], full[-1]) and v not in (full[0], full[-1])
        out[key] = (tuple(full), internal)
    return out


def classify_faces(emb: Embedding, r: int) -> FaceClassification:
    """Heavy flags, indirect adjacency through heavy 3-faces, 2-face path
    structure, and val for every face of a circular embedding."""
    if r not in (4, 5):
        raise InvalidArgument("classification is defined for r in {4, 5}")
    faces = trace_faces(emb)
    if not faces.all_circuits():
        raise EmbeddingError("classification needs a circular embedding")
    adjacency, incidence = face_relations(emb, faces)
    sizes = {f.fid: f.size for f in faces.faces}
    heavy = {
        fid: sizes[fid] in (2, 3, 4) and any(sizes[o] == 2 for o in adjacency[fid])
        for fid in sizes
    }
    # f' is indirectly adjacent to a heavy 3-face f when a 2-face sits
    # between them: the 2-face's two distinct neighbors are f and f'.
    indirect: dict[int, list[int]] = {fid: [] for fid in sizes}
    for f in faces.faces:
        if f.size != 2:
            continue
        nbrs = sorted(adjacency[f.fid])
        if len(nbrs) != 2:
            continue
        a, b = nbrs
        if sizes[a] == 3:
            indirect[b].append(a)
        if sizes[b] == 3:
            indirect[a].append(b)

    paths = _two_edge_paths(emb.graph)
    info = {}
    for f in faces.faces:
        neighbor_sizes = tuple(
            sizes[faces.opposite(f.fid, i)] for i in range(f.size))
        path: tuple[int, ...] = ()
        internal = False
        if f.size == 2:
            key = f.vertex_set()
            if key in paths:
                path, internal = paths[frozenset(key)]
        info[f.fid] = FaceProfileInfo(
            fid=f.fid,
            size=f.size,
            heavy=heavy[f.fid],
            val=val(emb, f, faces),
            neighbor_sizes=neighbor_sizes,
            indirect_heavy3=tuple(sorted(indirect[f.fid])),
            two_face_path=path,
            internal=internal,
        )
    return FaceClassification(faces, info, adjacency, incidence)
