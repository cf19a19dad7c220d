"""Line-oriented text format for graphs and embeddings.

    # comment
    surface sphere|projective
    vertex <int>
    edge <eid:int> <u:int> <v:int> sign=+1|-1
    rot <v:int> : <eid list, cyclic order>

The surface/rot/sign parts are optional; without them the file describes an
abstract multigraph only.  Writing is canonical (sorted ids), and reading a
written file reproduces it byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from rgraphs.multigraph import Multigraph


class FormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GraphDocument:
    """Parsed file: a multigraph plus optional embedding data."""
    graph: Multigraph
    surface: str | None = None            # "sphere" | "projective"
    rotation: dict[int, tuple[int, ...]] | None = None
    signs: dict[int, int] | None = None

    @property
    def has_embedding(self) -> bool:
        return self.rotation is not None


def parse(text: str) -> GraphDocument:
    vertices: list[int] = []
    edges: dict[int, tuple[int, int]] = {}
    signs: dict[int, int] = {}
    rotation: dict[int, tuple[int, ...]] = {}
    surface: str | None = None
    saw_sign = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "surface":
                if len(parts) != 2 or parts[1] not in ("sphere", "projective"):
                    raise FormatError("expected 'surface sphere|projective'", lineno)
                surface = parts[1]
            elif kind == "vertex":
                if len(parts) != 2:
                    raise FormatError("expected 'vertex <int>'", lineno)
                vertices.append(int(parts[1]))
            elif kind == "edge":
                if len(parts) not in (4, 5):
                    raise FormatError("expected 'edge <eid> <u> <v> [sign=+1|-1]'", lineno)
                eid, u, v = int(parts[1]), int(parts[2]), int(parts[3])
                if eid in edges:
                    raise FormatError(f"duplicate edge id {eid}", lineno)
                edges[eid] = (u, v)
                if len(parts) == 5:
                    if parts[4] == "sign=+1":
                        signs[eid] = 1
                    elif parts[4] == "sign=-1":
                        signs[eid] = -1
                    else:
                        raise FormatError(f"bad sign field {parts[4]!r}", lineno)
                    saw_sign = True
            elif kind == "rot":
                if len(parts) < 3 or parts[2] != ":":
                    raise FormatError("expected 'rot <v> : <eid list>'", lineno)
                v = int(parts[1])
                if v in rotation:
                    raise FormatError(f"duplicate rotation for vertex {v}", lineno)
                rotation[v] = tuple(int(p) for p in parts[3:])
            else:
                raise FormatError(f"unknown directive {kind!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"bad integer in {line!r}", lineno) from None

    for v in rotation:
        if v not in set(vertices):
            raise FormatError(f"rotation for unknown vertex {v}", 0)
    graph = Multigraph(vertices, edges)
    if rotation:
        full_signs = {eid: signs.get(eid, 1) for eid in graph.edge_ids}
        return GraphDocument(graph, surface, rotation, full_signs)
    if saw_sign or surface is not None:
        full_signs = {eid: signs.get(eid, 1) for eid in graph.edge_ids} if saw_sign else None
        return GraphDocument(graph, surface, None, full_signs)
    return GraphDocument(graph)


def write(doc: GraphDocument) -> str:
    lines = []
    if doc.surface is not None:
        lines.append(f"surface {doc.surface}")
    for v in sorted(doc.graph.vertices):
        lines.append(f"vertex {v}")
    for eid, (u, v) in doc.graph.edges_items():
        if doc.signs is not None:
            s = "+1" if doc.signs.get(eid, 1) > 0 else "-1"
            lines.append(f"edge {eid} {u} {v} sign={s}")
        else:
            lines.append(f"edge {eid} {u} {v}")
    if doc.rotation is not None:
        for v in sorted(doc.rotation):
            order = " ".join(str(e) for e in doc.rotation[v])
            lines.append(f"rot {v} : {order}")
    return "\n".join(lines) + "\n"


def load(path: str) -> GraphDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def dump(doc: GraphDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write(doc))
