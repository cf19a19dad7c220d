"""Command-line interface.

Subcommands compose through graph files (see graphio for the format);
every command takes --json for machine-readable reports.  Exit codes:
0 verdict computed, 1 property violated, 2 usage or parse error, 3 search
budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from rgraphs import catalog, cuts, graphio
from rgraphs.coloring import build_e_coloring, chromatic_index, find_mates
from rgraphs.discharging.charges import discharge
from rgraphs.discharging.lemmas import lemma_audit
from rgraphs.discharging.profiles import verify_case_analysis
from rgraphs.discharging.rules import RuleParseError, parse_rules
from rgraphs.embedding import Embedding, EmbeddingError, trace_faces
from rgraphs.minors import has_minor
from rgraphs.multigraph import InvalidArgument
from rgraphs.transform import NotApplicable, RSumSpec, cn_swap, \
    cn_swap_embedding, line_graph, r_sum, resolve_swap_spec

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class Report:
    """Accumulates one run's verdicts; renders as stable text or JSON."""

    def __init__(self, command: str, timing: bool):
        self.data = {"command": command, "inputs": {}, "verdicts": {}}
        self.lines: list[str] = []
        self._timing = timing
        self._t0 = time.monotonic()

    def input_file(self, path: str, text: str):
        digest = hashlib.sha256(text.encode()).hexdigest()
        self.data["inputs"][path] = digest

    def verdict(self, key: str, value):
        self.data["verdicts"][key] = value

    def line(self, text: str):
        self.lines.append(text)

    def emit(self, as_json: bool) -> None:
        if self._timing:
            self.data["elapsed_s"] = round(time.monotonic() - self._t0, 3)
        if as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)
            if self._timing:
                print(f"elapsed {self.data['elapsed_s']}s")


def _load(path: str, report: Report) -> graphio.GraphDocument:
    if path == "-":
        text = sys.stdin.read()
        report.input_file("<stdin>", text)
        return graphio.parse(text)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise graphio.FormatError(f"cannot read {path}: {exc}", 0)
    report.input_file(path, text)
    return graphio.parse(text)


def _need_embedding(doc: graphio.GraphDocument) -> Embedding:
    return Embedding.from_document(doc)


def _fmt_cut(rep: cuts.CutReport) -> str:
    return (f"X={sorted(rep.x)} size={rep.size} odd={rep.odd} "
            f"tight={rep.tight} trivial={rep.trivial}")


# -- subcommand implementations ------------------------------------------------

def _cmd_gen(args, report: Report) -> int:
    item = catalog.catalog(args.name)
    doc = item.to_document() if isinstance(item, Embedding) \
        else graphio.GraphDocument(item)
    text = graphio.write(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.line(f"wrote {args.name} to {args.out}")
    else:
        sys.stdout.write(text)
    report.verdict("generated", args.name)
    return EXIT_OK


def _cmd_check(args, report: Report) -> int:
    doc = _load(args.file, report)
    g = doc.graph
    ok, witness = cuts.is_r_graph(g, args.r)
    report.verdict("r", args.r)
    report.verdict("is_r_graph", ok)
    report.line(f"r-graph (r={args.r}): {'yes' if ok else 'no'}")
    if witness is not None:
        report.verdict("violating_cut", witness.to_json())
        report.line(f"violating cut: {_fmt_cut(witness)}")
    if ok:
        mo = cuts.min_odd_cut(g)
        report.verdict("min_odd_cut", mo.to_json())
        report.line(f"minimum odd cut: {_fmt_cut(mo)}")
        tights = cuts.find_nontrivial_tight_cuts(g, args.r)
        report.verdict("nontrivial_tight_cuts", [t.to_json() for t in tights])
        report.line(f"nontrivial tight cuts: {len(tights)}")
        for t in tights:
            report.line(f"  {_fmt_cut(t)}")
        verdict = cuts.two_vertex_cut_classification(g, args.r)
        report.verdict("two_vertex_cut", verdict)
        report.line(f"2-vertex-cut dichotomy: {verdict}")
    return EXIT_OK if ok else EXIT_VIOLATED


def _cmd_faces(args, report: Report) -> int:
    doc = _load(args.file, report)
    emb = _need_embedding(doc)
    faces = trace_faces(emb)
    sizes = faces.sizes()
    report.verdict("surface", emb.surface)
    report.verdict("face_sizes", sizes)
    report.verdict("circular", faces.all_circuits())
    euler = emb.graph.n - emb.graph.m + len(faces)
    report.verdict("euler", euler)
    report.line(f"surface {emb.surface}: V={emb.graph.n} E={emb.graph.m} "
                f"F={len(faces)} (V-E+F={euler})")
    report.line(f"face sizes: {sizes}")
    report.line(f"all facial walks are circuits: {faces.all_circuits()}")
    for f in faces.faces:
        walk = " ".join(f"{v}-e{e}" for v, e in f.walk)
        report.line(f"  face {f.fid} (size {f.size}): {walk}")
    return EXIT_OK


def _cmd_color(args, report: Report) -> int:
    doc = _load(args.file, report)
    res = chromatic_index(doc.graph, args.budget)
    report.verdict("nodes", res.nodes)
    if res.chi is None:
        report.verdict("status", "unknown")
        report.line(f"chromatic index: unknown (budget exhausted after {res.nodes} nodes)")
        return EXIT_BUDGET
    report.verdict("chromatic_index", res.chi)
    report.verdict("class", res.graph_class)
    report.line(f"chromatic index: {res.chi} (class {res.graph_class})")
    if args.json:
        report.verdict("coloring", {str(e): c for e, c in sorted(res.coloring.colors.items())})
    else:
        for e, c in sorted(res.coloring.colors.items()):
            report.line(f"  edge {e}: color {c}")
    return EXIT_OK


def _cmd_ecolor(args, report: Report) -> int:
    doc = _load(args.file, report)
    g = doc.graph
    r = g.max_degree()
    ec = build_e_coloring(g, args.edge, r)
    report.verdict("edge", args.edge)
    report.verdict("l_e", ec.l_e)
    report.verdict("strong", ec.strong)
    report.verdict("minimal_certified", ec.minimal_certified)
    report.verdict("joins", [sorted(j) for j in ec.joins])
    report.line(f"e-coloring at edge {args.edge}: l_e={ec.l_e} strong={ec.strong} "
                f"certified={ec.minimal_certified}")
    for i, join in enumerate(ec.joins):
        report.line(f"  M{i + 1}: {sorted(join)}")
    return EXIT_OK


def _cmd_mates(args, report: Report) -> int:
    doc = _load(args.file, report)
    g = doc.graph
    r = g.max_degree()
    ec = build_e_coloring(g, args.edge, r)
    mates = find_mates(g, ec)
    report.verdict("l_e", ec.l_e)
    all_found = all(m is not None for m in mates.values())
    report.verdict("all_mates_found", all_found)
    report.line(f"e-coloring at edge {args.edge}: l_e={ec.l_e}")
    for i in sorted(mates):
        m = mates[i]
        if m is None:
            report.line(f"  M{i + 1}: no mate (lemma falsifier on this instance)")
            report.verdict(f"mate_{i + 1}", None)
        else:
            report.line(f"  M{i + 1}: mate {_fmt_cut(m.cut)}")
            report.verdict(f"mate_{i + 1}", m.cut.to_json())
    return EXIT_OK if all_found else EXIT_VIOLATED


def _cmd_minor(args, report: Report) -> int:
    doc = _load(args.file, report)
    if args.pattern.endswith(".graph") or "/" in args.pattern:
        pattern = _load(args.pattern, report).graph
    else:
        pattern = catalog.catalog(args.pattern)
        if isinstance(pattern, Embedding):
            pattern = pattern.graph
    res = has_minor(doc.graph, pattern, args.budget)
    report.verdict("nodes", res.nodes)
    if res.found is None:
        report.line(f"minor search: unknown (budget exhausted after {res.nodes} nodes)")
        report.verdict("has_minor", None)
        return EXIT_BUDGET
    report.verdict("has_minor", res.found)
    report.line(f"{args.pattern}-minor: {'yes' if res.found else 'no'}")
    if res.found and args.model:
        for p, bs in sorted(res.model.branch_sets.items()):
            report.line(f"  branch {p}: {sorted(bs)}")
        report.verdict("model", {str(p): sorted(bs)
                                 for p, bs in res.model.branch_sets.items()})
    return EXIT_OK


def _cmd_swap(args, report: Report) -> int:
    doc = _load(args.file, report)
    cycle = tuple(int(v) for v in args.cycle.split(","))
    delete = tuple(int(e) for e in args.delete.split(",")) if args.delete else None
    spec = resolve_swap_spec(doc.graph, cycle, delete)
    if doc.has_embedding:
        emb, res = cn_swap_embedding(Embedding.from_document(doc), spec)
        out = emb.to_document()
    else:
        res = cn_swap(doc.graph, spec)
        out = graphio.GraphDocument(res.graph)
    report.verdict("added_edges", list(res.added))
    report.verdict("deleted_edges", list(res.deleted))
    sys.stdout.write(graphio.write(out))
    return EXIT_OK


def _cmd_rsum(args, report: Report) -> int:
    doc_a = _load(args.file_a, report)
    doc_b = _load(args.file_b, report)
    u, v = (int(x) for x in args.at.split(","))
    r = doc_a.graph.degree(u)
    res = r_sum(RSumSpec(doc_a.graph, doc_b.graph, u, v), r)
    report.verdict("new_edges", list(res.new_edges))
    sys.stdout.write(graphio.write(graphio.GraphDocument(res.graph)))
    return EXIT_OK


def _cmd_linegraph(args, report: Report) -> int:
    doc = _load(args.file, report)
    lg = line_graph(doc.graph)
    report.verdict("vertices", lg.n)
    report.verdict("edges", lg.m)
    sys.stdout.write(graphio.write(graphio.GraphDocument(lg)))
    return EXIT_OK


def _cmd_discharge(args, report: Report) -> int:
    doc = _load(args.file, report)
    emb = _need_embedding(doc)
    rules = None
    if args.rules:
        with open(args.rules, "r", encoding="utf-8") as fh:
            text = fh.read()
        report.input_file(args.rules, text)
        rules = parse_rules(text)
    ledger, _ = discharge(emb, args.r, rules)
    report.verdict("total_initial", str(ledger.total_initial()))
    report.verdict("total_final", str(ledger.total_final()))
    report.verdict("negative_faces", ledger.negative_faces())
    report.line(f"initial charge total: {ledger.total_initial()}")
    for fid in sorted(ledger.initial):
        report.line(f"  face {fid}: {ledger.initial[fid]} -> {ledger.final[fid]}")
    report.line(f"final charge total: {ledger.total_final()}")
    report.line(f"faces with negative final charge: {ledger.negative_faces()}")
    if args.json:
        report.verdict("ledger", ledger.to_json())
    return EXIT_OK


def _cmd_verify_cases(args, report: Report) -> int:
    dropped = tuple(args.drop.split(",")) if args.drop else ()
    rep = verify_case_analysis(args.r, args.dmax, dropped)
    report.verdict("profiles_checked", rep.checked)
    report.verdict("profiles_admissible", rep.admissible)
    report.verdict("negative_profiles", [p.describe() for p in rep.negatives])
    report.verdict("ok", rep.ok)
    report.line(f"r={args.r} d_max={args.dmax} dropped={list(dropped)}")
    report.line(f"profiles checked: {rep.checked}, admissible: {rep.admissible}")
    report.line(f"negative profiles: {len(rep.negatives)}")
    for p in rep.negatives[:50]:
        report.line(f"  {p.describe()}")
    for t in rep.tail:
        report.line(f"tail check {t.name}: {t.status}")
        report.verdict(f"tail:{t.name}", t.status)
    return EXIT_OK if rep.ok else EXIT_VIOLATED


def _cmd_audit(args, report: Report) -> int:
    doc = _load(args.file, report)
    emb = _need_embedding(doc)
    audit = lemma_audit(emb, args.r)
    report.verdict("audit", audit.to_json())
    for rep in audit.reports:
        report.line(f"{rep.pred_id}: {rep.status}")
        for w in rep.witnesses[:10]:
            report.line(f"  witness: {w}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rgraphs",
        description="multigraph cuts, colorings, embeddings, minors, and "
                    "discharging verification")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--timing", action="store_true",
                        help="include elapsed time (breaks byte-stable output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a catalog instance")
    p.add_argument("name")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("check", help="r-graph and cut analysis")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("faces", help="trace the faces of an embedding")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_faces)

    p = sub.add_parser("color", help="exact chromatic index")
    p.add_argument("--budget", type=int)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_color)

    p = sub.add_parser("ecolor", help="e-coloring at an edge")
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_ecolor)

    p = sub.add_parser("mates", help="mates of an e-coloring")
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_mates)

    p = sub.add_parser("minor", help="exact minor containment")
    p.add_argument("--pattern", default="petersen")
    p.add_argument("--model", action="store_true")
    p.add_argument("--budget", type=int)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_minor)

    p = sub.add_parser("swap", help="C4/C6 swap (writes the new graph)")
    p.add_argument("--cycle", required=True, help="v1,v2,... forming the circuit")
    p.add_argument("--delete", help="edge ids to delete, one per even circuit edge")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_swap)

    p = sub.add_parser("rsum", help="r-sum of two graphs (writes the new graph)")
    p.add_argument("--at", required=True, help="u,v vertices removed from A and B")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(fn=_cmd_rsum)

    p = sub.add_parser("linegraph", help="line graph (writes the new graph)")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_linegraph)

    p = sub.add_parser("discharge", help="exact charge ledger for an embedding")
    p.add_argument("--r", type=int, required=True, choices=(4, 5))
    p.add_argument("--rules", help="rule DSL file (defaults to the built-ins)")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_discharge)

    p = sub.add_parser("verify-cases", help="nonnegativity case verification")
    p.add_argument("--r", type=int, required=True, choices=(4, 5))
    p.add_argument("--dmax", type=int, default=20)
    p.add_argument("--drop", help="constraint or lemma ids to ablate, comma separated")
    p.set_defaults(fn=_cmd_verify_cases)

    p = sub.add_parser("audit", help="lemma predicate audit of an embedding")
    p.add_argument("--r", type=int, required=True, choices=(4, 5))
    p.add_argument("file")
    p.set_defaults(fn=_cmd_audit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    report = Report(args.command, args.timing)
    try:
        code = args.fn(args, report)
    except (graphio.FormatError, InvalidArgument, EmbeddingError,
            NotApplicable, RuleParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.emit(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
