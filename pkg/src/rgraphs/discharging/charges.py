"""Exact-rational charge ledgers over embedded faces.

Initial charge is d(f) - 4 in the 4-regular case and d(f) - 10/3 in the
5-regular one; on a projective circular embedding the totals are forced by
Euler's formula to -4 and -10/3.  Rule application transfers charge once per
(rule, source, target) triple and conserves the total exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from rgraphs.embedding import Embedding, FaceClassification, classify_faces
from rgraphs.multigraph import InvalidArgument
from rgraphs.transform import NotApplicable
from rgraphs.discharging.rules import ADJACENT, INDIRECT, RuleSet, atoms_hold

INITIAL_DEFICIT = {4: Fraction(4), 5: Fraction(10, 3)}


@dataclass(frozen=True)
class Transfer:
    source: int
    target: int
    rule_id: str
    amount: Fraction


@dataclass
class ChargeLedger:
    r: int
    surface: str
    initial: dict[int, Fraction]
    final: dict[int, Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    def total_final(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))

    def negative_faces(self) -> list[int]:
        return sorted(f for f, c in self.final.items() if c < 0)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "surface": self.surface,
            "initial": {str(f): str(c) for f, c in sorted(self.initial.items())},
            "final": {str(f): str(c) for f, c in sorted(self.final.items())},
            "transfers": [
                {"source": t.source, "target": t.target,
                 "rule": t.rule_id, "amount": str(t.amount)}
                for t in self.transfers
            ],
            "total_initial": str(self.total_initial()),
            "total_final": str(self.total_final()),
        }


class _FaceView:
    """Adapter giving rule predicates size/heavy/neighbors of a real face."""

    __slots__ = ("fid", "size", "heavy", "_cls")

    def __init__(self, cls: FaceClassification, fid: int):
        self.fid = fid
        self.size = cls.info[fid].size
        self.heavy = cls.info[fid].heavy
        self._cls = cls

    def neighbor_views(self) -> list["_FaceView"]:
        return [_FaceView(self._cls, o) for o in sorted(self._cls.adjacency[self.fid])]


def initial_charges(emb: Embedding, r: int,
                    classification: FaceClassification | None = None) -> ChargeLedger:
    """Per-face initial charges; requires a circular 2-cell embedding of an
    r-regular graph, r in {4, 5}."""
    if r not in INITIAL_DEFICIT:
        raise InvalidArgument("initial charges are defined for r in {4, 5}")
    if not emb.graph.is_regular(r):
        raise InvalidArgument(f"graph is not {r}-regular")
    cls = classification if classification is not None else classify_faces(emb, r)
    if not cls.faces.all_circuits():
        raise NotApplicable("charge accounting needs a circular embedding")
    deficit = INITIAL_DEFICIT[r]
    charges = {f.fid: Fraction(f.size) - deficit for f in cls.faces.faces}
    return ChargeLedger(r, emb.surface, charges, dict(charges))


def apply_rules(ledger: ChargeLedger, rules: RuleSet,
                classification: FaceClassification) -> ChargeLedger:
    """Execute every rule once per (rule, source, target) triple.  With the
    built-in rule sets the target classes are disjoint; user rule sets with
    overlapping matches all fire."""
    cls = classification
    views = {fid: _FaceView(cls, fid) for fid in cls.info}
    final = dict(ledger.final)
    transfers = list(ledger.transfers)
    for rule in rules:
        for fid, view in sorted(views.items()):
            if not atoms_hold(rule.target, view):
                continue
            if rule.relation == ADJACENT:
                candidates = sorted(cls.adjacency[fid])
            elif rule.relation == INDIRECT:
                # sources indirectly adjacent to the target: the target is a
                # heavy 3-face and the source sits across one of its 2-faces
                candidates = [s for s, info in sorted(cls.info.items())
                              if fid in info.indirect_heavy3]
            else:
                raise InvalidArgument(f"unknown relation {rule.relation!r}")
            for src in candidates:
                if src == fid:
                    continue
                if not atoms_hold(rule.source, views[src]):
                    continue
                final[src] -= rule.amount
                final[fid] += rule.amount
                transfers.append(Transfer(src, fid, rule.rule_id, rule.amount))
    out = ChargeLedger(ledger.r, ledger.surface, dict(ledger.initial), final, transfers)
    if out.total_final() != ledger.total_initial():
        raise AssertionError("charge conservation violated")
    return out


def discharge(emb: Embedding, r: int, rules: RuleSet | None = None
              ) -> tuple[ChargeLedger, FaceClassification]:
    """Initial charges plus one full rule application."""
    from rgraphs.discharging.rules import builtin_rules
    cls = classify_faces(emb, r)
    ledger = initial_charges(emb, r, cls)
    ledger = apply_rules(ledger, rules if rules is not None else builtin_rules(r), cls)
    return ledger, cls
