"""Mechanical verification of the per-face nonnegativity case analyses.

A face profile abstracts one face f of a circular projective embedding: its
size d and, for every boundary edge, the kind of the face on the other side.
Kinds carry exactly the distinctions the redistribution rules and the
structure lemmas can see:

  r = 4:  "2", "3", "4"  (4 means size >= 4)
  r = 5:  2-faces split by their far side   2h (2-face), 2t (3-face),
          2p (4+);  3-faces by their governing rule   3h (heavy),
          3t (next to a 3-face), 3s (next to a heavy 4-face), 3p (plain);
          4+-faces split into 4h (heavy 4-face) and 4p.

Per slot the outgoing charge of f is determined by the kind, and the
incoming charge of a 2-/3-face by its own rule class, so the final charge
is exact.  The structure lemmas become constraints on counts and on the
cyclic arrangement; a profile is admissible when its counts pass every
active constraint and some arrangement of them satisfies the positional
ones.  Enumerating all admissible profiles up to d_max and checking
nonnegativity re-derives the contradiction at the heart of the coloring
theorems; the sizes beyond d_max are covered by the closed-form linear
bounds, checked symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from rgraphs.multigraph import InvalidArgument

F = Fraction

TWO_KINDS_R5 = ("2h", "2t", "2p")
THREE_KINDS_R5 = ("3h", "3t", "3s", "3p")
FOUR_KINDS_R5 = ("4h", "4p")
KINDS_R5 = TWO_KINDS_R5 + THREE_KINDS_R5 + FOUR_KINDS_R5
KINDS_R4 = ("2", "3", "4")

D_MAX_DEFAULT = 20


def _counts_get(counts: dict[str, int], *kinds: str) -> int:
    return sum(counts.get(k, 0) for k in kinds)


@dataclass(frozen=True)
class FaceProfile:
    r: int
    d: int
    counts: tuple[tuple[str, int], ...]      # kind -> count, sorted, zero-free
    arrangement: tuple[str, ...]             # witness cyclic arrangement
    val: int                                 # number of 4+ slots
    pay: Fraction
    inflow: Fraction
    final: Fraction

    def counts_dict(self) -> dict[str, int]:
        return dict(self.counts)

    def discharging_paths(self) -> list[list[str]]:
        """Maximal runs of slots opposite 2-/3-faces in the witness."""
        arr = self.arrangement
        d = len(arr)
        low = [k[0] in "23" for k in arr]
        if all(low):
            return [list(arr)]
        runs = []
        i = 0
        while i < d:
            if low[i] and not low[(i - 1) % d]:
                run = []
                j = i
                while low[j % d]:
                    run.append(arr[j % d])
                    j += 1
                runs.append(run)
            i += 1
        return runs

    def path_parity_counts(self) -> tuple[int, int]:
        """(t, c_t): odd-length discharging paths and val - t."""
        runs = self.discharging_paths()
        t = sum(1 for run in runs if len(run) % 2 == 1)
        return t, self.val - t

    def describe(self) -> str:
        cs = ", ".join(f"{k}x{c}" for k, c in self.counts)
        return f"d={self.d} [{cs}] val={self.val} final={self.final}"


# -- charge model -------------------------------------------------------------

def slot_pay(r: int, kind: str, d: int, heavy_self: bool) -> Fraction:
    """Charge f sends across one boundary edge of the given kind."""
    if r == 4:
        return {"2": F(1), "3": F(1, 3), "4": F(0)}[kind]
    if d == 2:
        return F(0)
    if d == 3:
        return F(1, 3) if kind in TWO_KINDS_R5 else F(0)
    table = {
        "2h": F(4, 3), "2t": F(1), "2p": F(2, 3),
        "3h": F(1, 3), "3t": F(1, 6), "3p": F(1, 9),
        "4h": F(0), "4p": F(0),
    }
    if kind == "3s":
        return F(0) if heavy_self else F(1, 6)
    return table[kind]


def face_inflow(r: int, d: int, counts: dict[str, int]) -> Fraction:
    """Charge f receives, by its own rule class."""
    if r == 4:
        if d == 2:
            return F(2)
        if d == 3:
            return F(1)
        return F(0)
    c2 = _counts_get(counts, *TWO_KINDS_R5)
    c3 = _counts_get(counts, *THREE_KINDS_R5)
    c4 = _counts_get(counts, *FOUR_KINDS_R5)
    if d == 2:
        if c2 >= 1:
            return c4 * F(4, 3)                      # R2c
        if c3 >= 1:
            return c3 * F(1, 3) + c4 * F(1)          # R2b
        return c4 * F(2, 3)                          # R2a
    if d == 3:
        if c2 >= 1:
            return c4 * F(1, 3)                      # R3c
        if c3 >= 1:
            return c4 * F(1, 6)                      # R3b
        if counts.get("4h", 0) >= 1:
            return counts.get("4p", 0) * F(1, 6)     # R3d (heavy faces exempt)
        return c4 * F(1, 9)                          # R3a
    return F(0)


def profile_charge(r: int, d: int, counts: dict[str, int],
                   arrangement: tuple[str, ...]) -> tuple[Fraction, Fraction, Fraction]:
    heavy_self = r == 5 and d == 4 and _counts_get(counts, *TWO_KINDS_R5) >= 1
    pay = sum((slot_pay(r, k, d, heavy_self) * c for k, c in counts.items()),
              F(0))
    inflow = face_inflow(r, d, counts)
    base = F(d) - (F(4) if r == 4 else F(10, 3))
    return pay, inflow, base - pay + inflow


# -- constraints ---------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    cid: str
    lemma: str
    scope: str                  # "count" | "arrangement"
    description: str
    count_check: object = None  # fn(d, counts) -> bool


def _c(counts, *kinds):
    return _counts_get(counts, *kinds)


def constraints_r5() -> list[Constraint]:
    c = Constraint
    return [
        c("r2edge-val5", "(r-2)-edge", "count",
          "a face on a 3-edge has d >= 6 and val >= 5",
          lambda d, cs: _c(cs, "2h") == 0 or (d >= 6 and _low(cs) <= d - 5)),
        c("fat-indirect-val3", "fat-triangle", "count",
          "a face indirectly adjacent to a heavy 3-face has d >= 6 and val >= 3",
          lambda d, cs: _c(cs, "2t") == 0 or (d >= 6 and _low(cs) <= d - 3)),
        c("fat-side-d5", "fat-triangle", "count",
          "a 3+-face adjacent to a heavy 3-face has d >= 5",
          lambda d, cs: d == 2 or _c(cs, "3h") == 0 or d >= 5),
        c("diamond-val4", "diamond", "count",
          "a face adjacent to one of two adjacent 3-faces has val >= 4",
          lambda d, cs: _c(cs, "3t") == 0 or _low(cs) <= d - 4),
        c("cor-diamond", "diamond", "count",
          "a 3-face is adjacent to at least two 4+-faces",
          lambda d, cs: d != 3 or _low(cs) <= 1),
        c("mu-bigon", "min-counterexample", "count",
          "multiplicity <= 3: a 2-face meets at most one 2-face",
          lambda d, cs: d != 2 or _c(cs, *TWO_KINDS_R5) <= 1),
        c("bigon-3edge-flank", "(r-2)-edge", "count",
          "the outer faces of a 3-edge are 4+ (size >= 6)",
          lambda d, cs: d != 2 or _c(cs, *TWO_KINDS_R5) == 0
          or _c(cs, *FOUR_KINDS_R5) == 1),
        c("bigon-3face-flank", "fat-triangle", "count",
          "a 2-face beside a 3-face has a 4+-face (size >= 6) on the other side",
          lambda d, cs: d != 2 or _c(cs, *THREE_KINDS_R5) == 0
          or (_c(cs, *THREE_KINDS_R5) == 1 and _c(cs, *FOUR_KINDS_R5) == 1)),
        c("shame-one-heavy4", "4-face-shame", "count",
          "a 3-face with only 4+ neighbors meets at most one heavy 4-face",
          lambda d, cs: d != 3 or _low(cs) > 0 or _c(cs, "4h") <= 1),
        c("4face-one-2face", "5-case-4-face-2-face", "count",
          "a 4-face is adjacent to at most one 2-face",
          lambda d, cs: d != 4 or _c(cs, *TWO_KINDS_R5) <= 1),
        c("5face-two-2faces", "5-case-5-face-2-face", "count",
          "a 5-face is adjacent to at most two 2-faces",
          lambda d, cs: d != 5 or _c(cs, *TWO_KINDS_R5) <= 2),
        c("5face-direct-heavy", "5-face-direct-heavy-triangle", "count",
          "a 5-face with two 2-faces and a heavy 3-face meets no other 2-/3-face",
          lambda d, cs: not (d == 5 and _c(cs, *TWO_KINDS_R5) == 2
                             and _c(cs, "3h") >= 1) or _low(cs) == 3),
        c("5face-one2-heavy3cap", "fat-triangle", "count",
          "a 5-face with exactly one 2-face meets at most two heavy 3-faces",
          lambda d, cs: not (d == 5 and _c(cs, *TWO_KINDS_R5) == 1)
          or _c(cs, "3h") <= 2),
        c("5face-2-2-3plain", "diamond+shame", "count",
          "on a 5-face with two 2-faces and three 3-faces, R3b/R3d do not apply",
          lambda d, cs: not (d == 5 and _c(cs, *TWO_KINDS_R5) == 2
                             and _c(cs, *THREE_KINDS_R5) == 3 and _c(cs, "3h") == 0)
          or (_c(cs, "3t") == 0 and _c(cs, "3s") == 0)),
        c("2face-cap", "three-2-edges", "count",
          "a 6+-face is adjacent to at most d-2 2-faces",
          lambda d, cs: d < 6 or _c(cs, *TWO_KINDS_R5) <= d - 2),
        c("2face-max-no3", "three-2-edges", "count",
          "a 6+-face with d-2 2-faces meets no 3-face",
          lambda d, cs: d < 6 or _c(cs, *TWO_KINDS_R5) != d - 2
          or _c(cs, *THREE_KINDS_R5) == 0),
        c("heavy4-no-plain3", "definitions", "count",
          "a 3-face beside a heavy 4-face is not an R3a target",
          lambda d, cs: not (d == 4 and _c(cs, *TWO_KINDS_R5) >= 1)
          or _c(cs, "3p") == 0),
        c("no-adjacent-2t", "diamond+3-face-one-2-face", "arrangement",
          "heavy 3-faces indirectly adjacent to f are pairwise non-incident"),
        c("no-2-next-to-2h", "min-counterexample", "arrangement",
          "3-connectivity: a 3-edge and a 2-edge never share a vertex"),
        c("4face-antipode", "4-face-antipode", "arrangement",
          "opposite a 3-face across a 4-face sits a 4+-face"),
        c("6face-four-2path", "6-face-2-faces", "arrangement",
          "four 2-faces on a 6-face form a 2-face 4-path"),
        c("6face-incident", "6-face-incident", "arrangement",
          "three 2-faces on a 6-face include two incident ones"),
        c("2path-window", "three-2-edges", "arrangement",
          "every 2-face 3-path on f forces a far 4+-slot"),
        c("6face-not3path-heavy", "three-2-edges+fat-triangle", "arrangement",
          "three non-path 2-faces on a 6-face: at most two heavy 3-slots,"
          " and a 4+ third when there are two"),
    ]


def constraints_r4() -> list[Constraint]:
    c = Constraint
    return [
        c("r2edge", "(r-2)-edge", "count",
          "a face on a 2-edge has d >= 5 and val >= 4",
          lambda d, cs: _c(cs, "2") == 0 or (d >= 5 and _low(cs) <= d - 4)),
        c("triangle-sides", "e-coloring-triangle+cor-33-53", "count",
          "all neighbors of a 3-face are 5+-faces",
          lambda d, cs: d != 3 or _low(cs) == 0),
        c("cor-33-53-4face", "cor-33-53", "count",
          "a 4-face meets no 3-face",
          lambda d, cs: d != 4 or _c(cs, "3") == 0),
        c("cor-33-53-5face", "cor-33-53", "count",
          "a 5-face meets at most two 3-faces",
          lambda d, cs: d != 5 or _c(cs, "3") <= 2),
        c("mu-bigon", "min-counterexample", "count",
          "multiplicity <= 2: no 2-face meets a 2-face",
          lambda d, cs: d != 2 or _c(cs, "2") == 0),
        c("bigon-no-3face", "(r-2)-edge", "count",
          "no 3-face meets a 2-face",
          lambda d, cs: d != 2 or _c(cs, "3") == 0),
        c("no-consecutive-2s", "min-counterexample", "arrangement",
          "3-connectivity: two 2-edges never share a vertex"),
    ]


def _low(counts: dict[str, int]) -> int:
    return sum(c for k, c in counts.items() if k[0] in "23")


# -- arrangement feasibility -----------------------------------------------------

def _has_run_of_two_kinds(arr: tuple[str, ...], length: int) -> bool:
    d = len(arr)
    return any(all(arr[(i + j) % d][0] == "2" for j in range(length)) for i in range(d))


def _window_ok(arr: tuple[str, ...]) -> bool:
    """Every three consecutive 2-slots need a 4-slot away from the five slots
    touching the path's vertices."""
    d = len(arr)
    for i in range(d):
        if all(arr[(i + j) % d][0] == "2" for j in range(3)):
            excluded = {(i - 1) % d, i % d, (i + 1) % d, (i + 2) % d, (i + 3) % d}
            if not any(arr[j][0] == "4" for j in range(d) if j not in excluded):
                return False
    return True


def _arrangement_ok(r: int, d: int, arr: tuple[str, ...], active: frozenset[str],
                    counts: dict[str, int]) -> bool:
    two = [k[0] == "2" for k in arr]
    if r == 4:
        if "no-consecutive-2s" in active and d > 1:
            if any(two[i] and two[(i + 1) % d] for i in range(d)):
                return False
        return True
    if "no-adjacent-2t" in active and d > 1:
        if any(arr[i] == "2t" and arr[(i + 1) % d] == "2t" for i in range(d)):
            return False
    if "no-2-next-to-2h" in active and d > 1:
        for i in range(d):
            if arr[i] == "2h" and (two[(i + 1) % d] or two[(i - 1) % d]):
                return False
    if "4face-antipode" in active and d == 4:
        for i in range(4):
            if arr[i][0] == "3" and arr[(i + 2) % 4][0] != "4":
                return False
    c2 = sum(two)
    if d == 6 and c2 == 4 and "6face-four-2path" in active:
        if not any(all(two[(i + j) % 6] for j in range(4)) for i in range(6)):
            return False
    if d == 6 and c2 == 3 and "6face-incident" in active:
        if not any(two[i] and two[(i + 1) % 6] for i in range(6)):
            return False
    if "2path-window" in active and not _window_ok(arr):
        return False
    if d == 6 and c2 == 3 and "6face-not3path-heavy" in active:
        if not _has_run_of_two_kinds(arr, 3):
            c3h = sum(1 for k in arr if k == "3h")
            c3 = sum(1 for k in arr if k[0] == "3")
            if c3h > 2 or (c3h == 2 and c3 != 2):
                return False
    return True


def _necessary_counts_ok(r: int, d: int, counts: dict[str, int],
                         active: frozenset[str]) -> bool:
    """Cheap necessary conditions implied by the positional constraints."""
    if r == 4:
        if "no-consecutive-2s" in active and counts.get("2", 0) > d // 2:
            return False
        return True
    c2 = _counts_get(counts, *TWO_KINDS_R5)
    nontwo = d - c2
    if "no-adjacent-2t" in active and counts.get("2t", 0) > d // 2:
        return False
    if c2 and "no-adjacent-2t" in active and "no-2-next-to-2h" in active:
        # 2-runs alternate with nonempty gaps: every 2h is a singleton run,
        # and a run holds at most one more 2t than it has 2p slots
        c2h, c2t, c2p = (counts.get(k, 0) for k in TWO_KINDS_R5)
        min_runs = c2h + max(c2t - c2p, 1 if c2t + c2p else 0)
        if min_runs > nontwo:
            return False
    if "2path-window" in active and d >= 3:
        if 3 * c2 > 2 * d and _counts_get(counts, "4", "4h", "4p", "4o") == 0:
            return False     # a 2-run of length 3 is forced but no 4+ exists
        if c2 == d and c2 >= 3:
            return False
    return True


_SEARCH_CAP = 500_000


def _partitions(total: int, max_parts: int, max_part: int | None = None):
    """Partitions of total into at most max_parts parts, descending."""
    if max_part is None:
        max_part = total

    def rec(left: int, parts_left: int, cap: int, acc: list[int]):
        if left == 0:
            yield tuple(acc)
            return
        if parts_left == 0:
            return
        for first in range(min(cap, left), 0, -1):
            acc.append(first)
            yield from rec(left - first, parts_left - 1, first, acc)
            acc.pop()

    yield from rec(total, max_parts, max_part, [])


def _structure_feasible(d: int, counts: dict[str, int],
                        active: frozenset[str]) -> tuple | None:
    """Exact run/gap feasibility for faces of size >= 7 (only the pair rules
    and the 2-path window constrain arrangements there).

    2-slots form runs separated by nonempty gaps of 3/4-slots.  Isolation of
    2h slots and non-adjacency of 2t slots limit the run structure; the
    window rule requires, for every run of length >= 3, some 4-slot away
    from the single gap slot touching that run end, which a placement
    argument reduces to counting safe gap slots.

    Returns (partition, normalized counts) for a feasible structure, or
    None.
    """
    t_rule = "no-adjacent-2t" in active
    h_rule = "no-2-next-to-2h" in active
    w_rule = "2path-window" in active
    c2h, c2t, c2p = (counts.get(k, 0) for k in TWO_KINDS_R5)
    if not h_rule:
        c2p += c2h
        c2h = 0
    if not t_rule:
        c2p += c2t
        c2t = 0
    c2 = c2h + c2t + c2p
    c3 = sum(c for k, c in counts.items() if k[0] == "3")
    c4 = sum(c for k, c in counts.items() if k[0] == "4")
    nontwo = c3 + c4
    if c2 == 0:
        return ((), (c2h, c2t, c2p, c3, c4))
    if nontwo == 0:
        if w_rule and c2 >= 3:
            return None
        if h_rule and c2h:
            return None
        if t_rule and c2t > c2p:
            return None
        return ((c2,), (c2h, c2t, c2p, c3, c4))
    for k in range(1, min(c2, nontwo) + 1):
        for part in _partitions(c2, k):
            if len(part) != k:
                continue
            ones = sum(1 for l in part if l == 1)
            if ones < c2h:
                continue
            capacity = sum((l + 1) // 2 for l in part) - c2h
            if c2t > capacity:
                continue
            big = sum(1 for l in part if l >= 3)
            if w_rule and big >= 1:
                if c4 == 0:
                    continue
                if c4 == 1:
                    smalls = k - big
                    safe = ((k >= 2 and smalls >= 2)
                            or (k >= 2 and smalls >= 1 and nontwo >= k + 1)
                            or nontwo >= k + 2)
                    if not safe:
                        continue
            return (part, (c2h, c2t, c2p, c3, c4))
    return None


def _structure_witness(d: int, structure: tuple, counts: dict[str, int],
                       active: frozenset[str]) -> tuple[str, ...] | None:
    """Materialize a run/gap structure into a slot arrangement and validate
    it; several canonical gap layouts are tried."""
    part, (c2h, c2t, c2p, c3, c4) = structure
    threes = [k for k in sorted(counts) if k[0] == "3" for _ in range(counts[k])]
    fours = [k for k in sorted(counts) if k[0] == "4" for _ in range(counts[k])]
    if not part:
        for arr in (tuple(threes + fours), tuple(fours + threes)):
            if _arrangement_ok(5, d, arr, active, counts):
                return arr
        return None

    def build_runs() -> list[list[str]] | None:
        runs = []
        t_left, p_left, h_left = c2t, c2p, c2h
        for l in sorted(part, reverse=True):
            if l == 1 and h_left and len(runs) >= len(part) - c2h:
                runs.append(["2h"])
                h_left -= 1
                continue
            run = []
            for i in range(l):
                if i % 2 == 0 and t_left:
                    run.append("2t")
                    t_left -= 1
                elif p_left:
                    run.append("2p")
                    p_left -= 1
                elif t_left and (not run or run[-1] != "2t"):
                    run.append("2t")
                    t_left -= 1
                else:
                    return None
            runs.append(run)
        if t_left or p_left or h_left:
            return None
        return runs

    runs = build_runs()
    if runs is None:
        return None
    k = len(runs)

    def layout_shielded() -> list[list[str]] | None:
        gaps = [[] for _ in range(k)]
        t3, f4 = list(threes), list(fours)
        if f4:
            if len(t3) >= 2 and c3 + c4 >= k + 1 + (1 if k > 1 else 2):
                gaps[0] = [t3.pop()] + f4 + [t3.pop()]
                f4 = []
            else:
                gaps[0] = f4
                f4 = []
        rest = t3 + f4
        for i in range(1, k):
            if not rest:
                return None
            gaps[i].append(rest.pop())
        if not gaps[0]:
            if not rest:
                return None
            gaps[0].append(rest.pop())
        for i, extra in enumerate(rest):
            gaps[1 + (i % max(k - 1, 1)) if k > 1 else 0].append(extra)
        return gaps

    def layout_spread() -> list[list[str]] | None:
        gaps = [[] for _ in range(k)]
        items = list(threes) + list(fours)
        for i, item in enumerate(items):
            gaps[i % k].append(item)
        if any(not gap for gap in gaps):
            return None
        return gaps

    def layout_small_flank() -> list[list[str]] | None:
        # two shortest runs flank gap 0, which takes every 4-slot
        if k < 2:
            return None
        gaps = [[] for _ in range(k)]
        gaps[0] = list(fours)
        rest = list(threes)
        for i in range(1, k):
            if not rest:
                return None
            gaps[i].append(rest.pop())
        if not gaps[0]:
            if not rest:
                return None
            gaps[0].append(rest.pop())
        for i, extra in enumerate(rest):
            gaps[1 + i % (k - 1)].append(extra)
        return gaps

    orderings = [list(range(k))]
    by_len = sorted(range(k), key=lambda i: len(runs[i]))
    # gap 0 sits between the first two runs of an ordering; flank it with
    # the two shortest runs so a 4-slot there stays clear of long-run ends
    if k >= 2:
        orderings.append([by_len[0], by_len[1]] + by_len[2:])
    for layout in (layout_shielded, layout_spread, layout_small_flank):
        gaps = layout()
        if gaps is None:
            continue
        for ordering in orderings:
            arr: list[str] = []
            for j, ri in enumerate(ordering):
                arr.extend(runs[ri])
                arr.extend(gaps[j])
            if len(arr) == d and _arrangement_ok(5, d, tuple(arr), active, counts):
                return tuple(arr)
    return None


def _search_arrangement(r: int, d: int, counts: dict[str, int],
                        active: frozenset[str]) -> tuple[str, ...] | None:
    """Some cyclic arrangement of the counts passing every active positional
    constraint, or None.

    Sizes up to 6 (where the 4-face and 6-face rules live) are decided by
    multiset backtracking; larger sizes by the exact run/gap oracle with a
    validated constructive witness, falling back to capped backtracking if
    construction fails."""
    if not _necessary_counts_ok(r, d, counts, active):
        return None
    if r == 5 and d >= 7:
        structure = _structure_feasible(d, counts, active)
        if structure is None:
            return None
        witness = _structure_witness(d, structure, counts, active)
        if witness is not None:
            return witness
    if r == 4 and d >= 5:
        c2 = counts.get("2", 0)
        if "no-consecutive-2s" in active and c2 > d // 2:
            return None
        others = ["3"] * counts.get("3", 0) + ["4"] * counts.get("4", 0)
        arr: list[str] = []
        twos = c2
        while twos and others:
            arr.append("2")
            arr.append(others.pop())
            twos -= 1
        arr.extend(["2"] * twos)
        arr.extend(others)
        if _arrangement_ok(r, d, tuple(arr), active, counts):
            return tuple(arr)
    kinds = [k for k, c in sorted(counts.items()) if c > 0]
    remaining = {k: counts[k] for k in kinds}
    slots: list[str] = []
    nodes = 0

    def local_ok(i: int) -> bool:
        a, b = slots[i - 1], slots[i]
        if r == 4:
            return not ("no-consecutive-2s" in active and a == "2" and b == "2")
        if "no-adjacent-2t" in active and a == "2t" and b == "2t":
            return False
        if "no-2-next-to-2h" in active and (
                (a == "2h" and b[0] == "2") or (b == "2h" and a[0] == "2")):
            return False
        return True

    def place(pos: int):
        nonlocal nodes
        nodes += 1
        if nodes > _SEARCH_CAP:
            raise RuntimeError(
                f"arrangement search cap exceeded for d={d} counts={counts}")
        if pos == d:
            arr = tuple(slots)
            if _arrangement_ok(r, d, arr, active, counts):
                return arr
            return None
        for k in kinds:
            if remaining[k] == 0:
                continue
            slots.append(k)
            remaining[k] -= 1
            if pos == 0 or local_ok(pos):
                got = place(pos + 1)
                if got is not None:
                    return got
            remaining[k] += 1
            slots.pop()
        return None

    return place(0)


# -- enumeration -----------------------------------------------------------------

def _count_vectors(r: int, d: int):
    """All slot-kind count vectors with sum d.

    The alphabet is trimmed where sub-kinds cannot matter: a bigon's
    neighbors are heavy by definition; the 4h/4p split only affects 3-face
    inflow, so larger faces use a single 4-bucket; and above size 5 the
    non-heavy 3-kinds are interchangeable for every active constraint while
    3s pays the most, so the worst case keeps only {3h, 3s}.
    """
    if r == 4:
        for c2 in range(d + 1):
            for c3 in range(d - c2 + 1):
                yield {"2": c2, "3": c3, "4": d - c2 - c3}
        return
    if d == 2:
        for c2 in range(2):
            for c3 in range(3 - c2):
                yield {"2h": c2, "3h": c3, "4h": 2 - c2 - c3}
        return
    if d == 3:
        low_kinds = ("2p", "3s")
        for vec in _compositions(d, len(low_kinds)):
            counts = dict(zip(low_kinds, vec))
            rest = d - sum(vec)
            for c4h in range(rest + 1):
                out = dict(counts)
                out["4h"] = c4h
                out["4p"] = rest - c4h
                yield out
        return
    low_kinds = TWO_KINDS_R5 + THREE_KINDS_R5 if d <= 5 else (
        "2h", "2t", "2p", "3h", "3s")
    for vec in _compositions(d, len(low_kinds)):
        counts = dict(zip(low_kinds, vec))
        counts["4p"] = d - sum(vec)
        yield counts


def _compositions(budget: int, parts: int):
    """All tuples of `parts` nonnegative ints with sum <= budget."""
    if parts == 1:
        for x in range(budget + 1):
            yield (x,)
        return
    for x in range(budget + 1):
        for rest in _compositions(budget - x, parts - 1):
            yield (x,) + rest


def _active_constraints(r: int, dropped: tuple[str, ...]) -> list[Constraint]:
    cons = constraints_r5() if r == 5 else constraints_r4()
    dropped_set = set(dropped)
    out = []
    for c in cons:
        if c.cid in dropped_set or c.lemma in dropped_set:
            continue
        out.append(c)
    return out


# -- reports -----------------------------------------------------------------------

@dataclass(frozen=True)
class TailCheck:
    name: str
    status: str            # "ok" | "fail" | "skipped"
    detail: str


@dataclass
class CaseReport:
    r: int
    d_max: int
    dropped: tuple[str, ...]
    checked: int
    admissible: int
    negatives: list[FaceProfile]
    tail: list[TailCheck]
    path_bound_failures: list[FaceProfile] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (not self.negatives and not self.path_bound_failures
                and all(t.status == "ok" for t in self.tail))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "d_max": self.d_max,
            "dropped": list(self.dropped),
            "profiles_checked": self.checked,
            "profiles_admissible": self.admissible,
            "negative_profiles": [p.describe() for p in self.negatives],
            "tail_checks": [{"name": t.name, "status": t.status, "detail": t.detail}
                            for t in self.tail],
            "ok": self.ok,
        }


def _linear_nonneg(name: str, slope: Fraction, value_at_d0: Fraction,
                   d0: int) -> TailCheck:
    """slope * d + offset >= 0 for all d >= d0, certified by the value at d0
    and a nonnegative slope."""
    ok = slope >= 0 and value_at_d0 >= 0
    detail = f"value at d={d0} is {value_at_d0}, slope {slope}"
    return TailCheck(name, "ok" if ok else "fail", detail)


def _tail_checks_r4(d_max: int, active: set[str]) -> list[TailCheck]:
    checks = []
    d0 = d_max + 1
    # no 2-slots: loses at most d/3
    checks.append(_linear_nonneg(
        "r4-tail-no-2-slots: (d-4) - d/3 >= 0",
        F(2, 3), F(2, 3) * d0 - 4, d0))
    if {"r2edge", "no-consecutive-2s"} <= active:
        # paper bound: floor(d/2) + (ceil(d/2) - 4)/3 <= d - 4, per parity
        d_even = d0 if d0 % 2 == 0 else d0 + 1
        d_odd = d0 if d0 % 2 == 1 else d0 + 1
        checks.append(_linear_nonneg(
            "r4-tail-with-2-slots-even: d/3 - 8/3 >= 0",
            F(1, 3), F(d_even, 3) - F(8, 3), d_even))
        checks.append(_linear_nonneg(
            "r4-tail-with-2-slots-odd: (d-7)/3 >= 0",
            F(1, 3), F(d_odd - 7, 3), d_odd))
    else:
        checks.append(TailCheck("r4-tail-with-2-slots", "skipped",
                                "supporting constraint dropped"))
    return checks


def _pair_bound_ok(active: set[str]) -> bool:
    """Every kind pair that may sit on consecutive slots pays at most 5/3
    in total (d >= 7, so the face is never heavy)."""
    pays = {k: slot_pay(5, k, 7, False) for k in KINDS_R5}
    for a in KINDS_R5:
        for b in KINDS_R5:
            if "no-adjacent-2t" in active and a == "2t" and b == "2t":
                continue
            if "no-2-next-to-2h" in active and (
                    (a == "2h" and b[0] == "2") or (b == "2h" and a[0] == "2")):
                continue
            if pays[a] + pays[b] > F(5, 3):
                return False
    return True


def _tail_checks_r5(d_max: int, active: set[str]) -> list[TailCheck]:
    checks = []
    d0 = d_max + 1
    if _pair_bound_ok(active):
        checks.append(TailCheck(
            "r5-consecutive-pair-bound: tau(e1) + tau(e2) <= 5/3", "ok",
            "max over admissible adjacent kind pairs"))
    else:
        checks.append(TailCheck(
            "r5-consecutive-pair-bound: tau(e1) + tau(e2) <= 5/3", "fail",
            "an admissible adjacent pair exceeds 5/3"))
        return checks
    # Each discharging path has at least one edge, so d - val >= t and
    # d >= 2*val - c_t; the branch minima below plug that in.
    if "r2edge-val5" in active:
        # heavy 2-face present: omega' >= (d + 2 val + 3 c_t - 20)/6 with
        # val >= 5; at c_t = 0 the path count forces d >= 2 val >= 10
        worst = min(max(d0, 2 * 5 - c_t) + 2 * 5 + 3 * c_t - 20
                    for c_t in range(0, 6))
        checks.append(TailCheck(
            "r5-tail-heavy-2: (d + 2 val + 3 c_t - 20)/6 >= 0 at val >= 5",
            "ok" if worst >= 0 and d0 >= 7 else "fail",
            f"branch minimum {F(worst, 6)}"))
    else:
        checks.append(TailCheck("r5-tail-heavy-2", "skipped",
                                "(r-2)-edge constraint dropped"))
    # no heavy 2-face: omega' >= (d + 4 val + c_t - 20)/6
    worst_val4 = min(max(d0, 2 * v - c_t) + 4 * v + c_t - 20
                     for v in range(4, 12) for c_t in range(0, v + 1))
    checks.append(TailCheck(
        "r5-tail-val>=4: (d + 4 val + c_t - 20)/6 >= 0",
        "ok" if worst_val4 >= 0 else "fail", f"branch minimum {F(worst_val4, 6)}"))
    worst_v3 = min(max(d0, 7) + 12 + c_t - 20 for c_t in (1, 2, 3))
    checks.append(TailCheck(
        "r5-tail-val3-odd-path: (d + 12 + c_t - 20)/6 >= 0 at c_t >= 1",
        "ok" if worst_v3 >= 0 and d0 >= 7 else "fail", f"minimum {F(worst_v3, 6)}"))
    d_even3 = d0 if d0 % 2 == 0 else d0 + 1
    # val = 3, c_t = 0: three odd paths make d - 3 odd, so d is even (>= 8)
    worst_v3e = max(d_even3, 8) + 12 - 20
    checks.append(TailCheck(
        "r5-tail-val3-even: (d + 12 - 20)/6 >= 0 at even d >= 8",
        "ok" if worst_v3e >= 0 else "fail", f"value {F(worst_v3e, 6)}"))
    if {"fat-indirect-val3", "r2edge-val5", "2face-cap", "2face-max-no3"} <= active:
        # val <= 2: only plain 2-faces (2/3) and 3-slots (<= 1/3) remain;
        # with d-2 2-faces no 3-face is allowed, else at most d-3 2-faces
        checks.append(_linear_nonneg(
            "r5-tail-val<=2-max2: (d - 6)/3 >= 0",
            F(1, 3), F(d0 - 6, 3), d0))
        checks.append(_linear_nonneg(
            "r5-tail-val<=2: (d - 7)/3 >= 0",
            F(1, 3), F(d0 - 7, 3), d0))
    else:
        checks.append(TailCheck("r5-tail-val<=2", "skipped",
                                "supporting constraint dropped"))
    return checks


def _path_bounds_hold(profile: FaceProfile) -> bool:
    """The witness obeys the published discharging-path bounds: even paths
    pay at most (5/6)|P|, odd ones (5/6)(|P|-1) plus one end transfer."""
    if profile.d < 7 or profile.val == 0:
        return True
    pays = {k: slot_pay(5, k, profile.d, False) for k in KINDS_R5}
    for run in profile.discharging_paths():
        total = sum((pays[k] for k in run), F(0))
        L = len(run)
        if L % 2 == 0:
            if total > F(5, 6) * L:
                return False
        else:
            end = max(pays[run[0]], pays[run[-1]])
            if total > F(5, 6) * (L - 1) + end:
                return False
    return True


# -- main entry points ----------------------------------------------------------

def verify_case_analysis(r: int, d_max: int = D_MAX_DEFAULT,
                         dropped: tuple[str, ...] = ()) -> CaseReport:
    """Enumerate every admissible face profile with d <= d_max, compute its
    exact final charge, and collect the negative ones (none are expected
    with the full constraint set); verify the closed-form bounds for all
    larger sizes symbolically."""
    if r not in (4, 5):
        raise InvalidArgument("case analysis is defined for r in {4, 5}")
    if d_max < 10:
        raise InvalidArgument("d_max must be at least 10")
    constraints = _active_constraints(r, dropped)
    count_cons = [c for c in constraints if c.scope == "count"]
    active_arr = frozenset(c.cid for c in constraints if c.scope == "arrangement")
    arr_memo: dict[tuple, tuple[str, ...] | None] = {}

    checked = 0
    admissible = 0
    negatives: list[FaceProfile] = []
    path_failures: list[FaceProfile] = []
    for d in range(2, d_max + 1):
        for counts in _count_vectors(r, d):
            checked += 1
            if not all(c.count_check(d, counts) for c in count_cons):
                continue
            witness = _find_witness(r, d, counts, active_arr, arr_memo)
            if witness is None:
                continue
            admissible += 1
            pay, inflow, final = profile_charge(r, d, counts, witness)
            profile = FaceProfile(
                r, d, tuple(sorted((k, c) for k, c in counts.items() if c)),
                witness, _counts_get(counts, "4", "4h", "4p"), pay, inflow, final)
            if final < 0:
                negatives.append(profile)
            if r == 5 and not _path_bounds_hold(profile):
                path_failures.append(profile)
    tail = _tail_checks_r5(d_max, set(active_arr) | {c.cid for c in count_cons}) \
        if r == 5 else _tail_checks_r4(d_max, {c.cid for c in constraints})
    negatives.sort(key=lambda p: (p.final, p.d))
    return CaseReport(r, d_max, tuple(dropped), checked, admissible,
                      negatives, tail, path_failures)


def _find_witness(r: int, d: int, counts: dict[str, int],
                  active_arr: frozenset[str],
                  memo: dict) -> tuple[str, ...] | None:
    if d <= 2:
        arr = tuple(k for k in sorted(counts) for _ in range(counts[k]))
        return arr if _arrangement_ok(r, d, arr, active_arr, counts) else None
    if r == 4:
        key = (d, counts["2"], counts["3"])
    else:
        key = (d, counts.get("2h", 0), counts.get("2t", 0), counts.get("2p", 0),
               counts.get("3h", 0),
               counts.get("3t", 0) + counts.get("3s", 0) + counts.get("3p", 0),
               counts.get("4h", 0) + counts.get("4p", 0))
    key = key + (active_arr,)
    if key in memo:
        coarse = memo[key]
        if coarse is None:
            return None
        return _refine_witness(r, coarse, counts)
    coarse_counts = _coarsen(r, counts)
    arr = _search_arrangement(r, d, coarse_counts, active_arr)
    memo[key] = arr
    if arr is None:
        return None
    return _refine_witness(r, arr, counts)


def _coarsen(r: int, counts: dict[str, int]) -> dict[str, int]:
    if r == 4:
        return dict(counts)
    out = {"2h": counts.get("2h", 0), "2t": counts.get("2t", 0),
           "2p": counts.get("2p", 0),
           "3h": counts.get("3h", 0),
           "3o": counts.get("3t", 0) + counts.get("3s", 0) + counts.get("3p", 0),
           "4o": counts.get("4h", 0) + counts.get("4p", 0)}
    return {k: v for k, v in out.items() if v}


def _refine_witness(r: int, coarse: tuple[str, ...],
                    counts: dict[str, int]) -> tuple[str, ...]:
    if r == 4:
        return coarse
    fill3 = [k for k in ("3t", "3s", "3p") for _ in range(counts.get(k, 0))]
    fill4 = [k for k in ("4h", "4p") for _ in range(counts.get(k, 0))]
    out = []
    i3 = i4 = 0
    for k in coarse:
        if k == "3o":
            out.append(fill3[i3])
            i3 += 1
        elif k == "4o":
            out.append(fill4[i4])
            i4 += 1
        else:
            out.append(k)
    return tuple(out)


def ablation(r: int, dropped: tuple[str, ...],
             d_max: int = D_MAX_DEFAULT) -> CaseReport:
    """Re-run the case verification without the named constraints (by cid or
    lemma tag); the negative profiles that appear show the dropped lemma is
    load-bearing."""
    return verify_case_analysis(r, d_max, tuple(dropped))


def constraint_ids(r: int) -> list[tuple[str, str, str]]:
    return [(c.cid, c.lemma, c.description)
            for c in (constraints_r5() if r == 5 else constraints_r4())]
