"""Saturation and semisaturation checks, witness certificates, completion.

A matrix M is saturating for a pattern P when M avoids P and flipping any
single zero of M to a one creates a copy of P.  Semisaturation weakens this:
M may already contain P, but every flip must create a copy that uses the
flipped cell as one of P's ones.  A witness is an avoiding matrix with a run
of consecutive expandable lines: empty lines in which every single flip
creates a copy.  Producing a witness is the standard route to proving that a
saturation function stays bounded, since copies of the witness can be chained
along the expandable run to any desired size.

The required run length is 1 plus the longest run of consecutive empty
columns (for expandable columns) or empty rows (for expandable rows) of the
target pattern; a pattern without empty lines needs a run of just one.
Leading and trailing empty lines of the target are counted the same way as
interior ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Literal, Mapping, Optional

from satmat.pattern import (
    Pattern,
    Placement,
    contains,
    contains_using_cell,
    max_empty_col_run,
    max_empty_row_run,
)

WitnessKind = Literal["horizontal", "vertical", "full"]

WITNESS_KINDS: tuple[WitnessKind, ...] = ("horizontal", "vertical", "full")


class ContainsPatternError(RuntimeError):
    """An operation required an avoiding matrix but found a copy."""

    def __init__(self, placement: Placement):
        super().__init__(
            f"matrix contains the pattern at rows {list(placement.row_choice)} "
            f"cols {list(placement.col_choice)}"
        )
        self.placement = placement


@dataclass(frozen=True)
class CheckResult:
    """Boolean verdict plus the first failure found, if any.

    For a failed saturation check exactly one of `containment` (the matrix
    already contains the pattern) or `cell` (this zero can be flipped without
    creating a copy) is set.  Semisaturation failures only ever set `cell`.
    """

    ok: bool
    containment: Optional[Placement] = None
    cell: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class WitnessCertificate:
    """A validated witness: the matrix, its kind, and per-flip evidence.

    evidence maps each zero cell of the expandable run(s) to a placement that
    becomes a copy of the target once that cell is flipped; the placement
    uses the flipped cell as one of the target's ones.
    """

    matrix: Pattern
    kind: WitnessKind
    expandable_cols: range
    expandable_rows: range
    evidence: Mapping[tuple[int, int], Placement] = field(repr=False)


# ----------------------------------------------------------------------
# Expandability
# ----------------------------------------------------------------------


def is_expandable_column(
    m: Pattern, j: int, p: Pattern
) -> Optional[dict[int, Placement]]:
    """Evidence that column j of m is expandable for p, or None.

    Column j must be empty, and for every row i flipping (i, j) must create a
    copy of p through the flipped cell.  The returned map sends each row to
    such a placement.
    """
    if not (1 <= j <= m.cols):
        raise IndexError(f"column {j} outside 1..{m.cols}")
    if not m.is_empty_col(j):
        return None
    evidence: dict[int, Placement] = {}
    for i in range(1, m.rows + 1):
        hit = contains_using_cell(m.with_one(i, j), p, (i, j))
        if hit is None:
            return None
        evidence[i] = hit
    return evidence


def is_expandable_row(m: Pattern, i: int, p: Pattern) -> Optional[dict[int, Placement]]:
    """Row analogue of is_expandable_column; keys are column indices."""
    if not (1 <= i <= m.rows):
        raise IndexError(f"row {i} outside 1..{m.rows}")
    if not m.is_empty_row(i):
        return None
    evidence: dict[int, Placement] = {}
    for j in range(1, m.cols + 1):
        hit = contains_using_cell(m.with_one(i, j), p, (i, j))
        if hit is None:
            return None
        evidence[j] = hit
    return evidence


# ----------------------------------------------------------------------
# Saturation predicates
# ----------------------------------------------------------------------


def is_saturating(m: Pattern, p: Pattern) -> CheckResult:
    """m avoids p and every zero flip creates a copy.

    Zeros are tried in row-major order and the first flippable one is
    reported; a containment failure short-circuits before any flips.
    """
    hit = contains(m, p)
    if hit is not None:
        return CheckResult(False, containment=hit)
    for r in range(1, m.rows + 1):
        for c in range(1, m.cols + 1):
            if m.get(r, c):
                continue
            # m avoids p, so any copy after the flip passes through (r, c);
            # a plain containment test is enough here.
            if contains(m.with_one(r, c), p) is None:
                return CheckResult(False, cell=(r, c))
    return CheckResult(True)


def is_semisaturating(m: Pattern, p: Pattern) -> CheckResult:
    """Every zero flip creates a copy using the flipped cell as a one of p.

    m is allowed to contain p already; that is the whole point of the weaker
    notion.
    """
    for r in range(1, m.rows + 1):
        for c in range(1, m.cols + 1):
            if m.get(r, c):
                continue
            if contains_using_cell(m.with_one(r, c), p, (r, c)) is None:
                return CheckResult(False, cell=(r, c))
    return CheckResult(True)


# ----------------------------------------------------------------------
# Witness certificates
# ----------------------------------------------------------------------


def _expandable_run_cols(
    w: Pattern, p: Pattern, required: int
) -> tuple[Optional[range], dict[tuple[int, int], Placement]]:
    # Leftmost maximal run of consecutive expandable columns of length at
    # least `required`.  Expandability results are cached per column so the
    # maximal extension does not recompute.
    cache: dict[int, Optional[dict[int, Placement]]] = {}

    def expandable(j: int) -> Optional[dict[int, Placement]]:
        if j not in cache:
            cache[j] = is_expandable_column(w, j, p)
        return cache[j]

    j = 1
    while j <= w.cols:
        start = j
        while j <= w.cols and expandable(j) is not None:
            j += 1
        if j - start >= required:
            run = range(start, j)
            evidence: dict[tuple[int, int], Placement] = {}
            for jj in run:
                for i, pl in expandable(jj).items():  # type: ignore[union-attr]
                    evidence[(i, jj)] = pl
            return run, evidence
        j += 1
    return None, {}


def _expandable_run_rows(
    w: Pattern, p: Pattern, required: int
) -> tuple[Optional[range], dict[tuple[int, int], Placement]]:
    cache: dict[int, Optional[dict[int, Placement]]] = {}

    def expandable(i: int) -> Optional[dict[int, Placement]]:
        if i not in cache:
            cache[i] = is_expandable_row(w, i, p)
        return cache[i]

    i = 1
    while i <= w.rows:
        start = i
        while i <= w.rows and expandable(i) is not None:
            i += 1
        if i - start >= required:
            run = range(start, i)
            evidence: dict[tuple[int, int], Placement] = {}
            for ii in run:
                for j, pl in expandable(ii).items():  # type: ignore[union-attr]
                    evidence[(ii, j)] = pl
            return run, evidence
        i += 1
    return None, {}


def check_witness(
    w: Pattern, p: Pattern, kind: WitnessKind
) -> Optional[WitnessCertificate]:
    """Validate w as a witness for p of the requested kind.

    Horizontal witnesses need a run of consecutive expandable columns of
    length 1 + (longest run of empty columns in p); vertical witnesses the
    row analogue; full witnesses need both.  Returns the certificate with the
    leftmost (topmost) qualifying run(s), or None.
    """
    if kind not in WITNESS_KINDS:
        raise ValueError(f"unknown witness kind {kind!r}")
    if contains(w, p) is not None:
        return None
    col_range: range = range(0)
    row_range: range = range(0)
    evidence: dict[tuple[int, int], Placement] = {}
    if kind in ("horizontal", "full"):
        need = 1 + max_empty_col_run(p)
        run, ev = _expandable_run_cols(w, p, need)
        if run is None:
            return None
        col_range = run
        evidence.update(ev)
    if kind in ("vertical", "full"):
        need = 1 + max_empty_row_run(p)
        run, ev = _expandable_run_rows(w, p, need)
        if run is None:
            return None
        row_range = run
        evidence.update(ev)
    return WitnessCertificate(
        matrix=w,
        kind=kind,
        expandable_cols=col_range,
        expandable_rows=row_range,
        evidence=MappingProxyType(evidence),
    )


def _fmt_range(r: range) -> str:
    if len(r) == 0:
        return "(none)"
    return f"{r.start}..{r.stop - 1}"


def certificate_report(cert: WitnessCertificate) -> str:
    """Plain-text rendering: grid, kind, ranges, one line per recorded flip."""
    from satmat.pattern import serialize_pattern

    lines = [serialize_pattern(cert.matrix).rstrip("\n")]
    lines.append(f"kind: {cert.kind}")
    lines.append(f"expandable cols: {_fmt_range(cert.expandable_cols)}")
    lines.append(f"expandable rows: {_fmt_range(cert.expandable_rows)}")
    for (i, j) in sorted(cert.evidence):
        pl = cert.evidence[(i, j)]
        lines.append(
            f"flip ({i},{j}) → rows {list(pl.row_choice)} cols {list(pl.col_choice)}"
        )
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Completion and minimization
# ----------------------------------------------------------------------


def complete_to_saturated(m: Pattern, p: Pattern) -> Pattern:
    """Greedy row-major completion of an avoiding matrix to a saturated one.

    One pass suffices: a rejected flip created a copy against a submatrix of
    the final result, and copies survive the later additions.
    """
    hit = contains(m, p)
    if hit is not None:
        raise ContainsPatternError(hit)
    cur = m
    for r in range(1, m.rows + 1):
        for c in range(1, m.cols + 1):
            if cur.get(r, c):
                continue
            flipped = cur.with_one(r, c)
            if contains(flipped, p) is None:
                cur = flipped
    return cur


def minimize_witness(w: Pattern, p: Pattern, kind: WitnessKind) -> Pattern:
    """Shrink w to a witness from which no single line can be deleted.

    Deletion attempts go rows last-index-first, then columns last-index-first,
    restarting after every successful deletion, so the result is a
    deterministic submatrix of w.
    """
    if check_witness(w, p, kind) is None:
        raise ValueError("input is not a witness of the requested kind")
    cur = w
    while True:
        shrunk = None
        if cur.rows > 1:
            for r in range(cur.rows, 0, -1):
                cand = cur.submatrix(
                    [x for x in range(1, cur.rows + 1) if x != r],
                    range(1, cur.cols + 1),
                )
                if check_witness(cand, p, kind) is not None:
                    shrunk = cand
                    break
        if shrunk is None and cur.cols > 1:
            for c in range(cur.cols, 0, -1):
                cand = cur.submatrix(
                    range(1, cur.rows + 1),
                    [x for x in range(1, cur.cols + 1) if x != c],
                )
                if check_witness(cand, p, kind) is not None:
                    shrunk = cand
                    break
        if shrunk is None:
            return cur
        cur = shrunk
