"""Boundedness classification of saturation and semisaturation functions.

Every pattern has a saturation function that is either bounded or linear in
the matrix size; semisaturation obeys the same dichotomy and is decided by a
purely syntactic test on the pattern.  This module collects the known
sufficient conditions into recognizers and aggregates them into a single
verdict with a stable reason tag.  The recognizers deliberately implement the
one-orientation definitions; the public predicates close them under the eight
dihedral symmetries, under which every saturation notion is invariant.

The aggregate verdict is conservative: "bounded" and "linear" are only
reported through a proved rule, everything else stays "unknown".  In
particular the q3-like family proves that no vertical witness exists, which
settles fixed-row-count saturation but promotes to a square-matrix verdict
only for the two catalog patterns the promotion is worked out for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from satmat.pattern import (
    Pattern,
    all_symmetries,
    is_decomposable,
)
from satmat.saturate import WitnessCertificate, check_witness

GrowthClass = Literal["bounded", "linear"]

VerdictStatus = Literal["bounded", "linear", "unknown"]

VerdictReason = Literal[
    "ssat-linear",
    "decomposable",
    "q1-like",
    "q2-like",
    "q3-like-fixed-dim",
    "permutation-indecomposable",
    "corpus-witness",
    "none",
]

REASON_DESCRIPTIONS: dict[str, str] = {
    "ssat-linear": "semisaturation is linear, and saturation dominates it",
    "decomposable": "block-diagonal or block-antidiagonal split forces linear saturation",
    "q1-like": "q1-like: boundary ones t, b, l, r with the matched chirality",
    "q2-like": "q2-like: one corner one whose deletion leaves a q1-like pattern",
    "q3-like-fixed-dim": "q3-like: no vertical witness exists, so saturation is linear",
    "permutation-indecomposable": "indecomposable permutation matrices have bounded saturation",
    "corpus-witness": "a stored full witness for this pattern re-validated",
    "none": "no implemented rule applies",
}


@dataclass(frozen=True)
class SatVerdict:
    """Classification outcome: status, the rule that fired, optional evidence."""

    status: VerdictStatus
    reason: VerdictReason
    certificate: Optional[object] = None
    notes: tuple[str, ...] = ()


# ----------------------------------------------------------------------
# Semisaturation (syntactic, complete)
# ----------------------------------------------------------------------


def _alone_in_row(p: Pattern, r: int, c: int) -> bool:
    return p.row_masks[r - 1] == 1 << (c - 1)


def _alone_in_col(p: Pattern, r: int, c: int) -> bool:
    return p.col_masks[c - 1] == 1 << (r - 1)


def ssat_class(p: Pattern) -> GrowthClass:
    """Dichotomy for square semisaturation: bounded iff all three hold.

    (1) the first and last columns each contain a one that is alone in its
    row, (2) the first and last rows each contain a one alone in its column,
    (3) some one is alone in both its row and its column.
    """
    if p.weight == 0:
        raise ValueError("the all-zero pattern has no semisaturation class")
    col_ok = all(
        any(p.get(r, c) and _alone_in_row(p, r, c) for r in range(1, p.rows + 1))
        for c in (1, p.cols)
    )
    row_ok = all(
        any(p.get(r, c) and _alone_in_col(p, r, c) for c in range(1, p.cols + 1))
        for r in (1, p.rows)
    )
    both_ok = any(
        _alone_in_row(p, r, c) and _alone_in_col(p, r, c) for (r, c) in p.ones
    )
    return "bounded" if (col_ok and row_ok and both_ok) else "linear"


def ssat_fixed_class(p: Pattern) -> GrowthClass:
    """Semisaturation with the row count held fixed and columns growing.

    Bounded iff the top and bottom rows each contain a one that is alone in
    its column.  (Transpose the pattern for the fixed-column version.)
    """
    if p.weight == 0:
        raise ValueError("the all-zero pattern has no semisaturation class")
    ok = all(
        any(p.get(r, c) and _alone_in_col(p, r, c) for c in range(1, p.cols + 1))
        for r in (1, p.rows)
    )
    return "bounded" if ok else "linear"


# ----------------------------------------------------------------------
# Family recognizers
# ----------------------------------------------------------------------


def is_permutation(p: Pattern) -> bool:
    return (
        p.rows == p.cols
        and all(m.bit_count() == 1 for m in p.row_masks)
        and all(m.bit_count() == 1 for m in p.col_masks)
    )


def _single_one_in_row(p: Pattern, r: int) -> Optional[tuple[int, int]]:
    m = p.row_masks[r - 1]
    if m.bit_count() != 1:
        return None
    return (r, m.bit_length())


def _single_one_in_col(p: Pattern, c: int) -> Optional[tuple[int, int]]:
    m = p.col_masks[c - 1]
    if m.bit_count() != 1:
        return None
    return (m.bit_length(), c)


def is_q1_like_raw(p: Pattern) -> bool:
    """One-orientation q1-like test.

    Needs exactly one one in each of the top row, bottom row, first column,
    last column (t, b, l, r, all distinct cells), with t and b alone in their
    columns, l and r alone in their rows, and the chirality condition:
    t left of b with r above l, or t right of b with r below l.
    """
    t = _single_one_in_row(p, 1)
    b = _single_one_in_row(p, p.rows)
    l = _single_one_in_col(p, 1)
    r = _single_one_in_col(p, p.cols)
    if t is None or b is None or l is None or r is None:
        return False
    if len({t, b, l, r}) != 4:
        return False
    if not (_alone_in_col(p, *t) and _alone_in_col(p, *b)):
        return False
    if not (_alone_in_row(p, *l) and _alone_in_row(p, *r)):
        return False
    return (t[1] < b[1] and r[0] < l[0]) or (t[1] > b[1] and r[0] > l[0])


def is_q2_like_raw(p: Pattern) -> bool:
    """Exactly one corner holds a one and deleting it leaves a q1-like pattern."""
    corners = [(1, 1), (1, p.cols), (p.rows, 1), (p.rows, p.cols)]
    # A 1x1 or single-line pattern repeats corner cells; dedupe first.
    hot = [cell for cell in dict.fromkeys(corners) if p.get(*cell)]
    if len(hot) != 1:
        return False
    return is_q1_like_raw(p.without_one(*hot[0]))


def is_q3_like_raw(p: Pattern) -> bool:
    """One-orientation q3-like test.

    (i) ones at (1,2), (2,1), (3, last column), each alone in its row,
    (ii) (1,2) alone in column 2, (iii) every row after the third has at
    least two ones.
    """
    if p.rows < 3 or p.cols < 2:
        return False
    if not (
        _alone_in_row(p, 1, 2)
        and _alone_in_row(p, 2, 1)
        and _alone_in_row(p, 3, p.cols)
    ):
        return False
    if not _alone_in_col(p, 1, 2):
        return False
    return all(p.row_masks[r - 1].bit_count() >= 2 for r in range(4, p.rows + 1))


def _closed(raw, p: Pattern) -> bool:
    return any(raw(img) for _, img in all_symmetries(p))


def is_q1_like(p: Pattern) -> bool:
    """q1-like up to the eight dihedral symmetries."""
    return _closed(is_q1_like_raw, p)


def is_q2_like(p: Pattern) -> bool:
    """q2-like up to the eight dihedral symmetries."""
    return _closed(is_q2_like_raw, p)


def is_q3_like(p: Pattern) -> bool:
    """q3-like up to the eight dihedral symmetries."""
    return _closed(is_q3_like_raw, p)


# ----------------------------------------------------------------------
# Aggregate verdict
# ----------------------------------------------------------------------

_Q3_NOTE = (
    "q3-like: no vertical witness exists, so saturation with any fixed "
    "row count is linear in the column count"
)


def _corpus_full_witness(p: Pattern) -> Optional[WitnessCertificate]:
    # Imported lazily: the catalog is data plus validators and must stay
    # importable without the classifier.
    from satmat.corpus import catalog

    for entry in catalog().values():
        if entry.full_witness is None:
            continue
        for name, img in all_symmetries(entry.pattern):
            if img != p:
                continue
            from satmat.pattern import SYMMETRIES

            cert = check_witness(SYMMETRIES[name](entry.full_witness), p, "full")
            if cert is not None:
                return cert
    return None


def _is_catalog_q3_family(p: Pattern) -> bool:
    from satmat.corpus import catalog

    cat = catalog()
    for key in ("q3", "q5"):
        if key in cat and any(img == p for _, img in all_symmetries(cat[key].pattern)):
            return True
    return False


def sat_verdict(p: Pattern) -> SatVerdict:
    """Classify sat(n, p) by the implemented rules, in fixed precedence.

    Order: linear semisaturation, decomposability, permutation matrices,
    q1-like, q2-like, re-validated catalog witnesses, then the scoped q3-like
    conclusion.  Anything else is unknown.
    """
    if p.weight == 0:
        raise ValueError("the all-zero pattern has no saturation class")
    if ssat_class(p) == "linear":
        return SatVerdict("linear", "ssat-linear")
    decomp = is_decomposable(p)
    if decomp is not None:
        return SatVerdict("linear", "decomposable", certificate=decomp)
    if is_permutation(p):
        # Decomposable permutations were already caught above.
        return SatVerdict("bounded", "permutation-indecomposable")
    if is_q1_like(p):
        return SatVerdict("bounded", "q1-like")
    if is_q2_like(p):
        return SatVerdict("bounded", "q2-like")
    cert = _corpus_full_witness(p)
    if cert is not None:
        return SatVerdict("bounded", "corpus-witness", certificate=cert)
    if is_q3_like(p):
        if _is_catalog_q3_family(p):
            return SatVerdict("linear", "q3-like-fixed-dim", notes=(_Q3_NOTE,))
        return SatVerdict("unknown", "none", notes=(_Q3_NOTE,))
    return SatVerdict("unknown", "none")
