"""Dense 0-1 patterns and order-preserving containment.

A pattern is a rectangular 0-1 matrix.  A host matrix M contains a pattern P
when some choice of P.rows rows and P.cols columns of M, each taken in
increasing order, dominates P entrywise: wherever P has a one, the selected
cell of M is a one too.  Extra ones in M are allowed.  Containment is the
basic relation everything else in this package builds on: saturation asks for
matrices that avoid P but cannot keep avoiding it under any single zero flip,
and witnesses are avoiding matrices with stronger local structure.

Rows and columns are indexed from 1 in every public signature.  Internally a
pattern keeps one machine word per row (bit c-1 set when column c holds a
one), which keeps the containment inner loops branch-light; the price is a
hard cap of 64 on each axis, far beyond anything the constructions in this
package produce.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Callable, Iterable, Iterator, Literal, Optional

MAX_AXIS = 64

ORACLE_GUARD = 5_000_000


class PatternParseError(ValueError):
    """Malformed pattern document; the message names the offending line."""


class OracleSizeError(RuntimeError):
    """A brute-force enumeration would exceed its size guard."""


# ======================================================================
# The pattern type
# ======================================================================


@dataclass(frozen=True)
class Pattern:
    """An immutable 0-1 matrix with per-row bitmask storage."""

    rows: int
    cols: int
    row_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (1 <= self.rows <= MAX_AXIS):
            raise ValueError(f"row count {self.rows} outside 1..{MAX_AXIS}")
        if not (1 <= self.cols <= MAX_AXIS):
            raise ValueError(f"column count {self.cols} outside 1..{MAX_AXIS}")
        if len(self.row_masks) != self.rows:
            raise ValueError("row_masks length disagrees with row count")
        full = (1 << self.cols) - 1
        for i, m in enumerate(self.row_masks, start=1):
            if m & ~full:
                raise ValueError(f"row {i} has a one outside columns 1..{self.cols}")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def from_ones(rows: int, cols: int, ones: Iterable[tuple[int, int]]) -> "Pattern":
        masks = [0] * rows
        for r, c in ones:
            if not (1 <= r <= rows and 1 <= c <= cols):
                raise ValueError(f"one at ({r},{c}) outside {rows}x{cols}")
            masks[r - 1] |= 1 << (c - 1)
        return Pattern(rows, cols, tuple(masks))

    @staticmethod
    def from_rows(grid: Iterable[Iterable[int]]) -> "Pattern":
        rows = [list(row) for row in grid]
        if not rows:
            raise ValueError("empty grid")
        cols = len(rows[0])
        masks = []
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged grid")
            m = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"grid entry {v!r} is not 0 or 1")
                m |= v << j
            masks.append(m)
        return Pattern(len(rows), cols, tuple(masks))

    @staticmethod
    def empty(rows: int, cols: int) -> "Pattern":
        return Pattern(rows, cols, (0,) * rows)

    @staticmethod
    def all_ones(rows: int, cols: int) -> "Pattern":
        return Pattern(rows, cols, ((1 << cols) - 1,) * rows)

    @staticmethod
    def identity(n: int) -> "Pattern":
        return Pattern(n, n, tuple(1 << i for i in range(n)))

    # ---- cell access --------------------------------------------------

    @cached_property
    def ones(self) -> frozenset[tuple[int, int]]:
        out = set()
        for i, m in enumerate(self.row_masks, start=1):
            while m:
                low = m & -m
                out.add((i, low.bit_length()))
                m ^= low
        return frozenset(out)

    @cached_property
    def ones_sorted(self) -> tuple[tuple[int, int], ...]:
        """Ones in row-major order; the deterministic iteration everywhere."""
        return tuple(sorted(self.ones))

    @cached_property
    def col_masks(self) -> tuple[int, ...]:
        out = [0] * self.cols
        for i, m in enumerate(self.row_masks):
            for j in range(self.cols):
                if m >> j & 1:
                    out[j] |= 1 << i
        return tuple(out)

    @property
    def weight(self) -> int:
        return sum(m.bit_count() for m in self.row_masks)

    def get(self, r: int, c: int) -> bool:
        if not (1 <= r <= self.rows and 1 <= c <= self.cols):
            raise IndexError(f"cell ({r},{c}) outside {self.rows}x{self.cols}")
        return bool(self.row_masks[r - 1] >> (c - 1) & 1)

    def with_one(self, r: int, c: int) -> "Pattern":
        masks = list(self.row_masks)
        masks[r - 1] |= 1 << (c - 1)
        return Pattern(self.rows, self.cols, tuple(masks))

    def without_one(self, r: int, c: int) -> "Pattern":
        masks = list(self.row_masks)
        masks[r - 1] &= ~(1 << (c - 1))
        return Pattern(self.rows, self.cols, tuple(masks))

    def is_empty_row(self, r: int) -> bool:
        return self.row_masks[r - 1] == 0

    def is_empty_col(self, c: int) -> bool:
        return all(m >> (c - 1) & 1 == 0 for m in self.row_masks)

    def submatrix(self, keep_rows: Iterable[int], keep_cols: Iterable[int]) -> "Pattern":
        """Restriction to the given 1-based rows and columns, kept in order."""
        kr = sorted(set(keep_rows))
        kc = sorted(set(keep_cols))
        if not kr or not kc:
            raise ValueError("submatrix needs at least one row and one column")
        ones = []
        for a, r in enumerate(kr, start=1):
            for b, c in enumerate(kc, start=1):
                if self.get(r, c):
                    ones.append((a, b))
        return Pattern.from_ones(len(kr), len(kc), ones)

    def to_grid(self) -> list[list[int]]:
        return [[(m >> j) & 1 for j in range(self.cols)] for m in self.row_masks]

    def __str__(self) -> str:
        return serialize_pattern(self).rstrip("\n")


def weight(p: Pattern) -> int:
    return p.weight


# ======================================================================
# Text format
# ======================================================================

_ZERO_CHARS = {".", "0"}
_ONE_CHARS = {"1", "•"}  # '1' or a bullet


def parse_pattern(text: str) -> Pattern:
    """Parse a grid document: '.'/'0' for zero, '1'/'•' for one.

    Lines starting with '#' are comments.  All grid lines must have equal
    length; violations raise :class:`PatternParseError` naming the line.
    """
    grid_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#"):
            continue
        grid_lines.append((lineno, raw))
    if not grid_lines:
        raise PatternParseError("line 1: document contains no grid lines")
    width = len(grid_lines[0][1])
    if width == 0:
        raise PatternParseError(f"line {grid_lines[0][0]}: empty grid line")
    if len(grid_lines) > MAX_AXIS or width > MAX_AXIS:
        raise PatternParseError(
            f"line {grid_lines[0][0]}: grid exceeds the {MAX_AXIS}x{MAX_AXIS} cap"
        )
    ones: list[tuple[int, int]] = []
    for r, (lineno, line) in enumerate(grid_lines, start=1):
        if len(line) != width:
            raise PatternParseError(
                f"line {lineno}: expected width {width}, got {len(line)}"
            )
        for c, ch in enumerate(line, start=1):
            if ch in _ONE_CHARS:
                ones.append((r, c))
            elif ch not in _ZERO_CHARS:
                raise PatternParseError(
                    f"line {lineno}, column {c}: unexpected character {ch!r}"
                )
    return Pattern.from_ones(len(grid_lines), width, ones)


def serialize_pattern(p: Pattern) -> str:
    """Inverse of parse_pattern: '.'/'1' rows, each newline-terminated."""
    rows = []
    for m in p.row_masks:
        rows.append("".join("1" if m >> j & 1 else "." for j in range(p.cols)))
    return "\n".join(rows) + "\n"


# ======================================================================
# Symmetries
# ======================================================================
#
# The dihedral group of the rectangle acts on patterns; containment and all
# saturation notions are equivariant under it, which the classifier uses to
# close its recognizers under symmetry.


def transpose(p: Pattern) -> Pattern:
    return Pattern(p.cols, p.rows, p.col_masks)


def reflect_h(p: Pattern) -> Pattern:
    """Reflect across the horizontal axis: top row becomes bottom row."""
    return Pattern(p.rows, p.cols, tuple(reversed(p.row_masks)))


def reflect_v(p: Pattern) -> Pattern:
    """Reflect across the vertical axis: first column becomes last."""
    masks = []
    for m in p.row_masks:
        rev = 0
        for j in range(p.cols):
            if m >> j & 1:
                rev |= 1 << (p.cols - 1 - j)
        masks.append(rev)
    return Pattern(p.rows, p.cols, tuple(masks))


def rotate90(p: Pattern) -> Pattern:
    """Rotate a quarter turn clockwise: (r, c) goes to (c, rows - r + 1)."""
    return reflect_v(transpose(p))


def rotate180(p: Pattern) -> Pattern:
    return rotate90(rotate90(p))


def antitranspose(p: Pattern) -> Pattern:
    """Transpose across the antidiagonal."""
    return transpose(rotate180(p))


SYMMETRIES: dict[str, Callable[[Pattern], Pattern]] = {
    "identity": lambda p: p,
    "rot90": rotate90,
    "rot180": rotate180,
    "rot270": lambda p: rotate90(rotate180(p)),
    "transpose": transpose,
    "antitranspose": antitranspose,
    "reflect_h": reflect_h,
    "reflect_v": reflect_v,
}


def all_symmetries(p: Pattern) -> list[tuple[str, Pattern]]:
    """The eight dihedral images of p, named, duplicates included."""
    return [(name, f(p)) for name, f in SYMMETRIES.items()]


# ======================================================================
# Structural edits
# ======================================================================


def insert_empty_column(p: Pattern, i: int) -> Pattern:
    """Insert an all-zero column so that it becomes column i (1-based)."""
    if not (1 <= i <= p.cols + 1):
        raise ValueError(f"column index {i} outside 1..{p.cols + 1}")
    low = (1 << (i - 1)) - 1
    masks = tuple((m & low) | ((m & ~low) << 1) for m in p.row_masks)
    return Pattern(p.rows, p.cols + 1, masks)


def insert_empty_row(p: Pattern, i: int) -> Pattern:
    if not (1 <= i <= p.rows + 1):
        raise ValueError(f"row index {i} outside 1..{p.rows + 1}")
    masks = list(p.row_masks)
    masks.insert(i - 1, 0)
    return Pattern(p.rows + 1, p.cols, tuple(masks))


def prepend_allones_column(p: Pattern) -> Pattern:
    masks = tuple((m << 1) | 1 for m in p.row_masks)
    return Pattern(p.rows, p.cols + 1, masks)


def kronecker(p: Pattern, q: Pattern) -> Pattern:
    """Kronecker product: block (a, c) of the result is q when p has a one
    at (a, c) and all-zero otherwise."""
    rows, cols = p.rows * q.rows, p.cols * q.cols
    ones = []
    for (a, c) in p.ones_sorted:
        for (b, d) in q.ones_sorted:
            ones.append((q.rows * (a - 1) + b, q.cols * (c - 1) + d))
    return Pattern.from_ones(rows, cols, ones)


def max_empty_col_run(p: Pattern) -> int:
    """Longest run of consecutive all-zero columns (0 if none)."""
    best = run = 0
    for c in range(1, p.cols + 1):
        run = run + 1 if p.is_empty_col(c) else 0
        best = max(best, run)
    return best


def max_empty_row_run(p: Pattern) -> int:
    best = run = 0
    for r in range(1, p.rows + 1):
        run = run + 1 if p.is_empty_row(r) else 0
        best = max(best, run)
    return best


# ======================================================================
# Placements and containment
# ======================================================================


@dataclass(frozen=True, order=True)
class Placement:
    """A choice of host rows and columns, both strictly increasing.

    Ordering is lexicographic by row choice then column choice, which is the
    tie-break every search in this package uses.
    """

    row_choice: tuple[int, ...]
    col_choice: tuple[int, ...]

    def cells(self, p: Pattern) -> frozenset[tuple[int, int]]:
        """Host cells that p's ones land on under this placement."""
        if len(self.row_choice) != p.rows or len(self.col_choice) != p.cols:
            raise ValueError("placement shape disagrees with pattern")
        return frozenset(
            (self.row_choice[r - 1], self.col_choice[c - 1]) for (r, c) in p.ones
        )


def enumerate_placements(m: int, n: int, p: Pattern) -> Iterator[Placement]:
    """Stream every placement of p's shape in an m x n host, lexicographically.

    Exactly C(m, p.rows) * C(n, p.cols) items; callers that need the copies of
    p filter by domination themselves.
    """
    if p.rows > m or p.cols > n:
        return
    for rows in itertools.combinations(range(1, m + 1), p.rows):
        for cols in itertools.combinations(range(1, n + 1), p.cols):
            yield Placement(rows, cols)


def placement_count(m: int, n: int, p: Pattern) -> int:
    if p.rows > m or p.cols > n:
        return 0
    return comb(m, p.rows) * comb(n, p.cols)


def _col_needs(p: Pattern) -> tuple[int, ...]:
    # For each pattern column, the set of pattern rows (as a bitmask over
    # 0-based pattern rows) that put a one in it.
    needs = []
    for c in range(p.cols):
        m = 0
        for r in range(p.rows):
            if p.row_masks[r] >> c & 1:
                m |= 1 << r
        needs.append(m)
    return tuple(needs)


def _greedy_cols(
    host_col_masks: tuple[int, ...],
    needs: tuple[int, ...],
    row_choice: tuple[int, ...],
    n_cols: int,
) -> Optional[tuple[int, ...]]:
    # Greedy leftmost column matching.  If any column assignment exists for
    # this row choice, the greedy one does and is lexicographically least: a
    # valid assignment's first column can always be swapped down to the first
    # feasible column without disturbing the rest, and induction handles the
    # suffix.  Feasibility per column is a superset test on bitmasks.
    host_need_masks = []
    for need in needs:
        hm = 0
        b = need
        while b:
            low = b & -b
            hm |= 1 << (row_choice[low.bit_length() - 1] - 1)
            b ^= low
        host_need_masks.append(hm)
    k = len(needs)
    chosen: list[int] = []
    c = 1
    for idx, hm in enumerate(host_need_masks):
        # Columns after this pattern column still need room on the right.
        last_ok = n_cols - (k - idx - 1)
        while c <= last_ok and (host_col_masks[c - 1] & hm) != hm:
            c += 1
        if c > last_ok:
            return None
        chosen.append(c)
        c += 1
    return tuple(chosen)


def contains(host: Pattern, p: Pattern) -> Optional[Placement]:
    """Lexicographically least placement of p in host, or None.

    Backtracks over the row choice in increasing order and runs the greedy
    column matcher at each leaf, so the first success is the overall least
    placement by (row_choice, col_choice).
    """
    if p.rows > host.rows or p.cols > host.cols:
        return None
    needs = _col_needs(p)
    hcm = host.col_masks
    k = p.rows

    def rec(next_row: int, start: int, prefix: list[int]) -> Optional[Placement]:
        if next_row == k:
            cols = _greedy_cols(hcm, needs, tuple(prefix), host.cols)
            if cols is not None:
                return Placement(tuple(prefix), cols)
            return None
        for r in range(start, host.rows - (k - next_row) + 2):
            prefix.append(r)
            hit = rec(next_row + 1, r + 1, prefix)
            if hit is not None:
                return hit
            prefix.pop()
        return None

    return rec(0, 1, [])


def _greedy_cols_pinned(
    host_col_masks: tuple[int, ...],
    needs: tuple[int, ...],
    row_choice: tuple[int, ...],
    n_cols: int,
    pat_col: int,
    host_col: int,
) -> Optional[tuple[int, ...]]:
    # Like _greedy_cols but pattern column pat_col is pinned to host_col;
    # the prefix must finish strictly left of the pin and the suffix starts
    # strictly right of it.
    host_need_masks = []
    for need in needs:
        hm = 0
        b = need
        while b:
            low = b & -b
            hm |= 1 << (row_choice[low.bit_length() - 1] - 1)
            b ^= low
        host_need_masks.append(hm)
    k = len(needs)
    if (host_col_masks[host_col - 1] & host_need_masks[pat_col - 1]) != host_need_masks[
        pat_col - 1
    ]:
        return None
    chosen: list[int] = []
    c = 1
    for idx in range(pat_col - 1):
        hm = host_need_masks[idx]
        last_ok = host_col - 1 - (pat_col - 2 - idx)
        while c <= last_ok and (host_col_masks[c - 1] & hm) != hm:
            c += 1
        if c > last_ok:
            return None
        chosen.append(c)
        c += 1
    chosen.append(host_col)
    c = host_col + 1
    for idx in range(pat_col, k):
        hm = host_need_masks[idx]
        last_ok = n_cols - (k - idx - 1)
        while c <= last_ok and (host_col_masks[c - 1] & hm) != hm:
            c += 1
        if c > last_ok:
            return None
        chosen.append(c)
        c += 1
    return tuple(chosen)


def contains_with_pin(
    host: Pattern,
    p: Pattern,
    pattern_one: tuple[int, int],
    host_cell: tuple[int, int],
) -> Optional[Placement]:
    """Least placement mapping the given one of p onto the given host cell.

    The pinned pattern entry must be a one of p; the host cell must itself be
    a one of host (callers flip first, then search).
    """
    a, b = pattern_one
    i, j = host_cell
    if not p.get(a, b):
        raise ValueError(f"({a},{b}) is not a one of the pattern")
    if not (1 <= i <= host.rows and 1 <= j <= host.cols):
        raise IndexError(f"host cell ({i},{j}) out of range")
    if p.rows > host.rows or p.cols > host.cols:
        return None
    # Rows before a must fit under i, rows after must fit above it.
    if a - 1 > i - 1 or p.rows - a > host.rows - i:
        return None
    if b - 1 > j - 1 or p.cols - b > host.cols - j:
        return None
    needs = _col_needs(p)
    hcm = host.col_masks
    k = p.rows

    def rec(next_row: int, start: int, prefix: list[int]) -> Optional[Placement]:
        if next_row == k:
            cols = _greedy_cols_pinned(hcm, needs, tuple(prefix), host.cols, b, j)
            if cols is not None:
                return Placement(tuple(prefix), cols)
            return None
        if next_row == a - 1:
            prefix.append(i)
            hit = rec(next_row + 1, i + 1, prefix)
            if hit is not None:
                return hit
            prefix.pop()
            return None
        # Stay inside the band this pattern row is allowed to land in.
        hi = i - (a - 1 - next_row) if next_row < a - 1 else host.rows - (k - next_row) + 1
        for r in range(start, hi + 1):
            prefix.append(r)
            hit = rec(next_row + 1, r + 1, prefix)
            if hit is not None:
                return hit
            prefix.pop()
        return None

    return rec(0, 1 if a > 1 else i, [])


def contains_using_cell(
    host: Pattern, p: Pattern, host_cell: tuple[int, int]
) -> Optional[Placement]:
    """Least placement in which the host cell plays some one of p."""
    best: Optional[Placement] = None
    for one in p.ones_sorted:
        hit = contains_with_pin(host, p, one, host_cell)
        if hit is not None and (best is None or hit < best):
            best = hit
    return best


def contains_oracle(host: Pattern, p: Pattern) -> bool:
    """Containment by full enumeration; the independent check for contains.

    Deliberately shares no search code with contains: walks every row subset
    and column subset with itertools and tests domination cell by cell.
    """
    if p.rows > host.rows or p.cols > host.cols:
        return False
    total = comb(host.rows, p.rows) * comb(host.cols, p.cols)
    if total > ORACLE_GUARD:
        raise OracleSizeError(
            f"{total} subset pairs exceed the {ORACLE_GUARD} oracle guard"
        )
    grid = host.to_grid()
    pgrid = p.to_grid()
    for rows in itertools.combinations(range(host.rows), p.rows):
        for cols in itertools.combinations(range(host.cols), p.cols):
            ok = True
            for a in range(p.rows):
                for bb in range(p.cols):
                    if pgrid[a][bb] == 1 and grid[rows[a]][cols[bb]] == 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
    return False


# ======================================================================
# Decomposability
# ======================================================================


DecompositionKind = Literal["diagonal", "antidiagonal"]


@dataclass(frozen=True)
class Decomposition:
    """A block 2x2 split with both off-pattern blocks all-zero.

    row_split and col_split count the rows/columns of the top and left bands.
    kind 'diagonal' puts the nonzero blocks top-left and bottom-right,
    'antidiagonal' top-right and bottom-left.
    """

    row_split: int
    col_split: int
    kind: DecompositionKind


def _region_weight(p: Pattern, r1: int, r2: int, c1: int, c2: int) -> int:
    # Weight of rows r1..r2, cols c1..c2 (1-based, inclusive); empty ranges
    # count zero so degenerate bands are painless.
    if r1 > r2 or c1 > c2:
        return 0
    colmask = ((1 << c2) - 1) & ~((1 << (c1 - 1)) - 1)
    return sum((p.row_masks[r - 1] & colmask).bit_count() for r in range(r1, r2 + 1))


def is_decomposable(p: Pattern) -> Optional[Decomposition]:
    """First (row, col, kind) block split with both blocks nonzero, else None.

    Scans row splits outermost, then column splits, diagonal before
    antidiagonal, so the returned witness is deterministic.
    """
    R, C = p.rows, p.cols
    for r in range(1, R):
        for c in range(1, C):
            if (
                _region_weight(p, 1, r, c + 1, C) == 0
                and _region_weight(p, r + 1, R, 1, c) == 0
                and _region_weight(p, 1, r, 1, c) > 0
                and _region_weight(p, r + 1, R, c + 1, C) > 0
            ):
                return Decomposition(r, c, "diagonal")
            if (
                _region_weight(p, 1, r, 1, c) == 0
                and _region_weight(p, r + 1, R, c + 1, C) == 0
                and _region_weight(p, 1, r, c + 1, C) > 0
                and _region_weight(p, r + 1, R, 1, c) > 0
            ):
                return Decomposition(r, c, "antidiagonal")
    return None


def is_strongly_indecomposable(p: Pattern) -> bool:
    """No cross-shaped 3x3 block layout with at most one empty arm.

    The layout places bands P1 (top middle), P2 (middle left), P3 (middle
    right), P4 (bottom middle) around an all-zero frame; flank bands may have
    zero width or height, and a block with a zero dimension counts as empty.
    Defined for indecomposable patterns; decomposable input returns False.
    """
    if is_decomposable(p) is not None:
        return False
    R, C = p.rows, p.cols
    for r1 in range(0, R + 1):
        for r2 in range(r1, R + 1):
            for c1 in range(0, C + 1):
                for c2 in range(c1, C + 1):
                    # The five zero zones of the cross shape.
                    if _region_weight(p, 1, r1, 1, c1):
                        continue
                    if _region_weight(p, 1, r1, c2 + 1, C):
                        continue
                    if _region_weight(p, r1 + 1, r2, c1 + 1, c2):
                        continue
                    if _region_weight(p, r2 + 1, R, 1, c1):
                        continue
                    if _region_weight(p, r2 + 1, R, c2 + 1, C):
                        continue
                    arms = (
                        _region_weight(p, 1, r1, c1 + 1, c2),
                        _region_weight(p, r1 + 1, r2, 1, c1),
                        _region_weight(p, r1 + 1, r2, c2 + 1, C),
                        _region_weight(p, r2 + 1, R, c1 + 1, c2),
                    )
                    if sum(1 for w in arms if w == 0) <= 1:
                        return False
    return True
