"""Exact saturation values, the ILP emitter, and bounded witness search.

The solver is a two-phase branch-and-bound over the host cells in row-major
order.  The y-variables of the integer program are eliminated: y is a forced
function of f, so a leaf is feasible exactly when the host avoids the pattern
and every zero cell admits a placement whose other pattern cells are all
ones.  Phase one branches one-first to find the minimum weight; phase two
re-searches zero-first under that weight bound, so the first feasible leaf it
reaches is the lexicographically least optimum (row-major bit order).

The emitted text model keeps the y-variables so external integer-program
solvers exercise the original formulation, with the two strict inequalities
rewritten over integers.

decide_fixed_rows is a complete search for a horizontal witness with a fixed
row count.  It relies on a reduction: any horizontal witness shrinks, by
deleting columns used by no flip copy, to one with at most (l-1)*m0 + 1
columns in which the expandable column is the only empty column, and where
every flip plays a pattern one that is alone in its pattern column.
Searching that canonical class exhaustively is therefore a proof of
nonexistence.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from satmat.pattern import (
    OracleSizeError,
    Pattern,
    contains_with_pin,
    enumerate_placements,
)
from satmat.saturate import (
    check_witness,
    complete_to_saturated,
    is_expandable_column,
    is_saturating,
)


class BudgetExceededError(RuntimeError):
    """Search ran out of node budget before producing a complete answer."""

    def __init__(self, message: str, nodes: int):
        super().__init__(message)
        self.nodes = nodes


def _env_budget() -> Optional[int]:
    raw = os.environ.get("SATMAT_BUDGET")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"SATMAT_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError("SATMAT_BUDGET must be positive")
    return value


GUARANTEED_CELLS = 30


@dataclass(frozen=True)
class ExactResult:
    """Outcome of sat_exact.  complete=False means the budget ran out and
    min_weight is only the best upper bound seen."""

    min_weight: int
    optimum: Pattern
    nodes_explored: int
    elapsed: float
    complete: bool = True


# ======================================================================
# Branch and bound core
# ======================================================================


class _SatSearch:
    """Cell-indexed placement tables plus the subtree search."""

    def __init__(self, m: int, n: int, p: Pattern):
        self.m = m
        self.n = n
        self.p = p
        self.cells = m * n
        placements = list(enumerate_placements(m, n, p))
        self.placement_masks: list[int] = []
        for pl in placements:
            mask = 0
            for (i, j) in pl.cells(p):
                mask |= 1 << ((i - 1) * n + (j - 1))
            self.placement_masks.append(mask)
        self.by_cell: list[list[int]] = [[] for _ in range(self.cells)]
        for idx, mask in enumerate(self.placement_masks):
            mm = mask
            while mm:
                low = mm & -mm
                self.by_cell[low.bit_length() - 1].append(idx)
                mm ^= low
        # cells in no placement can never gain a copy by flipping, so any
        # saturating matrix has a one there
        self.forced_mask = 0
        for c in range(self.cells):
            if not self.by_cell[c]:
                self.forced_mask |= 1 << c
        self.nodes = 0

    def _zero_alive(self, z: int, zeros_mask: int) -> bool:
        # Can flipping z still complete some placement: is there a placement
        # through z none of whose other cells is already fixed to zero?
        bit = 1 << z
        for idx in self.by_cell[z]:
            if zeros_mask & (self.placement_masks[idx] ^ bit) == 0:
                return True
        return False

    def run(
        self,
        prefix: tuple[int, ...],
        bound: Optional[int],
        lex_phase: bool,
        node_budget: Optional[int],
    ) -> Optional[tuple[int, int]]:
        """DFS below a fixed assignment of the first len(prefix) cells.

        Phase one (lex_phase False): returns (min weight, some optimal ones
        mask) in the subtree, pruning at `bound` exclusive when given.
        Lex phase: zero-first search capped at weight `bound` inclusive;
        the first feasible leaf is the subtree's lexicographic minimum.
        """
        masks = self.placement_masks
        by_cell = self.by_cell
        cells = self.cells
        forced_mask = self.forced_mask

        best: Optional[tuple[int, int]] = None
        limit = bound

        def rec(pos: int, ones: int, zeros: int, ones_count: int) -> bool:
            nonlocal best, limit
            self.nodes += 1
            if node_budget is not None and self.nodes > node_budget:
                raise BudgetExceededError("node budget exceeded", self.nodes)
            if limit is not None:
                if lex_phase:
                    if ones_count > limit:
                        return False
                elif ones_count >= limit:
                    return False
            if pos == cells:
                mm = zeros
                while mm:
                    low = mm & -mm
                    if not self._zero_alive(low.bit_length() - 1, zeros):
                        return False
                    mm ^= low
                best = (ones_count, ones)
                if lex_phase:
                    return True
                limit = ones_count
                return False
            bit = 1 << pos
            for v in (0, 1) if lex_phase else (1, 0):
                if v == 1:
                    new_ones = ones | bit
                    if any(masks[idx] & ~new_ones == 0 for idx in by_cell[pos]):
                        continue
                    if rec(pos + 1, new_ones, zeros, ones_count + 1):
                        return True
                else:
                    if forced_mask & bit:
                        continue
                    new_zeros = zeros | bit
                    if not self._zero_alive(pos, new_zeros):
                        continue
                    # this zero may have killed the last viable placement of
                    # an earlier zero sharing a placement with it
                    dead = False
                    seen = bit
                    for idx in by_cell[pos]:
                        mm = masks[idx] & new_zeros & ~seen
                        while mm:
                            low = mm & -mm
                            seen |= low
                            if not self._zero_alive(low.bit_length() - 1, new_zeros):
                                dead = True
                                break
                            mm ^= low
                        if dead:
                            break
                    if dead:
                        continue
                    if rec(pos + 1, ones, new_zeros, ones_count):
                        return True
            return False

        ones = zeros = count = 0
        for pos, v in enumerate(prefix):
            bit = 1 << pos
            if v == 1:
                ones |= bit
                count += 1
                if any(masks[idx] & ~ones == 0 for idx in by_cell[pos]):
                    return None
            else:
                if forced_mask & bit:
                    return None
                zeros |= bit
                if not self._zero_alive(pos, zeros):
                    return None
        rec(len(prefix), ones, zeros, count)
        return best


def _mask_to_pattern(mask: int, m: int, n: int) -> Pattern:
    rows = []
    for i in range(m):
        row = 0
        for j in range(n):
            if mask & (1 << (i * n + j)):
                row |= 1 << j
        rows.append(row)
    return Pattern(m, n, tuple(rows))


def _phase1_worker(args) -> tuple[Optional[tuple[int, int]], int, bool]:
    """Phase-one solve of one prefix subtree; runs in a worker process.

    Returns (subtree best, nodes, budget_exceeded).
    """
    m, n, p_rows, p_cols, p_masks, prefix, bound, budget = args
    search = _SatSearch(m, n, Pattern(p_rows, p_cols, p_masks))
    try:
        res = search.run(prefix, bound, lex_phase=False, node_budget=budget)
    except BudgetExceededError:
        return None, search.nodes, True
    return res, search.nodes, False


def sat_exact(
    m: int,
    n: int,
    p: Pattern,
    budget: Optional[int] = None,
    threads: int = 1,
) -> ExactResult:
    """Minimum weight of an m x n saturating matrix for p, with the
    lexicographically least optimum matrix."""
    if p.weight == 0:
        raise ValueError("no saturating matrix exists for an all-zero pattern")
    if m < 1 or n < 1:
        raise ValueError("host dimensions must be positive")
    if threads < 1:
        raise ValueError("threads must be positive")
    if budget is None:
        budget = _env_budget()
    if m * n > GUARANTEED_CELLS and budget is None:
        raise ValueError(
            f"{m}x{n} exceeds the guaranteed-completion size "
            f"({GUARANTEED_CELLS} cells); pass an explicit node budget"
        )
    start = time.monotonic()

    # a greedy completion of the all-zero host gives a sound initial upper
    # bound, so phase one starts with a live incumbent
    seed = complete_to_saturated(Pattern.empty(m, n), p)
    seed_weight = seed.weight

    prefix_bits = min((threads - 1).bit_length(), m * n) if threads > 1 else 0
    prefixes = list(itertools.product((0, 1), repeat=prefix_bits))
    args = [
        (m, n, p.rows, p.cols, p.row_masks, pref, seed_weight + 1, budget)
        for pref in prefixes
    ]

    results: list[Optional[tuple[int, int]]] = []
    total_nodes = 0
    incomplete = False
    if threads == 1:
        outcomes = map(_phase1_worker, args)
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        outcomes = pool.map(_phase1_worker, args)
    for res, nodes, exceeded in outcomes:
        results.append(res)
        total_nodes += nodes
        incomplete = incomplete or exceeded
    if threads > 1:
        pool.shutdown()

    found = [r for r in results if r is not None]
    w_star = min((r[0] for r in found), default=seed_weight)
    w_star = min(w_star, seed_weight)

    if incomplete:
        best_mask = next((r[1] for r in found if r[0] == w_star), None)
        matrix = (
            _mask_to_pattern(best_mask, m, n) if best_mask is not None else seed
        )
        assert is_saturating(matrix, p)
        return ExactResult(
            matrix.weight, matrix, total_nodes,
            time.monotonic() - start, complete=False,
        )

    # lex phase: prefixes in lexicographic order; the first subtree whose
    # minimum equals the global minimum contains the lexicographic optimum,
    # because the prefix bits are the most significant bits of the matrix
    search = _SatSearch(m, n, p)
    for pref, r in zip(prefixes, results):
        if prefix_bits > 0 and (r is None or r[0] != w_star):
            continue
        try:
            lex = search.run(pref, w_star, lex_phase=True, node_budget=budget)
        except BudgetExceededError:
            best_mask = next((r[1] for r in found if r[0] == w_star), None)
            matrix = (
                _mask_to_pattern(best_mask, m, n)
                if best_mask is not None
                else seed
            )
            assert is_saturating(matrix, p)
            return ExactResult(
                w_star, matrix, total_nodes + search.nodes,
                time.monotonic() - start, complete=False,
            )
        if lex is None:
            continue
        assert lex[0] == w_star
        matrix = _mask_to_pattern(lex[1], m, n)
        assert is_saturating(matrix, p) and matrix.weight == w_star
        return ExactResult(
            w_star, matrix, total_nodes + search.nodes,
            time.monotonic() - start,
        )
    raise AssertionError("unreachable: some subtree attains the minimum")


# ======================================================================
# Independent oracle
# ======================================================================

ORACLE_CELLS = 20


def sat_exact_oracle(m: int, n: int, p: Pattern) -> int:
    """Exhaustive scan of all m x n hosts; shares no pruning with sat_exact.

    Vectorized over host bitmasks: a host contains p iff its mask is a
    superset of some placement mask, and saturation demands that every zero
    cell flip lands on a containing mask.
    """
    import numpy as np

    if m * n > ORACLE_CELLS:
        raise OracleSizeError(
            f"{m}x{n} exceeds the oracle limit of {ORACLE_CELLS} cells"
        )
    if p.weight == 0:
        raise ValueError("no saturating matrix exists for an all-zero pattern")
    total = 1 << (m * n)
    hosts = np.arange(total, dtype=np.int64)

    masks = []
    one_list = sorted(p.ones)
    for rows in itertools.combinations(range(m), p.rows):
        for cols in itertools.combinations(range(n), p.cols):
            mask = 0
            for (a, b) in one_list:
                mask |= 1 << (rows[a - 1] * n + cols[b - 1])
            masks.append(mask)

    contains_vec = np.zeros(total, dtype=bool)
    for mask in masks:
        contains_vec |= (hosts & mask) == mask

    ok = ~contains_vec
    for c in range(m * n):
        bit = 1 << c
        is_zero = (hosts & bit) == 0
        ok &= ~is_zero | contains_vec[hosts | bit]

    if not ok.any():
        raise ValueError("no saturating matrix exists")
    pop8 = np.array([bin(v).count("1") for v in range(256)], dtype=np.int64)
    weights = np.zeros(total, dtype=np.int64)
    shifted = hosts.copy()
    for _ in range((m * n + 7) // 8):
        weights += pop8[shifted & 255]
        shifted >>= 8
    return int(weights[ok].min())


# ======================================================================
# ILP emission
# ======================================================================

MAX_EMITTED_PLACEMENTS = 200_000


def emit_ilp(m: int, n: int, p: Pattern) -> str:
    """Text model (LP interchange format) of the saturation program.

    Constraint families: avoid_<t> keeps every placement short of complete,
    near1_<t> and near2_<t> tie y_t to "exactly one entry of placement t is
    missing", cover_i_j demands a one-away placement through every cell, and
    force_i_j pins cells that no placement touches.
    """
    if p.weight == 0:
        raise ValueError("model undefined for an all-zero pattern")
    placements = list(enumerate_placements(m, n, p))
    if len(placements) > MAX_EMITTED_PLACEMENTS:
        raise ValueError(f"placement set too large to emit ({len(placements)})")
    w = p.weight
    cell_lists = [sorted(pl.cells(p)) for pl in placements]
    by_cell: dict[tuple[int, int], list[int]] = {}
    for idx, cl in enumerate(cell_lists):
        for cell in cl:
            by_cell.setdefault(cell, []).append(idx)

    def x(i: int, j: int) -> str:
        return f"x_{i}_{j}"

    out: list[str] = []
    out.append("Minimize")
    obj = " + ".join(x(i, j) for i in range(1, m + 1) for j in range(1, n + 1))
    out.append(f" obj: {obj}")
    out.append("Subject To")
    for t, cl in enumerate(cell_lists):
        f_plus = " + ".join(x(i, j) for (i, j) in cl)
        out.append(f" avoid_{t}: {f_plus} <= {w - 1}")
    for t, cl in enumerate(cell_lists):
        f_minus = " - ".join(x(i, j) for (i, j) in cl)
        if w > 1:
            out.append(f" near1_{t}: {w - 1} y_{t} - {f_minus} <= 0")
        else:
            out.append(f" near1_{t}: - {f_minus} <= 0")
        out.append(f" near2_{t}: y_{t} - {f_minus} >= {2 - w}")
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            through = by_cell.get((i, j))
            if through:
                terms = " + ".join(f"y_{t}" for t in through)
                out.append(f" cover_{i}_{j}: {terms} >= 1")
            else:
                out.append(f" force_{i}_{j}: {x(i, j)} = 1")
    out.append("Binary")
    names = [x(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    names += [f"y_{t}" for t in range(len(placements))]
    out.append(" " + " ".join(names))
    out.append("End")
    return "\n".join(out) + "\n"


# ======================================================================
# Bounded-complete fixed-row witness search
# ======================================================================


@dataclass(frozen=True)
class FixedRowResult:
    """Outcome of decide_fixed_rows.

    status "found" carries the witness; "exhausted" proves no horizontal
    witness with this row count exists, hence linear growth at this row
    count; "inconclusive" means the node budget ran out first.
    """

    status: str
    witness: Optional[Pattern]
    nodes: int
    width_cap: int


def _col_masks_to_rows(cols: Iterable[int], m0: int) -> list[int]:
    rows = [0] * m0
    for jj, colmask in enumerate(cols):
        for r in range(m0):
            if colmask & (1 << r):
                rows[r] |= 1 << jj
    return rows


def decide_fixed_rows(
    m0: int, p: Pattern, budget: Optional[int] = None
) -> FixedRowResult:
    """Complete search for an m0-row horizontal witness for p.

    Only patterns without empty columns are accepted: the column bound
    behind the search's completeness requires every pattern column to carry
    a one.
    """
    if any(p.is_empty_col(c) for c in range(1, p.cols + 1)):
        raise ValueError("pattern must have no empty columns")
    if m0 < 1:
        raise ValueError("row count must be positive")
    if m0 > 62:
        raise ValueError("row count beyond bitmask capacity")
    if budget is None:
        budget = _env_budget()
    cap = (p.cols - 1) * m0 + 1

    # A flip of the empty expandable column plays a pattern one whose whole
    # pattern column maps onto that host column; since the host column holds
    # only the flip, that pattern column must have exactly one one.
    pin_ones = [
        (a, b)
        for (a, b) in p.ones_sorted
        if p.col_masks[b - 1].bit_count() == 1
    ]
    if not pin_ones:
        return FixedRowResult("exhausted", None, 0, cap)
    # the part of the pattern at or left of each pin, used to discard
    # prefixes that can never serve the flips of the empty column
    left_parts = [
        ((a, b), p.submatrix(range(1, p.rows + 1), range(1, b + 1)))
        for (a, b) in pin_ones
    ]

    # incremental avoidance state: for every choice of host rows, the
    # longest pattern-column prefix embedded so far; one host column can
    # advance each row choice by at most one pattern column
    row_tuples = list(itertools.combinations(range(m0), p.rows))
    req: list[list[int]] = []
    for rt in row_tuples:
        per_col = []
        for c in range(1, p.cols + 1):
            mask = 0
            for a in range(1, p.rows + 1):
                if p.get(a, c):
                    mask |= 1 << rt[a - 1]
            per_col.append(mask)
        req.append(per_col)
    n_tuples = len(row_tuples)
    full = p.cols

    nodes = 0
    col_values = range(1, 1 << m0)

    def dfs(
        width: int, j: int, pos: int, cols: list[int], depths: list[int]
    ) -> Optional[Pattern]:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceededError("node budget exceeded", nodes)
        if pos == width:
            host = Pattern(m0, width, tuple(_col_masks_to_rows(cols, m0)))
            if is_expandable_column(host, j, p) is None:
                return None
            if check_witness(host, p, "horizontal") is None:
                return None
            return host
        if pos + 1 == j:
            cols.append(0)
            host = Pattern(m0, pos + 1, tuple(_col_masks_to_rows(cols, m0)))
            viable = True
            for i in range(1, m0 + 1):
                flipped = host.with_one(i, pos + 1)
                if not any(
                    contains_with_pin(flipped, part, one, (i, pos + 1)) is not None
                    for (one, part) in left_parts
                ):
                    viable = False
                    break
            found = dfs(width, j, pos + 1, cols, depths) if viable else None
            cols.pop()
            return found
        for value in col_values:
            new_depths = depths[:]
            contained = False
            for t in range(n_tuples):
                d = new_depths[t]
                if d < full and (value & req[t][d]) == req[t][d]:
                    new_depths[t] = d + 1
                    if d + 1 == full:
                        contained = True
                        break
            if contained:
                continue
            cols.append(value)
            found = dfs(width, j, pos + 1, cols, new_depths)
            cols.pop()
            if found is not None:
                return found
        return None

    try:
        for width in range(1, cap + 1):
            for j in range(1, width + 1):
                found = dfs(width, j, 0, [], [0] * n_tuples)
                if found is not None:
                    return FixedRowResult("found", found, nodes, cap)
    except BudgetExceededError:
        return FixedRowResult("inconclusive", None, nodes, cap)
    return FixedRowResult("exhausted", None, nodes, cap)
