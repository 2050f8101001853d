"""Directed graphs of flip copies along a witness's expandable line.

For a horizontal witness W with a unique expandable column j, flipping
(a, j) creates a copy of the pattern through the flip; fixing one such copy
per row a gives a digraph on the rows of W: an edge runs from a to every
other row the chosen copy uses.  Out-degrees are forced to k - 1 by
construction, where k is the pattern's row count.  Column-side graphs of
vertical witnesses are the same construction on the transposed inputs, so
there is a single code path; their copy placements are mapped back to the
original orientation before being stored.

The copy choice is a genuine degree of freedom (a flip can create several
copies), so the builder takes an explicit policy: the default picks the
lexicographically least placement, and enumerate_witness_graphs walks every
combination of choices up to a cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping, Optional, Sequence

from satmat.pattern import Pattern, Placement, transpose
from satmat.saturate import (
    WitnessKind,
    check_witness,
    is_expandable_column,
)


@dataclass(frozen=True, eq=False)
class WitnessGraph:
    """vertices are row indices of the witness for horizontal kind, column
    indices for vertical.  copy_choice maps each vertex to the placement its
    flip copy uses, expressed in the witness's own orientation; the edges go
    to the other entries of that placement's row choice (column choice for
    vertical graphs)."""

    kind: WitnessKind
    line: int
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    copy_choice: Mapping[int, Placement]

    def line_choice(self, v: int) -> tuple[int, ...]:
        """The lines (rows or columns, matching the vertex side) used by
        vertex v's chosen copy."""
        pl = self.copy_choice[v]
        return pl.row_choice if self.kind == "horizontal" else pl.col_choice

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(b for (a, b) in self.edges if a == v))

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        return {v: self.out_neighbors(v) for v in self.vertices}


def _swap_placement(pl: Placement) -> Placement:
    return Placement(row_choice=pl.col_choice, col_choice=pl.row_choice)


def enumerate_copies_through(
    host: Pattern, p: Pattern, cell: tuple[int, int]
) -> list[Placement]:
    """Every placement of p that host supports and that maps a one of p onto
    cell, in lexicographic order.

    Each supported placement maps exactly one pattern one onto the cell (the
    positions of the cell's row and column inside the choices are unique), so
    scanning the pattern ones as pins enumerates without duplicates.
    """
    a, j = cell
    if not host.get(a, j):
        raise ValueError(f"cell ({a},{j}) is not a one of the host")
    m, n = host.rows, host.cols
    k, l = p.rows, p.cols
    if k > m or l > n:
        return []
    col_masks = host.col_masks
    out: list[Placement] = []

    for (r0, c0) in p.ones_sorted:
        if r0 - 1 > a - 1 or k - r0 > m - a:
            continue
        if c0 - 1 > j - 1 or l - c0 > n - j:
            continue
        for before in itertools.combinations(range(1, a), r0 - 1):
            for after in itertools.combinations(range(a + 1, m + 1), k - r0):
                rows = before + (a,) + after
                # host columns usable at each pattern column, given the rows
                need = []
                for c in range(1, l + 1):
                    mask = 0
                    for r in range(1, k + 1):
                        if p.get(r, c):
                            mask |= 1 << (rows[r - 1] - 1)
                    need.append(mask)
                if col_masks[j - 1] & need[c0 - 1] != need[c0 - 1]:
                    continue

                def cols_dfs(c: int, lo: int, acc: list[int]) -> None:
                    if c == l + 1:
                        out.append(Placement(rows, tuple(acc)))
                        return
                    if c == c0:
                        if lo <= j:
                            acc.append(j)
                            cols_dfs(c + 1, j + 1, acc)
                            acc.pop()
                        return
                    hi = j if c < c0 else n + 1
                    for v in range(lo, hi):
                        if col_masks[v - 1] & need[c - 1] == need[c - 1]:
                            acc.append(v)
                            cols_dfs(c + 1, v + 1, acc)
                            acc.pop()

                cols_dfs(1, 1, [])
    out.sort()
    return out


def _oriented(w: Pattern, p: Pattern, kind: WitnessKind) -> tuple[Pattern, Pattern]:
    if kind == "horizontal":
        return w, p
    if kind == "vertical":
        return transpose(w), transpose(p)
    raise ValueError(
        f"witness graphs are built per line; kind must be 'horizontal' or "
        f"'vertical', not {kind!r}"
    )


def _unique_expandable_column(w: Pattern, p: Pattern) -> int:
    found = [
        j
        for j in range(1, w.cols + 1)
        if w.is_empty_col(j) and is_expandable_column(w, j, p) is not None
    ]
    if len(found) != 1:
        raise ValueError(
            f"the graph needs a unique expandable line; found {len(found)}"
        )
    return found[0]


def _candidate_lists(
    w: Pattern, p: Pattern, j: int
) -> dict[int, list[Placement]]:
    cands: dict[int, list[Placement]] = {}
    for a in range(1, w.rows + 1):
        lst = enumerate_copies_through(w.with_one(a, j), p, (a, j))
        if not lst:
            raise ValueError(f"flip ({a},{j}) creates no copy; not a witness line")
        cands[a] = lst
    return cands


def _graph_from_choices(
    kind: WitnessKind, j: int, choices: dict[int, Placement]
) -> WitnessGraph:
    edges = set()
    stored: dict[int, Placement] = {}
    for a, pl in choices.items():
        for b in pl.row_choice:
            if b != a:
                edges.add((a, b))
        stored[a] = pl if kind == "horizontal" else _swap_placement(pl)
    return WitnessGraph(
        kind=kind,
        line=j,
        vertices=tuple(sorted(choices)),
        edges=frozenset(edges),
        copy_choice=MappingProxyType(stored),
    )


def build_witness_graph(
    w: Pattern, p: Pattern, kind: WitnessKind, policy: str = "lex"
) -> WitnessGraph:
    """The witness graph of w under the given copy policy.

    Requires check_witness(w, p, kind) to pass and the expandable line to be
    unique.  The only built-in policy is "lex" (lexicographically least copy
    per flip); use enumerate_witness_graphs for the exhaustive mode.
    """
    if policy != "lex":
        raise ValueError(
            f"unknown copy policy {policy!r}; use 'lex' or "
            f"enumerate_witness_graphs for the exhaustive mode"
        )
    if check_witness(w, p, kind) is None:
        raise ValueError("input fails the witness check for this kind")
    ww, pp = _oriented(w, p, kind)
    j = _unique_expandable_column(ww, pp)
    cands = _candidate_lists(ww, pp, j)
    return _graph_from_choices(kind, j, {a: lst[0] for a, lst in cands.items()})


def enumerate_witness_graphs(
    w: Pattern, p: Pattern, kind: WitnessKind, cap: int = 4096
) -> Iterator[WitnessGraph]:
    """Every witness graph of w (one per combination of copy choices), in
    lexicographic order of the choice vector.

    Raises if the number of combinations exceeds cap: a silent truncation
    would make exhaustive claims unsound.
    """
    if check_witness(w, p, kind) is None:
        raise ValueError("input fails the witness check for this kind")
    ww, pp = _oriented(w, p, kind)
    j = _unique_expandable_column(ww, pp)
    cands = _candidate_lists(ww, pp, j)
    total = 1
    for lst in cands.values():
        total *= len(lst)
    if total > cap:
        raise ValueError(f"{total} copy combinations exceed the cap of {cap}")
    keys = sorted(cands)
    for combo in itertools.product(*(cands[a] for a in keys)):
        yield _graph_from_choices(kind, j, dict(zip(keys, combo)))


def successor_map(g: WitnessGraph) -> dict[int, int]:
    """The successor function of a 2-line pattern's graph (out-degree 1)."""
    succ: dict[int, int] = {}
    for (a, b) in g.edges:
        if a in succ:
            raise ValueError("graph has a vertex of out-degree above one")
        succ[a] = b
    if len(succ) != len(g.vertices):
        raise ValueError("graph has a vertex of out-degree zero")
    return succ


# ----------------------------------------------------------------------
# Checks report
# ----------------------------------------------------------------------


def _underlying_adj(g: WitnessGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for (a, b) in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _weakly_connected(g: WitnessGraph) -> bool:
    if not g.vertices:
        return True
    adj = _underlying_adj(g)
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(g.vertices)


def _bipartite(g: WitnessGraph) -> bool:
    adj = _underlying_adj(g)
    color: dict[int, int] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in color:
                    color[u] = color[v] ^ 1
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def _is_single_cycle(g: WitnessGraph) -> bool:
    n = len(g.vertices)
    if n == 0 or len(g.edges) != n:
        return False
    succ: dict[int, int] = {}
    indeg = {v: 0 for v in g.vertices}
    for (a, b) in g.edges:
        if a in succ:
            return False
        succ[a] = b
        indeg[b] += 1
    if any(d != 1 for d in indeg.values()):
        return False
    length = 1
    u = succ[g.vertices[0]]
    while u != g.vertices[0]:
        u = succ[u]
        length += 1
        if length > n:
            return False
    return length == n


def _cycle_reachable_from_all(g: WitnessGraph) -> bool:
    # iteratively strip vertices of out-degree zero; whatever survives lies
    # on or leads to a cycle, so the property holds iff nothing was stripped
    out: dict[int, set[int]] = {v: set() for v in g.vertices}
    inc: dict[int, set[int]] = {v: set() for v in g.vertices}
    for (a, b) in g.edges:
        out[a].add(b)
        inc[b].add(a)
    dead = [v for v in g.vertices if not out[v]]
    removed = set()
    while dead:
        v = dead.pop()
        if v in removed:
            continue
        removed.add(v)
        for u in inc[v]:
            out[u].discard(v)
            if not out[u] and u not in removed:
                dead.append(u)
    return not removed


def graph_checks(g: WitnessGraph) -> dict[str, bool]:
    """Structural report: the flags the theory predicts for witness graphs.

    isCycle means one directed cycle covering every vertex;
    hasCycleReachableFromAll asks for a path from each vertex to some vertex
    on a directed cycle; connected and isBipartite ignore edge directions.
    """
    if g.copy_choice:
        k = len(next(iter(g.copy_choice.values())).row_choice
                if g.kind == "horizontal"
                else next(iter(g.copy_choice.values())).col_choice)
        outdeg = {v: 0 for v in g.vertices}
        for (a, _) in g.edges:
            outdeg[a] += 1
        out_ok = all(d == k - 1 for d in outdeg.values())
    else:
        out_ok = not g.edges
    indeg = {v: 0 for v in g.vertices}
    for (_, b) in g.edges:
        indeg[b] += 1
    return {
        "outDegreesOK": out_ok,
        "connected": _weakly_connected(g),
        "allInDegreePositive": all(d > 0 for d in indeg.values()),
        "isCycle": _is_single_cycle(g),
        "isBipartite": _bipartite(g),
        "hasCycleReachableFromAll": _cycle_reachable_from_all(g),
    }


# ----------------------------------------------------------------------
# Subgraph witnesses
# ----------------------------------------------------------------------


def subgraph_witness(
    g: WitnessGraph, w: Pattern, p: Pattern, vertex_set: Sequence[int]
) -> Optional[Pattern]:
    """The sub-witness of w induced by an out-closed vertex set of g.

    The kept lines are the vertices (rows for horizontal graphs, columns for
    vertical); the other side is kept whole.  The result is re-validated
    with check_witness: the theory says closure suffices, and this function
    checks it rather than trusting it.  Returns None for an empty set.
    """
    vs = sorted(set(vertex_set))
    if not vs:
        return None
    bad = [v for v in vs if v not in set(g.vertices)]
    if bad:
        raise ValueError(f"unknown vertices {bad}")
    inside = set(vs)
    for (a, b) in g.edges:
        if a in inside and b not in inside:
            raise ValueError(
                f"vertex set is not closed under out-edges: {a} -> {b}"
            )
    if g.kind == "horizontal":
        sub = w.submatrix(vs, range(1, w.cols + 1))
    else:
        sub = w.submatrix(range(1, w.rows + 1), vs)
    if check_witness(sub, p, g.kind) is None:
        raise RuntimeError("closed vertex set yielded a non-witness submatrix")
    return sub
