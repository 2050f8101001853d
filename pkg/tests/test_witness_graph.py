"""Witness graphs: copy-choice enumeration, shape checks, sub-witnesses.

The graph lives on the lines crossing the expandable line of a witness:
flipping a cell there induces a pattern copy, and each vertex points at
the other lines of its copy, so out-degrees all equal one less than the
pattern's line count.  Which copy gets picked is a genuine degree of
freedom; the enumeration mode walks all of them, and several shape facts
below only hold for some choices, never for the lexicographic default.
"""

import pytest

from satmat.pattern import Pattern
from satmat.saturate import check_witness, minimize_witness
from satmat.witness_graph import (
    build_witness_graph,
    enumerate_witness_graphs,
    graph_checks,
    subgraph_witness,
    successor_map,
)

K33_EDGES = frozenset(
    [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]
    + [(b, a) for a in (1, 2, 3) for b in (4, 5, 6)]
)
FIVE_CYCLE_EDGES = frozenset({(1, 2), (2, 4), (4, 5), (5, 3), (3, 1)})
FOUR_CYCLE_EDGES = frozenset({(1, 2), (2, 4), (4, 3), (3, 1)})


def reach(g, v):
    seen = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for y in g.out_neighbors(x):
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)


# ======================================================================
# construction basics
# ======================================================================


def test_vertical_graph_lives_on_columns(cat):
    e = cat["fig1"]
    g = build_witness_graph(e.vertical_witness, e.pattern, "vertical")
    assert g.kind == "vertical"
    assert g.vertices == tuple(range(1, e.vertical_witness.cols + 1))
    assert g.line == 3


def test_horizontal_graph_lives_on_rows(cat):
    e = cat["w2"]
    g = build_witness_graph(e.horizontal_witness, e.pattern, "horizontal")
    assert g.vertices == tuple(range(1, e.horizontal_witness.rows + 1))


def test_out_degree_is_line_count_minus_one(cat):
    for name, kind in (("fig1", "vertical"), ("w2", "horizontal")):
        e = cat[name]
        w = e.vertical_witness if kind == "vertical" else e.horizontal_witness
        g = build_witness_graph(w, e.pattern, kind)
        k = e.pattern.cols if kind == "vertical" else e.pattern.rows
        for v in g.vertices:
            assert len(g.out_neighbors(v)) == k - 1
        assert graph_checks(g)["outDegreesOK"]


def test_adjacency_mirrors_the_edge_set(cat):
    e = cat["w2"]
    g = build_witness_graph(e.horizontal_witness, e.pattern, "horizontal")
    adj = g.adjacency()
    assert set(adj) == set(g.vertices)
    assert {(v, u) for v, outs in adj.items() for u in outs} == set(g.edges)


def test_graph_needs_a_valid_witness(cat):
    with pytest.raises(ValueError):
        build_witness_graph(Pattern.empty(3, 3), cat["q2"].pattern, "vertical")


# ======================================================================
# the complete bipartite shape
# ======================================================================


def test_permutation_witness_graph_is_directed_k33(cat):
    e = cat["fig1"]
    g = build_witness_graph(e.vertical_witness, e.pattern, "vertical")
    assert frozenset(g.edges) == K33_EDGES
    checks = graph_checks(g)
    assert checks == {
        "outDegreesOK": True,
        "connected": True,
        "allInDegreePositive": True,
        "isCycle": False,
        "isBipartite": True,
        "hasCycleReachableFromAll": True,
    }


def test_k33_is_forced_for_every_copy_choice(cat):
    e = cat["fig1"]
    gs = list(
        enumerate_witness_graphs(e.vertical_witness, e.pattern, "vertical", cap=64)
    )
    assert len(gs) == 1
    assert frozenset(gs[0].edges) == K33_EDGES


# ======================================================================
# the cycle shapes
# ======================================================================


def test_five_cycle_exists_among_the_copy_choices(cat):
    e = cat["five_cycle"]
    gs = list(
        enumerate_witness_graphs(
            e.horizontal_witness, e.pattern, "horizontal", cap=4096
        )
    )
    assert len(gs) == 4
    cycles = [g for g in gs if graph_checks(g)["isCycle"]]
    assert len(cycles) == 1
    assert frozenset(cycles[0].edges) == FIVE_CYCLE_EDGES
    checks = graph_checks(cycles[0])
    assert checks["connected"] and checks["allInDegreePositive"]
    assert not checks["isBipartite"]


def test_the_lex_default_is_not_the_cycle(cat):
    # the cycle shape depends on picking the right copies; the default
    # choice wires vertex 5 back to 1 instead of 3
    e = cat["five_cycle"]
    g = build_witness_graph(e.horizontal_witness, e.pattern, "horizontal")
    assert not graph_checks(g)["isCycle"]
    assert any(
        frozenset(h.edges) == frozenset(g.edges)
        for h in enumerate_witness_graphs(
            e.horizontal_witness, e.pattern, "horizontal", cap=4096
        )
    )


def test_successor_map_of_the_cycle(cat):
    e = cat["five_cycle"]
    gs = enumerate_witness_graphs(e.horizontal_witness, e.pattern, "horizontal", cap=4096)
    cyc = next(g for g in gs if graph_checks(g)["isCycle"])
    assert successor_map(cyc) == {1: 2, 2: 4, 4: 5, 5: 3, 3: 1}


def test_four_cycle_among_w2_choices(cat):
    e = cat["w2"]
    gs = list(
        enumerate_witness_graphs(
            e.horizontal_witness, e.pattern, "horizontal", cap=4096
        )
    )
    assert len(gs) == 2
    assert FOUR_CYCLE_EDGES in {frozenset(g.edges) for g in gs}


def test_successor_map_rejects_branching_graphs(cat):
    e = cat["fig1"]
    g = build_witness_graph(e.vertical_witness, e.pattern, "vertical")
    with pytest.raises(ValueError):
        successor_map(g)


def test_enumeration_cap_is_enforced(cat):
    e = cat["five_cycle"]
    with pytest.raises(ValueError):
        list(
            enumerate_witness_graphs(
                e.horizontal_witness, e.pattern, "horizontal", cap=2
            )
        )


# ======================================================================
# degenerate shape: single-row pattern gives an edgeless graph
# ======================================================================


def test_single_row_pattern_gives_isolated_vertices():
    row_pair = Pattern.from_rows([[1, 1]])
    w = Pattern.from_ones(3, 3, [(1, 1), (2, 1), (3, 3)])
    assert check_witness(w, row_pair, "horizontal") is not None
    g = build_witness_graph(w, row_pair, "horizontal")
    assert set(g.edges) == set()
    checks = graph_checks(g)
    assert checks["outDegreesOK"]
    assert not checks["connected"]
    assert not checks["allInDegreePositive"]
    assert not checks["hasCycleReachableFromAll"]


# ======================================================================
# minimal witnesses and sub-witnesses
# ======================================================================


@pytest.mark.parametrize(
    "name, kind",
    [("q2", "vertical"), ("q2", "horizontal"), ("w2", "horizontal"), ("five_cycle", "horizontal")],
)
def test_minimal_witnesses_admit_a_connected_choice(cat, name, kind):
    # minimality forces every line to carry its weight: some copy choice
    # yields a connected graph whose vertices all have an incoming edge
    e = cat[name]
    w = e.vertical_witness if kind == "vertical" else e.horizontal_witness
    small = minimize_witness(w, e.pattern, kind)
    gs = enumerate_witness_graphs(small, e.pattern, kind, cap=4096)
    assert any(
        (lambda c: c["connected"] and c["allInDegreePositive"])(graph_checks(g))
        for g in gs
    )


def test_reach_closures_cut_valid_sub_witnesses(cat):
    e = cat["five_cycle"]
    w = e.horizontal_witness
    g = build_witness_graph(w, e.pattern, "horizontal")
    for v in g.vertices:
        sub = subgraph_witness(g, w, e.pattern, reach(g, v))
        assert sub is not None
        assert check_witness(sub, e.pattern, "horizontal") is not None


def test_subgraph_witness_rejects_open_sets(cat):
    e = cat["five_cycle"]
    g = build_witness_graph(e.horizontal_witness, e.pattern, "horizontal")
    # vertex 1 alone is not out-closed: it points at 2
    with pytest.raises(ValueError):
        subgraph_witness(g, e.horizontal_witness, e.pattern, [1])


def test_subgraph_witness_on_the_empty_set(cat):
    e = cat["five_cycle"]
    g = build_witness_graph(e.horizontal_witness, e.pattern, "horizontal")
    assert subgraph_witness(g, e.horizontal_witness, e.pattern, []) is None
