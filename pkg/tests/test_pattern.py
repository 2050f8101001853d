"""Pattern container, text format, symmetries, and containment.

Containment here is the submatrix-domination order: an index-preserving
choice of rows and columns under which every one of the pattern lands on
a one of the host.  Everything downstream reduces to this predicate, so
it gets an independent brute-force cross-check in this file.
"""

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satmat.pattern import (
    Pattern,
    PatternParseError,
    all_symmetries,
    antitranspose,
    contains,
    enumerate_placements,
    insert_empty_column,
    insert_empty_row,
    kronecker,
    max_empty_col_run,
    max_empty_row_run,
    parse_pattern,
    placement_count,
    prepend_allones_column,
    reflect_h,
    reflect_v,
    rotate90,
    rotate180,
    serialize_pattern,
    transpose,
)

grids = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, 1), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


def brute_contains(host: Pattern, p: Pattern) -> bool:
    """Containment straight from the definition, no bit tricks."""
    if p.rows > host.rows or p.cols > host.cols:
        return False
    hg = host.to_grid()
    pg = p.to_grid()
    for rows in itertools.combinations(range(host.rows), p.rows):
        for cols in itertools.combinations(range(host.cols), p.cols):
            if all(
                hg[rows[i]][cols[j]] >= pg[i][j]
                for i in range(p.rows)
                for j in range(p.cols)
            ):
                return True
    return False


# ======================================================================
# construction and cell access
# ======================================================================


def test_from_rows_round_trips_through_to_grid():
    grid = [[1, 0, 1], [0, 0, 0], [0, 1, 0]]
    p = Pattern.from_rows(grid)
    assert (p.rows, p.cols) == (3, 3)
    assert p.to_grid() == grid
    assert p.weight == 3
    assert p.get(1, 1) and p.get(3, 2) and not p.get(2, 2)


def test_from_ones_and_ones_agree():
    cells = [(1, 2), (3, 1), (2, 4)]
    p = Pattern.from_ones(3, 4, cells)
    assert p.ones == frozenset(cells)
    assert p.ones_sorted == ((1, 2), (2, 4), (3, 1))


def test_from_ones_rejects_out_of_range_cells():
    with pytest.raises(ValueError):
        Pattern.from_ones(2, 2, [(3, 1)])
    with pytest.raises(ValueError):
        Pattern.from_ones(2, 2, [(1, 0)])


def test_with_one_and_without_one_invert():
    p = Pattern.identity(3)
    q = p.with_one(1, 3)
    assert q.get(1, 3) and not p.get(1, 3)
    assert q.without_one(1, 3) == p


def test_named_constructors():
    assert Pattern.empty(2, 3).weight == 0
    assert Pattern.all_ones(2, 3).weight == 6
    assert Pattern.identity(4).ones == frozenset((i, i) for i in range(1, 5))


def test_empty_line_predicates():
    p = Pattern.from_rows([[0, 1, 0], [0, 0, 0]])
    assert p.is_empty_row(2) and not p.is_empty_row(1)
    assert p.is_empty_col(1) and p.is_empty_col(3) and not p.is_empty_col(2)


def test_submatrix_keeps_selected_lines():
    p = Pattern.from_rows([[1, 0, 1], [0, 1, 0], [1, 1, 0]])
    sub = p.submatrix([1, 3], [1, 3])
    assert sub.to_grid() == [[1, 1], [1, 0]]


# ======================================================================
# text format
# ======================================================================


@settings(max_examples=120)
@given(grids)
def test_serialize_parse_round_trip(grid):
    p = Pattern.from_rows(grid)
    assert parse_pattern(serialize_pattern(p)) == p


def test_parse_accepts_both_glyph_sets_and_comments():
    text = "# header comment\n1.1\n0•0  # trailing note\n"
    p = parse_pattern(text)
    assert p.to_grid() == [[1, 0, 1], [0, 1, 0]]


def test_parse_rejects_ragged_rows():
    with pytest.raises(PatternParseError):
        parse_pattern("10\n1\n")


def test_parse_rejects_unknown_glyphs():
    with pytest.raises(PatternParseError):
        parse_pattern("1x\n00\n")


def test_parse_rejects_blank_input():
    with pytest.raises(PatternParseError):
        parse_pattern("# only a comment\n")


# ======================================================================
# symmetries
# ======================================================================

ASYMMETRIC = Pattern.from_rows([[1, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0]])


def test_symmetry_involutions_and_rotation_order():
    p = ASYMMETRIC
    assert transpose(transpose(p)) == p
    assert reflect_h(reflect_h(p)) == p
    assert reflect_v(reflect_v(p)) == p
    assert rotate90(rotate90(rotate90(rotate90(p)))) == p
    assert rotate180(p) == rotate90(rotate90(p))
    assert antitranspose(p) == rotate180(transpose(p))


def test_all_symmetries_is_the_dihedral_orbit():
    named = all_symmetries(ASYMMETRIC)
    assert len(named) == 8
    names = [n for n, _ in named]
    assert len(set(names)) == 8
    # the orbit of this particular pattern is free, so all images differ
    assert len({img for _, img in named}) == 8


def test_symmetries_preserve_weight():
    for _, img in all_symmetries(ASYMMETRIC):
        assert img.weight == ASYMMETRIC.weight


# ======================================================================
# containment
# ======================================================================


def test_contains_reports_a_placement():
    host = Pattern.from_rows([[0, 1, 0, 1], [1, 0, 0, 0], [0, 0, 1, 1]])
    p = Pattern.from_rows([[1, 1], [0, 1]])
    pl = contains(host, p)
    assert pl is not None
    assert pl.cells(p) <= host.ones


def test_contains_respects_index_order():
    # an anti-diagonal cannot embed into a diagonal: order must be preserved
    host = Pattern.identity(4)
    anti = Pattern.from_rows([[0, 1], [1, 0]])
    assert contains(host, anti) is None
    assert contains(host, Pattern.identity(2)) is not None


def test_contains_is_reflexive():
    assert contains(ASYMMETRIC, ASYMMETRIC) is not None


def test_contains_matches_brute_force_on_random_pairs():
    rng = random.Random(20260814)
    for _ in range(300):
        hr, hc = rng.randint(1, 5), rng.randint(1, 5)
        pr, pc = rng.randint(1, 3), rng.randint(1, 3)
        host = Pattern.from_rows(
            [[rng.randint(0, 1) for _ in range(hc)] for _ in range(hr)]
        )
        p = Pattern.from_rows(
            [[int(rng.random() < 0.4) for _ in range(pc)] for _ in range(pr)]
        )
        assert (contains(host, p) is not None) == brute_contains(host, p)


def test_contains_is_monotone_in_the_pattern():
    # adding ones to the pattern can only make containment harder
    rng = random.Random(7)
    for _ in range(120):
        host = Pattern.from_rows(
            [[rng.randint(0, 1) for _ in range(4)] for _ in range(4)]
        )
        p = Pattern.from_rows(
            [[int(rng.random() < 0.35) for _ in range(2)] for _ in range(2)]
        )
        zeros = [
            (i, j)
            for i in range(1, 3)
            for j in range(1, 3)
            if not p.get(i, j)
        ]
        if not zeros:
            continue
        bigger = p.with_one(*rng.choice(zeros))
        if contains(host, bigger) is not None:
            assert contains(host, p) is not None


# ======================================================================
# placements
# ======================================================================


def test_placement_count_is_a_product_of_binomials():
    p = Pattern.from_rows([[1, 0], [0, 1]])
    assert placement_count(4, 5, p) == math.comb(4, 2) * math.comb(5, 2)
    assert placement_count(4, 5, p) == len(list(enumerate_placements(4, 5, p)))


def test_placement_cells_have_pattern_weight():
    p = Pattern.from_rows([[1, 0, 1], [0, 1, 0]])
    for pl in enumerate_placements(3, 4, p):
        assert len(pl.cells(p)) == p.weight


def test_no_placements_when_pattern_does_not_fit():
    p = Pattern.identity(3)
    assert placement_count(2, 5, p) == 0
    assert list(enumerate_placements(2, 5, p)) == []


# ======================================================================
# line insertion, Kronecker product, empty runs
# ======================================================================


def test_insert_empty_column_shifts_later_ones():
    p = Pattern.from_ones(2, 3, [(1, 1), (2, 3)])
    q = insert_empty_column(p, 2)
    assert (q.rows, q.cols) == (2, 4)
    assert q.ones == frozenset({(1, 1), (2, 4)})
    assert q.is_empty_col(2)


def test_insert_empty_row_shifts_later_ones():
    p = Pattern.from_ones(2, 3, [(1, 1), (2, 3)])
    q = insert_empty_row(p, 1)
    assert (q.rows, q.cols) == (3, 3)
    assert q.ones == frozenset({(2, 1), (3, 3)})
    assert q.is_empty_row(1)


def test_prepend_allones_column():
    p = Pattern.from_rows([[0, 1], [1, 0]])
    q = prepend_allones_column(p)
    assert q.to_grid() == [[1, 0, 1], [1, 1, 0]]


def test_kronecker_dims_and_weight_multiply():
    p = Pattern.from_rows([[1, 0], [1, 1]])
    q = Pattern.from_rows([[0, 1, 1]])
    k = kronecker(p, q)
    assert (k.rows, k.cols) == (p.rows * q.rows, p.cols * q.cols)
    assert k.weight == p.weight * q.weight


def test_kronecker_of_identities_is_identity():
    assert kronecker(Pattern.identity(2), Pattern.identity(2)) == Pattern.identity(4)


def test_kronecker_block_structure():
    p = Pattern.from_rows([[1, 0]])
    q = Pattern.from_rows([[1, 1], [0, 1]])
    k = kronecker(p, q)
    # left block is q, right block is empty
    assert k.to_grid() == [[1, 1, 0, 0], [0, 1, 0, 0]]


@pytest.mark.parametrize(
    "grid, col_run, row_run",
    [
        ([[1, 1]], 0, 0),
        ([[1, 0, 1]], 1, 0),
        ([[1, 0, 0, 1]], 2, 0),
        ([[0, 1]], 1, 0),
        ([[1], [0], [0], [1]], 0, 2),
        ([[0, 0, 1], [0, 0, 0]], 2, 1),
    ],
)
def test_max_empty_runs(grid, col_run, row_run):
    p = Pattern.from_rows(grid)
    assert max_empty_col_run(p) == col_run
    assert max_empty_row_run(p) == row_run
