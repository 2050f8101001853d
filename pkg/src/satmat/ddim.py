"""d-dimensional 0-1 patterns: containment, saturation, and constructions.

Containment generalizes the 2-d notion verbatim: per-axis strictly
increasing index choices under which every one of the pattern lands on a one
of the host.  Saturation and semisaturation are the same flip conditions as
in two dimensions; the semisaturation check demands the new copy pass
through the flipped cell.

The semisaturation exponent machinery interprets faces and cross-sections as
follows.  A face fixes a set of coordinates, which must include every
non-growing axis, to boundary values (1 or the pattern's extent on that
axis); its dimension is the number of free coordinates.  A cross-section
fixes an arbitrary coordinate set to arbitrary values.  The growth exponent
is the least k for which every face with more than k free coordinates
carries a one entry that is alone in every cross-section fixing at least
k + 1 of the face's free coordinates.  Quantifying over faces with more
than k free coordinates (rather than at least k) is deliberate: those are
exactly the faces the flip-embedding consumes, and at k = 0 this reading
collapses to the two-dimensional boundedness criteria, which the
cross-module tests pin down.  The cross-section condition itself reduces to
subsets of exactly k + 1 free coordinates, since agreement on a superset
implies agreement on the subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from satmat.pattern import Pattern

MAX_AXES = 4
MAX_AXIS = 64


@dataclass(frozen=True)
class DPattern:
    """A 0-1 matrix in up to four dimensions; ones are 1-based coordinate
    tuples."""

    dims: tuple[int, ...]
    ones: frozenset[tuple[int, ...]]

    def __post_init__(self):
        d = len(self.dims)
        if not (1 <= d <= MAX_AXES):
            raise ValueError(f"dimension count {d} outside 1..{MAX_AXES}")
        if any(not (1 <= n <= MAX_AXIS) for n in self.dims):
            raise ValueError(f"axis lengths must lie in 1..{MAX_AXIS}")
        for o in self.ones:
            if len(o) != d:
                raise ValueError(f"coordinate {o} has wrong arity")
            if any(not (1 <= o[i] <= self.dims[i]) for i in range(d)):
                raise ValueError(f"coordinate {o} outside {self.dims}")

    @staticmethod
    def make(dims: Sequence[int], ones: Iterable[Sequence[int]]) -> "DPattern":
        return DPattern(tuple(dims), frozenset(tuple(o) for o in ones))

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def weight(self) -> int:
        return len(self.ones)

    @property
    def cells(self) -> int:
        out = 1
        for n in self.dims:
            out *= n
        return out

    def get(self, coord: Sequence[int]) -> bool:
        return tuple(coord) in self.ones

    def with_one(self, coord: Sequence[int]) -> "DPattern":
        return DPattern(self.dims, self.ones | {tuple(coord)})

    def layer(self, axis: int, value: int) -> frozenset[tuple[int, ...]]:
        """Ones of the (axis, value) layer, with the fixed axis dropped."""
        if not (1 <= axis <= self.d):
            raise ValueError(f"axis {axis} outside 1..{self.d}")
        return frozenset(
            o[: axis - 1] + o[axis:] for o in self.ones if o[axis - 1] == value
        )

    def is_empty_layer(self, axis: int, value: int) -> bool:
        return all(o[axis - 1] != value for o in self.ones)


def dpattern_from_matrix(p: Pattern) -> DPattern:
    return DPattern.make((p.rows, p.cols), p.ones)


def matrix_from_dpattern(p: DPattern) -> Pattern:
    if p.d != 2:
        raise ValueError("only 2-dimensional patterns convert to matrices")
    return Pattern.from_ones(p.dims[0], p.dims[1], [tuple(o) for o in p.ones])


def parse_dpattern(text: str) -> DPattern:
    """Inverse of serialize_dpattern: a `dims` header then coordinate lines."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dims"):
        raise ValueError("expected a `dims n1 n2 ...` header line")
    dims = tuple(int(t) for t in lines[0].split()[1:])
    ones = []
    for ln in lines[1:]:
        ones.append(tuple(int(t) for t in ln.split()))
    return DPattern.make(dims, ones)


def serialize_dpattern(p: DPattern) -> str:
    out = ["dims " + " ".join(str(n) for n in p.dims)]
    for o in sorted(p.ones):
        out.append(" ".join(str(c) for c in o))
    return "\n".join(out) + "\n"


# ======================================================================
# Containment
# ======================================================================


def _axis_projections(host: DPattern, depth: int) -> frozenset[tuple[int, ...]]:
    return frozenset(o[:depth] for o in host.ones)


def contains_d(host: DPattern, p: DPattern) -> bool:
    """Host contains p: strictly increasing index choices on every axis map
    all ones of p onto ones of host."""
    if host.d != p.d:
        raise ValueError(f"dimension mismatch: {host.d} vs {p.d}")
    return _find_embedding(host, p, pins={}) is not None


def contains_d_using_cell(
    host: DPattern, p: DPattern, cell: Sequence[int]
) -> Optional[tuple[tuple[int, ...], ...]]:
    """An embedding of p into host mapping some one of p onto cell, or None.

    Returns the per-axis index choices of the first embedding found.
    """
    if host.d != p.d:
        raise ValueError(f"dimension mismatch: {host.d} vs {p.d}")
    cell = tuple(cell)
    if not host.get(cell):
        raise ValueError(f"cell {cell} is not a one of the host")
    for u in sorted(p.ones):
        pins = {i: (u[i], cell[i]) for i in range(p.d)}
        hit = _find_embedding(host, p, pins)
        if hit is not None:
            return hit
    return None


def _find_embedding(
    host: DPattern, p: DPattern, pins: dict[int, tuple[int, int]]
) -> Optional[tuple[tuple[int, ...], ...]]:
    """DFS over axes; pins force pattern index -> host index on an axis.

    Prunes each prefix of axes against the projections: the chosen indices
    must map every projected pattern one onto a projected host one.
    """
    d = host.d
    if any(p.dims[i] > host.dims[i] for i in range(d)):
        return None
    proj = [_axis_projections(host, t) for t in range(d + 1)]
    pattern_ones = sorted(p.ones)

    def axis_choices(i: int) -> Iterable[tuple[int, ...]]:
        n, k = host.dims[i], p.dims[i]
        if i in pins:
            a, b = pins[i]
            for before in itertools.combinations(range(1, b), a - 1):
                for after in itertools.combinations(range(b + 1, n + 1), k - a):
                    yield before + (b,) + after
        else:
            yield from itertools.combinations(range(1, n + 1), k)

    def rec(i: int, chosen: list[tuple[int, ...]]) -> Optional[tuple]:
        if i == d:
            return tuple(chosen)
        for choice in axis_choices(i):
            ok = True
            for o in pattern_ones:
                mapped = tuple(
                    chosen[t][o[t] - 1] for t in range(i)
                ) + (choice[o[i] - 1],)
                if mapped not in proj[i + 1]:
                    ok = False
                    break
            if ok:
                chosen.append(choice)
            else:
                continue
            hit = rec(i + 1, chosen)
            if hit is not None:
                return hit
            chosen.pop()
        return None

    return rec(0, [])


# ======================================================================
# Saturation predicates
# ======================================================================


def _all_cells(dims: Sequence[int]) -> Iterable[tuple[int, ...]]:
    return itertools.product(*(range(1, n + 1) for n in dims))


def is_saturating_d(m: DPattern, p: DPattern) -> bool:
    if m.d != p.d:
        raise ValueError(f"dimension mismatch: {m.d} vs {p.d}")
    if contains_d(m, p):
        return False
    for cell in _all_cells(m.dims):
        if m.get(cell):
            continue
        if not contains_d(m.with_one(cell), p):
            return False
    return True


def is_semisaturating_d(m: DPattern, p: DPattern) -> bool:
    """Every zero flip creates a copy of p through the flipped cell; m may
    already contain p."""
    if m.d != p.d:
        raise ValueError(f"dimension mismatch: {m.d} vs {p.d}")
    for cell in _all_cells(m.dims):
        if m.get(cell):
            continue
        if contains_d_using_cell(m.with_one(cell), p, cell) is None:
            return False
    return True


def complete_to_saturated_d(m: DPattern, p: DPattern) -> DPattern:
    """Coordinate-lexicographic greedy completion of an avoiding matrix.

    A flip is accepted when it keeps the matrix avoiding; as in two
    dimensions, one pass suffices.  Since the current matrix avoids p, a
    rejected flip is detected by the cheaper through-cell search.
    """
    if contains_d(m, p):
        raise ValueError("matrix already contains the pattern")
    ones = set(m.ones)
    for cell in _all_cells(m.dims):
        if cell in ones:
            continue
        cand = DPattern(m.dims, frozenset(ones | {cell}))
        if contains_d_using_cell(cand, p, cell) is None:
            ones.add(cell)
    return DPattern(m.dims, frozenset(ones))


# ======================================================================
# The 4x4x6 pattern and its 6x6xn witness
# ======================================================================

_A_LAYERS: dict[int, list[tuple[int, int]]] = {
    1: [(1, 3), (2, 4), (3, 1), (4, 2)],
    2: [(4, 4)],
    3: [(1, 1)],
    4: [(4, 1)],
    5: [(1, 4)],
    6: [(1, 2), (2, 1), (3, 4), (4, 3)],
}

_W_LAYERS: dict[int, list[list[int]]] = {
    1: [[3], [3], [3], [4, 5, 6], [1], [2]],
    2: [[5], [6], [1, 2, 3], [4], [4], [4, 5, 6]],
    3: [[1, 5], [1, 5], [1, 5], [6], [1, 2, 3, 6], [4, 6]],
    4: [[1, 2, 3], [4, 5, 6], [1], [2], [2], [1, 2, 6]],
}


def pattern_A() -> DPattern:
    ones = [
        (i, j, k) for k, cells in _A_LAYERS.items() for (i, j) in cells
    ]
    return DPattern.make((4, 4, 6), ones)


def witness_W_A(n: int) -> DPattern:
    """The 6 x 6 x n avoiding matrix whose empty layers are all expandable.

    Layers 1..4 are fixed displays; layer n-k+1 is layer k with its rows
    reversed; everything strictly between layer 4 and layer n-3 is empty.
    """
    if n < 8:
        raise ValueError("the construction needs at least 8 layers")
    ones = []
    for k, rows in _W_LAYERS.items():
        for i, cols in enumerate(rows, start=1):
            for j in cols:
                ones.append((i, j, k))
                ones.append((7 - i, j, n - k + 1))
    return DPattern.make((6, 6, n), ones)


# ======================================================================
# Corner patterns
# ======================================================================


def corner_pattern(ks: Sequence[int]) -> DPattern:
    """A single one with all coordinates maximal."""
    ks = tuple(ks)
    if any(k < 1 for k in ks):
        raise ValueError("extents must be positive")
    return DPattern.make(ks, [ks])


def max_sat_bound(ns: Sequence[int], ks: Sequence[int]) -> int:
    if len(ns) != len(ks):
        raise ValueError("dimension mismatch")
    if any(n < k - 1 for n, k in zip(ns, ks)):
        raise ValueError("host too small on some axis")
    total = 1
    free = 1
    for n, k in zip(ns, ks):
        total *= n
        free *= n - k + 1
    return total - free


def corner_saturated(ns: Sequence[int], ks: Sequence[int]) -> DPattern:
    """Union of the first k_i - 1 i-layers on every axis; saturating for the
    corner pattern, of weight exactly max_sat_bound."""
    if len(ns) != len(ks):
        raise ValueError("dimension mismatch")
    if any(n < k - 1 for n, k in zip(ns, ks)):
        raise ValueError("host too small on some axis")
    ns = tuple(ns)
    ks = tuple(ks)
    ones = [
        cell
        for cell in _all_cells(ns)
        if any(cell[i] <= ks[i] - 1 for i in range(len(ns)))
    ]
    return DPattern.make(ns, ones)


# ======================================================================
# Layer insertion
# ======================================================================


def prepend_empty_layer(p: DPattern, axis: int) -> DPattern:
    """The pattern with a new all-zero layer in front along the axis."""
    if not (1 <= axis <= p.d):
        raise ValueError(f"axis {axis} outside 1..{p.d}")
    dims = list(p.dims)
    dims[axis - 1] += 1
    ones = [
        o[: axis - 1] + (o[axis - 1] + 1,) + o[axis:] for o in p.ones
    ]
    return DPattern.make(dims, ones)


def prepend_allones_layer(
    m: DPattern, axis: int, p: Optional[DPattern] = None
) -> DPattern:
    """All-ones layer in front of m along the axis.

    This realizes the layer-adding saturation bound: if m saturates p, the
    result saturates p with an empty layer prepended on the same axis.  Pass
    p to have both sides of that implication checked.
    """
    if not (1 <= axis <= m.d):
        raise ValueError(f"axis {axis} outside 1..{m.d}")
    if p is not None and not is_saturating_d(m, p):
        raise ValueError("matrix does not saturate the pattern")
    dims = list(m.dims)
    dims[axis - 1] += 1
    ones = [o[: axis - 1] + (o[axis - 1] + 1,) + o[axis:] for o in m.ones]
    for rest in _all_cells(dims[: axis - 1] + dims[axis:]):
        ones.append(rest[: axis - 1] + (1,) + rest[axis - 1 :])
    out = DPattern.make(dims, ones)
    if p is not None:
        if not is_saturating_d(out, prepend_empty_layer(p, axis)):
            raise RuntimeError("prepended matrix fails the saturation check")
    return out


# ======================================================================
# Semisaturation growth exponent
# ======================================================================


@dataclass(frozen=True)
class FaceSpec:
    """A coordinate subset fixed to boundary values; the free coordinates
    are the face's dimension."""

    fixed_coords: Mapping[int, int]

    def validate(self, p: DPattern) -> None:
        for axis, value in self.fixed_coords.items():
            if not (1 <= axis <= p.d):
                raise ValueError(f"axis {axis} outside 1..{p.d}")
            if value not in (1, p.dims[axis - 1]):
                raise ValueError(
                    f"face value {value} on axis {axis} is not a boundary"
                )

    def dimension(self, p: DPattern) -> int:
        return p.d - len(self.fixed_coords)

    def free_coords(self, p: DPattern) -> tuple[int, ...]:
        return tuple(
            i for i in range(1, p.d + 1) if i not in self.fixed_coords
        )

    def ones_in(self, p: DPattern) -> list[tuple[int, ...]]:
        return sorted(
            o
            for o in p.ones
            if all(o[i - 1] == v for i, v in self.fixed_coords.items())
        )


@dataclass(frozen=True)
class CrossSectionSpec:
    """A coordinate subset fixed to arbitrary in-range values."""

    fixed_coords: Mapping[int, int]

    def validate(self, p: DPattern) -> None:
        for axis, value in self.fixed_coords.items():
            if not (1 <= axis <= p.d):
                raise ValueError(f"axis {axis} outside 1..{p.d}")
            if not (1 <= value <= p.dims[axis - 1]):
                raise ValueError(f"value {value} outside axis {axis}")

    def contains(self, o: Sequence[int]) -> bool:
        return all(o[i - 1] == v for i, v in self.fixed_coords.items())

    def ones_in(self, p: DPattern) -> list[tuple[int, ...]]:
        return sorted(o for o in p.ones if self.contains(o))


def _entry_isolated(
    p: DPattern, o: tuple[int, ...], free: Sequence[int], k: int
) -> bool:
    # o must be alone in every cross-section fixing at least k+1 free
    # coordinates to o's values; it suffices to check the (k+1)-subsets
    for subset in itertools.combinations(free, k + 1):
        g = CrossSectionSpec({i: o[i - 1] for i in subset})
        g.validate(p)
        if any(u != o for u in g.ones_in(p)):
            return False
    return True


def _star_holds(p: DPattern, ell: int, k: int) -> bool:
    d = p.d
    growing = list(range(ell + 1, d + 1))
    for extra_size in range(0, d - k - ell):
        for extra in itertools.combinations(growing, extra_size):
            fixed_axes = list(range(1, ell + 1)) + list(extra)
            value_sets = []
            for i in fixed_axes:
                hi = p.dims[i - 1]
                value_sets.append((1,) if hi == 1 else (1, hi))
            for values in itertools.product(*value_sets):
                face = FaceSpec(dict(zip(fixed_axes, values)))
                face.validate(p)
                free = face.free_coords(p)
                if not any(
                    _entry_isolated(p, o, free, k) for o in face.ones_in(p)
                ):
                    return False
    return True


def compute_ssat_exponent(p: DPattern, ell: int) -> int:
    """Least k with every face of more than k free coordinates holding a one
    that is alone in all cross-sections pinning k + 1 free coordinates.

    The first ell axes are the fixed (non-growing) ones.  k = d - ell always
    qualifies vacuously, so the search terminates.
    """
    if not (0 <= ell < p.d):
        raise ValueError(f"fixed-axis count {ell} outside 0..{p.d - 1}")
    if p.weight == 0:
        raise ValueError("exponent undefined for an all-zero pattern")
    for k in range(0, p.d - ell + 1):
        if _star_holds(p, ell, k):
            return k
    raise AssertionError("unreachable: the vacuous level always holds")


def build_ssat_construction(
    p: DPattern, ell: int, ms: Sequence[int], n: int, k: int
) -> DPattern:
    """The banded matrix whose ones are the cells with at most k growing
    coordinates inside their interior band [p_i, n - p_i + 1].

    With k at least the pattern's growth exponent the result is
    semisaturating, with weight O(n^k).
    """
    if not (0 <= ell < p.d):
        raise ValueError(f"fixed-axis count {ell} outside 0..{p.d - 1}")
    if len(ms) != ell:
        raise ValueError(f"expected {ell} fixed lengths, got {len(ms)}")
    if n <= max(p.dims):
        raise ValueError("the growing extent must exceed every pattern extent")
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    dims = tuple(ms) + (n,) * (p.d - ell)
    bands = {
        i: (p.dims[i - 1], n - p.dims[i - 1] + 1)
        for i in range(ell + 1, p.d + 1)
    }
    ones = []
    for cell in _all_cells(dims):
        f_o = sum(
            1 for i, (lo, hi) in bands.items() if lo <= cell[i - 1] <= hi
        )
        if f_o <= k:
            ones.append(cell)
    return DPattern.make(dims, ones)


def step1c_bound(p: DPattern, ell: int, ms: Sequence[int], n: int, k: int) -> int:
    """Binomial-times-slab upper bound for the construction's weight."""
    from math import comb

    if len(ms) != ell:
        raise ValueError(f"expected {ell} fixed lengths, got {len(ms)}")
    slab = 1
    for m in ms:
        slab *= m
    slab *= n**k
    worst = 1
    growing = [p.dims[i - 1] for i in range(ell + 1, p.d + 1)]
    growing.sort(reverse=True)
    for extent in growing[: p.d - ell - k]:
        worst *= 2 * (extent - 1)
    return comb(p.d - ell, k) * slab * worst
