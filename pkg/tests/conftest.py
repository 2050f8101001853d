"""Shared fixtures: the catalog and exhaustive small-pattern panels."""

import pytest

from satmat.corpus import catalog
from satmat.pattern import Pattern


def _enumerate_patterns(max_rows: int, max_cols: int, max_weight=None):
    out = []
    for r in range(1, max_rows + 1):
        for c in range(1, max_cols + 1):
            for mask in range(1, 1 << (r * c)):
                if max_weight is not None and mask.bit_count() > max_weight:
                    continue
                grid = [
                    [(mask >> (i * c + j)) & 1 for j in range(c)]
                    for i in range(r)
                ]
                out.append(Pattern.from_rows(grid))
    return tuple(out)


@pytest.fixture(scope="session")
def cat():
    return catalog()


@pytest.fixture(scope="session")
def panel_3x3():
    """Every nonzero pattern with at most 3 rows and 3 columns (673 total)."""
    return _enumerate_patterns(3, 3)


@pytest.fixture(scope="session")
def panel_3x3_w4():
    """The 3x3 panel cut to weight at most 4 (403 patterns)."""
    return _enumerate_patterns(3, 3, max_weight=4)
