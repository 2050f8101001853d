"""Saturation functions of forbidden 0-1 matrix patterns.

Tooling for the saturation and semisaturation functions of 0-1 matrix
patterns: containment search, witness certificates, boundedness classifiers,
an exact minimum-weight solver, explicit witness constructions, witness
graphs, and the d-dimensional generalizations, plus a small frozen catalog of
worked patterns.
"""

from satmat.pattern import (
    Decomposition,
    OracleSizeError,
    Pattern,
    PatternParseError,
    Placement,
    all_symmetries,
    contains,
    contains_oracle,
    contains_using_cell,
    contains_with_pin,
    enumerate_placements,
    insert_empty_column,
    insert_empty_row,
    is_decomposable,
    is_strongly_indecomposable,
    kronecker,
    parse_pattern,
    prepend_allones_column,
    reflect_h,
    reflect_v,
    rotate90,
    serialize_pattern,
    transpose,
    weight,
)

__all__ = [
    "Decomposition",
    "OracleSizeError",
    "Pattern",
    "PatternParseError",
    "Placement",
    "all_symmetries",
    "contains",
    "contains_oracle",
    "contains_using_cell",
    "contains_with_pin",
    "enumerate_placements",
    "insert_empty_column",
    "insert_empty_row",
    "is_decomposable",
    "is_strongly_indecomposable",
    "kronecker",
    "parse_pattern",
    "prepend_allones_column",
    "reflect_h",
    "reflect_v",
    "rotate90",
    "serialize_pattern",
    "transpose",
    "weight",
]

__version__ = "0.1.0"
