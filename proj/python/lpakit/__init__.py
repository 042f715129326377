from ._lpakit import (
    Graph,
    GraphParseError,
    UnsupportedError,
    classify,
    component_dims,
    crossed_product,
    decompose,
    graded_iso,
    k0,
    monoid_check,
    monoid_eq,
    monoid_presentation,
    reduce,
    strongly_graded,
)

__all__ = [
    "Graph",
    "GraphParseError",
    "UnsupportedError",
    "classify",
    "component_dims",
    "crossed_product",
    "decompose",
    "graded_iso",
    "k0",
    "monoid_check",
    "monoid_eq",
    "monoid_presentation",
    "reduce",
    "strongly_graded",
]
