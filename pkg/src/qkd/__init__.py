"""Quandle-coloring invariants of classical knots from Gauss codes.

The package computes, for each knot of the bundled 249-knot table and
each quandle of a fixed ten-quandle battery, the exact number of
colorings of the knot's diagram, and derives the pairwise matrix of
first-distinguishing-quandle indices together with its summary
statistics. Two independent counting engines (constraint propagation
and finite-field rank computation) keep each other honest.
"""

__version__ = "0.1.0"

from .gauss import (
    Arc,
    CatalogEntry,
    CrossingRelation,
    GaussCode,
    GaussCodeError,
    KnotCatalog,
    decompose,
    load_catalog,
    parse_gauss_code,
    rotate,
    validate,
)
from .matrix import (
    ColoringProfile,
    DistinguishMatrix,
    SummaryStats,
    build_matrix,
    calibrate_convention,
    fenn_rourke_distinguishes,
    first_distinguisher,
    load_reference,
    profile_all,
    summarize,
    verify_against_reference,
)
from .quandles import (
    AxiomReport,
    Quandle,
    QuandleError,
    STANDARD_SIZES,
    make_alexander,
    make_dihedral,
    right_inverse,
    standard_quandle_list,
    verify_quandle,
)
from .solver import (
    Coloring,
    ColoringSystem,
    Convention,
    CountResult,
    DEFAULT_CONVENTION,
    UnsupportedQuandleError,
    build_system,
    count_colorings,
    count_colorings_linear,
    enumerate_colorings,
    has_nontrivial,
)

__all__ = [
    "__version__",
    "Arc",
    "AxiomReport",
    "CatalogEntry",
    "Coloring",
    "ColoringProfile",
    "ColoringSystem",
    "Convention",
    "CountResult",
    "CrossingRelation",
    "DEFAULT_CONVENTION",
    "DistinguishMatrix",
    "GaussCode",
    "GaussCodeError",
    "KnotCatalog",
    "Quandle",
    "QuandleError",
    "STANDARD_SIZES",
    "SummaryStats",
    "UnsupportedQuandleError",
    "build_matrix",
    "build_system",
    "calibrate_convention",
    "count_colorings",
    "count_colorings_linear",
    "decompose",
    "enumerate_colorings",
    "fenn_rourke_distinguishes",
    "first_distinguisher",
    "has_nontrivial",
    "load_catalog",
    "load_reference",
    "make_alexander",
    "make_dihedral",
    "parse_gauss_code",
    "profile_all",
    "right_inverse",
    "rotate",
    "standard_quandle_list",
    "summarize",
    "validate",
    "verify_against_reference",
    "verify_quandle",
]
