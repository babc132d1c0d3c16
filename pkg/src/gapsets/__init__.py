"""Tools for gapsets, the finite complements of numerical semigroups:
enumeration and counting by genus, filtration notation, genus-growth
maps, closed-form families and the refinement graph."""

from .core import (
    Filtration,
    FiltrationParseError,
    Gapset,
    GapsetStats,
    canonical_partition,
    format_filtration,
    from_filtration,
    is_gapset,
    is_gapset_filtration,
    min_generators,
    parse_filtration,
    to_filtration,
    to_gapset,
)
from .tree import (
    MAX_GENUS_LIMIT,
    CountTable,
    EnumFilter,
    children,
    count,
    iter_gapsets,
    iter_subtree,
    parent,
    visit_gapsets,
)
from .growth import (
    GrowthClass,
    GrowthKind,
    SandwichReport,
    SandwichRow,
    classify,
    grow1,
    grow2,
    trim_maxima,
    ungrow1,
    ungrow2,
    verify_sandwich,
)
from .families import (
    FamilyReport,
    FamilyRow,
    FamilyShape,
    cross_check,
    enumerate_family,
    is_valid_shape,
)
from .graph import (
    RefinementGraph,
    build_graph,
    export_dot,
    export_edges_csv,
    is_refinement_edge,
)
from .analysis import (
    REFERENCE_DEPTH3_COUNTS,
    fibonacci,
    fibonacci_report,
    format_ratio,
    ratio_report,
    subtree_levels,
    tribonacci,
    tribonacci_report,
)

__version__ = "0.1.0"
