"""Exact toolkit for planar unit-distance bounds.

Field-tower arithmetic, certified unit-distance graphs, the crossing-bound
formula registry with its table pipeline, circle-arc statistics, and the
computational certificates for the 15-point case analysis.
"""

from .fields import (
    ConstructibleNumber,
    FieldTower,
    parse_expression,
    rational,
    sqrt_extend,
    to_expression,
    to_interval,
)
from .geometry import (
    Point,
    UnitDistanceGraph,
    common_unit_neighbors,
    contains_k23,
    contains_k4,
    jensen_degree_floor,
    unit_distance_graph,
)
from .catalog import (
    ConstructionRecord,
    RealizationResult,
    catalog_summary,
    load_catalog,
    realize_exact,
    verify_approx,
)
from .bounds import (
    BoundEvaluation,
    build_upper_table,
    crossover_case2,
    crossover_case3,
    crossover_theorem_vs_table,
    evaluate_formula,
    u_upper_jensen,
    u_upper_proposition,
    u_upper_recursion,
    u_upper_theorem,
    validate_theorem1_cases,
)
from .drawings import (
    AbstractDrawing,
    ArcMultigraph,
    StraightLineDrawing,
    build_arc_multigraph,
    caro_wei_planar_subgraph,
    check_proposition_inequality,
    circle_crossing_stats,
    count_crossings_straightline,
    harmonic_sum,
    thicken,
)
from .case15 import (
    certify_case,
    derive_degree_profile,
    enumerate_gn_types,
    verify_observation_chain,
)

__version__ = "0.1.0"
