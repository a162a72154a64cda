"""Finite interval spaces: betweenness axioms, abstract convexity, and
order-geometry property checkers with exhaustive verification tooling."""

from .core import (
    SUBSET_ENUMERATION_CAP,
    SUBSET_TRIPLE_CAP,
    Axiom,
    AxiomViolation,
    BetweennessTable,
    BinaryRelation,
    CapExceededError,
    FiniteIntervalSpace,
    PointSet,
    ValidationError,
    axiom_violations,
    validate,
)
from .closure import (
    ClosureSystem,
    HypothesisNotMetError,
    antiexchange_witness,
    antimatroid_report,
    combinatorial_witness,
    convex_closure_system,
    entailment_is_reverse_of_between,
    entailment_reverse_witness,
    is_antiexchange,
    is_antimatroid,
    is_combinatorial,
    verify_combinatorial_prop,
)
from .models import (
    Graph,
    RationalPoint,
    complete_bipartite_graph,
    complete_graph,
    geodesic_space_from_graph,
    linear_order_space,
    path_graph,
    rational_between,
    rational_point,
    vector_space_on_points,
)
from .properties import (
    ANTISYMMETRY_CONDITIONS,
    CLOSURE_FLAG_NAMES,
    PROPERTY_CHECKS,
    PROPERTY_NAMES,
    TRANSITIVITY_CONDITIONS,
    ConditionVector,
    PropertyReport,
    antisymmetry_conditions,
    base_interval_antisymmetry_prop_witness,
    base_interval_transitivity_prop_witness,
    check_base_interval_antisymmetry_prop,
    check_base_interval_transitivity_prop,
    check_stiff_implies_convex_antisymmetry,
    interval_antisymmetry_witness,
    interval_convexity_witness,
    interval_transitivity_witness,
    is_interval_antisymmetric,
    is_interval_convex,
    is_interval_transitive,
    is_point_antisymmetric,
    is_point_transitive,
    is_stiff,
    point_antisymmetry_witness,
    point_transitivity_witness,
    property_report,
    resolve_properties,
    stiff_convex_antisymmetry_witness,
    stiffness_witness,
    transitivity_conditions,
)
from .search import (
    DEFAULT_TRIPLE_BUDGET,
    EXHAUSTIVE_CAP,
    CensusReport,
    EquivalenceViolation,
    ExhaustivePopulation,
    FreeOrbitEncoding,
    SampledPopulation,
    enumerate_spaces,
    find_separating,
    free_orbit_encoding,
    random_space,
    verify_antisymmetry_theorem,
    verify_transitivity_theorem,
)

__version__ = "0.1.0"
