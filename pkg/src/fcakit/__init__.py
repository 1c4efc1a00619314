"""Formal concept analysis toolkit.

Contexts and their concept lattices, closed itemset enumeration in lectic
order, a ball-domain fixed-point engine with certified error bounds, and
graded concepts over many-valued contexts.
"""

from .balls import (
    Ball,
    BallSequence,
    ContractionSpec,
    ConvergenceError,
    FixedPointResult,
    ball_leq,
    estimate_lipschitz,
    is_cauchy,
    iterate_fixed_point,
    lift_map,
    lub_of_ascending,
    norm,
)
from .context import (
    ContextParseError,
    FormalContext,
    ManyValuedContext,
    parse_cxt,
    parse_mv_csv,
    serialize_cxt,
    threshold,
)
from .galois import (
    closure_extent,
    closure_intent,
    derive_extent,
    derive_intent,
    kleene_fixed_point,
)
from .graded import (
    Analysis,
    CellPoint,
    GradedConcept,
    GradedItemset,
    GradedLattice,
    UndefinedGradeError,
    analyze,
    embed_cells,
    graded_closed_itemset,
    graded_concept,
    graded_lattice,
    least_enclosing_origin_ball,
)
from .lattice import (
    Concept,
    ConceptLattice,
    build_lattice,
    closed_itemsets,
    enumerate_concepts,
    is_subconcept,
    join,
    meet,
    next_closure,
    smallest_closed_containing,
)

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "Ball",
    "BallSequence",
    "CellPoint",
    "Concept",
    "ConceptLattice",
    "ContextParseError",
    "ContractionSpec",
    "ConvergenceError",
    "FixedPointResult",
    "FormalContext",
    "GradedConcept",
    "GradedItemset",
    "GradedLattice",
    "ManyValuedContext",
    "UndefinedGradeError",
    "analyze",
    "ball_leq",
    "build_lattice",
    "closed_itemsets",
    "closure_extent",
    "closure_intent",
    "derive_extent",
    "derive_intent",
    "embed_cells",
    "enumerate_concepts",
    "estimate_lipschitz",
    "graded_closed_itemset",
    "graded_concept",
    "graded_lattice",
    "is_cauchy",
    "is_subconcept",
    "iterate_fixed_point",
    "join",
    "kleene_fixed_point",
    "least_enclosing_origin_ball",
    "lift_map",
    "lub_of_ascending",
    "meet",
    "next_closure",
    "norm",
    "parse_cxt",
    "parse_mv_csv",
    "serialize_cxt",
    "smallest_closed_containing",
    "threshold",
    "__version__",
]
