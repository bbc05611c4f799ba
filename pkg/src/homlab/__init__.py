"""Morphism-extension classes of graphs colored by finite posets."""

from .errors import HomlabError
from .graph import (
    ColoredGraph,
    Diagram,
    Requirement,
    diagram,
    diagram_leq,
    induced,
    is_vertex_uniform,
    requirement,
    satisfies,
    validate,
)
from .morphism import (
    Classification,
    PartialMap,
    Witness,
    blocked_vertices,
    classify,
    extend_to_endomorphism,
    hh_failure_witness,
    is_homomorphism,
    is_monomorphism,
    iter_failure_witnesses,
    mh_failure_witness,
    one_point_targets,
    transversal_extend,
)
from .oracle import brute_force_classify, naive_one_point_targets
from .poset import (
    ONE,
    ZERO,
    Poset,
    build_poset,
    is_directed,
    is_linear,
    leq,
    make_chain,
    make_D,
    make_F,
    maximal_elements,
    named_poset,
    strict_tops_below_top,
    trivial,
    upper_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "ONE",
    "ZERO",
    "Classification",
    "ColoredGraph",
    "Diagram",
    "HomlabError",
    "PartialMap",
    "Poset",
    "Requirement",
    "Witness",
    "blocked_vertices",
    "brute_force_classify",
    "build_poset",
    "classify",
    "diagram",
    "diagram_leq",
    "extend_to_endomorphism",
    "hh_failure_witness",
    "induced",
    "is_directed",
    "is_homomorphism",
    "is_linear",
    "is_monomorphism",
    "is_vertex_uniform",
    "iter_failure_witnesses",
    "leq",
    "make_D",
    "make_F",
    "make_chain",
    "maximal_elements",
    "mh_failure_witness",
    "naive_one_point_targets",
    "named_poset",
    "one_point_targets",
    "requirement",
    "satisfies",
    "strict_tops_below_top",
    "transversal_extend",
    "trivial",
    "upper_bounds",
    "validate",
]
