"""Sign patterns, noneven digraphs and symplectic pairs.

Exact combinatorial deciders (parity, sign-nonsingularity, sign-equivalence),
graph families (cockades, extended caterpillars, W4), a numerical witness
search for symplectic pairs, and exhaustive small-size verification.
"""

from .digraph import Digraph, UndirectedGraph, double_cycle
from .exceptions import (
    CombinatoriallySingular,
    NonevenError,
    NotNoneven,
    NotSNS,
    NotTwoConnected,
    ParseError,
    SearchSpaceTooLarge,
)
from .parity import (
    ParityVerdict,
    find_weak_double_cycle,
    is_even_weighted,
    is_noneven,
    is_noneven_unweighted,
    is_sns,
    noneven_weighting,
)
from .pattern import (
    SignPattern,
    SignTransform,
    WeightedDigraph,
    digraph_of,
    negative_diagonal_normalize,
    negative_diagonal_pattern,
    pattern_of,
    sign_equivalent,
)
from .structures import (
    CaterpillarSpec,
    CockadeSpec,
    build_cockade,
    build_extended_caterpillar,
    extended_caterpillars,
    w4,
)
from .symplectic import (
    NotFound,
    WitnessPair,
    find_symplectic_pair,
    is_maximal_noneven,
    prop31_check,
    prop61_check,
    requires_symplectic_sampling,
)

__version__ = "0.1.0"

__all__ = [
    "CaterpillarSpec",
    "CockadeSpec",
    "CombinatoriallySingular",
    "Digraph",
    "NonevenError",
    "NotFound",
    "NotNoneven",
    "NotSNS",
    "NotTwoConnected",
    "ParityVerdict",
    "ParseError",
    "SearchSpaceTooLarge",
    "SignPattern",
    "SignTransform",
    "UndirectedGraph",
    "WeightedDigraph",
    "WitnessPair",
    "build_cockade",
    "build_extended_caterpillar",
    "digraph_of",
    "double_cycle",
    "extended_caterpillars",
    "find_symplectic_pair",
    "find_weak_double_cycle",
    "is_even_weighted",
    "is_maximal_noneven",
    "is_noneven",
    "is_noneven_unweighted",
    "is_sns",
    "negative_diagonal_normalize",
    "negative_diagonal_pattern",
    "noneven_weighting",
    "pattern_of",
    "prop31_check",
    "prop61_check",
    "requires_symplectic_sampling",
    "sign_equivalent",
    "w4",
]
