"""Two-fold subdivision of relative posets and the nerve adjunctions it induces."""

from .adjunction import (
    Adjunction,
    TruncatedSimplicialSet,
    compare_thomason,
    left_adjoint_relative,
    left_adjoint_thomason,
    relative_nerve,
    thomason_nerve,
)
from .fpcat import CatPresentation, CyclicityReport, colimit_presentation, materialize
from .homology import homology
from .relcat import (
    BudgetExceeded,
    FiniteCategory,
    Functor,
    Poset,
    RelativeCategory,
    RelativePoset,
    chains_poset,
    embed_as_hat,
    enumerate_functors,
    enumerate_relative_functors,
    make_check,
    make_hat,
    poset_iso,
    validate,
)
from .sset import FiniteSimplicialSet, boundary, delta, enumerate_simplicial_maps, ex, horn, nerve, sd_poset_nerve
from .subdivision import xi, xi_initial, xi_on_map, xi_terminal

__all__ = [
    "Adjunction",
    "BudgetExceeded",
    "CatPresentation",
    "CyclicityReport",
    "FiniteCategory",
    "FiniteSimplicialSet",
    "Functor",
    "Poset",
    "RelativeCategory",
    "RelativePoset",
    "TruncatedSimplicialSet",
    "boundary",
    "chains_poset",
    "colimit_presentation",
    "compare_thomason",
    "delta",
    "embed_as_hat",
    "enumerate_functors",
    "enumerate_relative_functors",
    "enumerate_simplicial_maps",
    "ex",
    "homology",
    "horn",
    "left_adjoint_relative",
    "left_adjoint_thomason",
    "make_check",
    "make_hat",
    "materialize",
    "nerve",
    "poset_iso",
    "relative_nerve",
    "sd_poset_nerve",
    "thomason_nerve",
    "validate",
    "xi",
    "xi_initial",
    "xi_on_map",
    "xi_terminal",
]
