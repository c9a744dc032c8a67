"""Core combinatorics: permutations, compositions, (quasi)symmetric functions, set families."""

from src.combinatorics.family import (
    IntersectionProfile,
    SetFamily,
    classify,
    evaluation_matrix,
    extract_family,
    search_extremal,
    tridiag_det,
)
from src.combinatorics.perm import (
    Direction,
    Permutation,
    PermSet,
    avoiders,
    contains_pattern,
    descent_set,
    inverse_descent_class,
    monotone,
)
from src.combinatorics.qsym import (
    QSymElement,
    SchurExpansion,
    SymElement,
    generating_function,
    is_schur_positive,
    is_symmetric,
    kostka,
    monomial_to_schur,
    to_monomial_symmetric,
)
from src.combinatorics.shape import (
    Composition,
    Partition,
    dominance_leq,
    enumerate_compositions,
    enumerate_partitions,
    equivalent,
    refines,
    subset_to_composition,
)

__all__ = [
    "Composition",
    "Direction",
    "IntersectionProfile",
    "Partition",
    "PermSet",
    "Permutation",
    "QSymElement",
    "SchurExpansion",
    "SetFamily",
    "SymElement",
    "avoiders",
    "classify",
    "contains_pattern",
    "descent_set",
    "dominance_leq",
    "enumerate_compositions",
    "enumerate_partitions",
    "equivalent",
    "evaluation_matrix",
    "extract_family",
    "generating_function",
    "inverse_descent_class",
    "is_schur_positive",
    "is_symmetric",
    "kostka",
    "monomial_to_schur",
    "monotone",
    "refines",
    "search_extremal",
    "subset_to_composition",
    "to_monomial_symmetric",
    "tridiag_det",
]
