"""Quantale-valued preorders on fuzzy sets.

The submodules build on each other: ``quantale`` (finite quantales and their
diagonal sets), ``qrel`` (relations), ``qord`` (Q-ordered sets and maps),
``presheaf`` (powersets), ``completion`` (suprema and completeness) and
``galois`` (distributors and Galois connections).
"""

from . import kernels
from .errors import (
    AxiomError,
    DimensionMismatch,
    EntryOutOfDiagonal,
    InvalidMap,
    NotAdjoint,
    NotClosed,
    NotInDiagonal,
    NotReflexive,
    NotTransitive,
    ParseError,
    QorderError,
    SizeCap,
)
from .quantale import FiniteQuantale, builtin, load_quantale, resolve_quantale
from .qrel import QRelation, QSubset, compose, hom_join, hom_meet, imp_left, imp_right, validate_relation
from .qord import QOrderedSet, QOrderMap, check_map, make_ordered, underlying_preorder
from .presheaf import Copresheaf, Presheaf, copresheaves, presheaves, yoneda, co_yoneda
from .completion import completeness_report, inf, is_complete, sup
from .galois import (
    concept_lattice,
    dist_from_pair,
    dual_kan,
    find_adjoint,
    fixed_points,
    is_cauchy_complete,
    is_galois,
    isbell,
    kan,
    macneille,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomError",
    "Copresheaf",
    "DimensionMismatch",
    "EntryOutOfDiagonal",
    "FiniteQuantale",
    "InvalidMap",
    "NotAdjoint",
    "NotClosed",
    "NotInDiagonal",
    "NotReflexive",
    "NotTransitive",
    "ParseError",
    "Presheaf",
    "QOrderMap",
    "QOrderedSet",
    "QRelation",
    "QSubset",
    "QorderError",
    "SizeCap",
    "builtin",
    "check_map",
    "co_yoneda",
    "completeness_report",
    "compose",
    "concept_lattice",
    "copresheaves",
    "dist_from_pair",
    "dual_kan",
    "find_adjoint",
    "fixed_points",
    "hom_join",
    "hom_meet",
    "imp_left",
    "imp_right",
    "inf",
    "is_cauchy_complete",
    "is_complete",
    "is_galois",
    "isbell",
    "kan",
    "kernels",
    "load_quantale",
    "macneille",
    "make_ordered",
    "presheaves",
    "resolve_quantale",
    "sup",
    "underlying_preorder",
    "validate_relation",
    "yoneda",
]
