"""Lie algebras of set-arrangements over QQ and prime fields.

The modules build on each other: ``coeff`` (scalars, row spaces),
``arrangement`` (set-arrangements, 2-flats, closed sub-arrangements),
``freelie`` (free Lie algebras, Lyndon basis, Witt formula), ``presented``
(graded quotients), ``decompose`` (localization and decomposition checks),
``relparse`` (file format) and ``cli``.
"""

from .arrangement import (
    ArrangementError,
    Matroid3,
    SetArrangement,
    SubArrangement,
    arrangement_from_normals,
    complete_arrangement,
    is_closed,
    matroid_from_arrangement,
    singleton_partition,
    two_flats,
    validate_arrangement,
    validate_partition,
)
from .coeff import QQ, Field, RowSpace
from .decompose import (
    check_condition6,
    check_replacement,
    custom_presentation,
    holonomy_presentation,
    localized,
    partial_decomposition,
    project,
    verify_decomposition,
)
from .freelie import Generator, LieElement, LyndonBasis, bracket, gen, witt_dimension
from .presented import GradedQuotient, Presentation, Relation, build_quotient
from .relparse import ParseError, load, parse_arrangement_file, parse_lie_expr

__version__ = "0.1.0"

__all__ = [
    "ArrangementError", "Matroid3", "SetArrangement", "SubArrangement",
    "arrangement_from_normals", "complete_arrangement", "is_closed",
    "matroid_from_arrangement", "singleton_partition", "two_flats",
    "validate_arrangement", "validate_partition",
    "QQ", "Field", "RowSpace",
    "check_condition6", "check_replacement", "custom_presentation",
    "holonomy_presentation", "localized", "partial_decomposition", "project",
    "verify_decomposition",
    "Generator", "LieElement", "LyndonBasis", "bracket", "gen", "witt_dimension",
    "GradedQuotient", "Presentation", "Relation", "build_quotient",
    "ParseError", "load", "parse_arrangement_file", "parse_lie_expr",
]
