"""Exact supertropical matrix algebra in logarithmic notation."""

from .determinant import Singularity, bid, classify_singularity, per, per_assignment
from .errors import (
    DomainError,
    InternalError,
    ParseError,
    ShapeError,
    SingularityError,
    SupertropError,
    WitnessError,
)
from .matrix import GenPerm, Matrix, format_matrix, identity, mat, mat_mul, parse_matrix, transpose
from .nabla import adj, nabla2, quasi_pack
from .semiring import ONE, ONE_GHOST, ZERO, SymPair, TropElem, elem, format_scalar, parse_scalar

__version__ = "0.1.0"
