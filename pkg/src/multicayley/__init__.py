"""Exact enumeration and closed-form counting of multitype Cayley trees."""

from .algebra import Monomial, Polynomial, PowerSeries, Var, matrix_determinant, x, xv, z
from .limits import PreconditionError, SizeError, limits, set_limits
from .trees import (
    CompleteTypeCounts,
    DegreeClassCounts,
    EdgeTypeMatrix,
    IndegreeVector,
    Profile,
    RootedForest,
    RootedMultitypeTree,
    TreeError,
    Vertex,
)

__version__ = "0.1.0"
