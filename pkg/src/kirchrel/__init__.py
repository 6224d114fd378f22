"""Linear, Lagrangian and Kirchhoff relations over prime fields, with circuit synthesis."""

from .gfp import FieldScalar, ModulusError, Prime
from .exactmat import ExactMatrix, Permutation, ShapeError
from .linrel import AffineRelationError, AffineSubspace, BoundaryError, LinearRelation
from .lagrel import DoubledRelation, NotLagrangianError
from .kirrel import NotKirchhoffError, classify

__all__ = [
    "AffineRelationError",
    "AffineSubspace",
    "BoundaryError",
    "DoubledRelation",
    "ExactMatrix",
    "FieldScalar",
    "LinearRelation",
    "ModulusError",
    "NotKirchhoffError",
    "NotLagrangianError",
    "Permutation",
    "Prime",
    "ShapeError",
    "classify",
]
