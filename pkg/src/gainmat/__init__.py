"""Exact matroids on gain graphs and symmetric rigidity checks."""

from .errors import (
    BudgetExceededError,
    GainmatError,
    InputError,
    PreconditionError,
    UnsupportedError,
)
from .exactalg import ExactMatrix, Scalar, exterior_square, parse_scalar, rank
from .gaingraph import Edge, GainGraph
from .groups import (
    BilinearMap,
    DihedralElement,
    GroupDescriptor,
    Representation,
    Rotation,
    Translation,
    augmented,
    dowling,
    exterior,
    natural,
)
from .linrep import GenericAssignment, linear_rank
from .matroids import CountFunction, base_value, dilworth_rank, is_independent, matroid_rank
from .rigidity import Verdict, check

__version__ = "0.1.0"

__all__ = [
    "BilinearMap",
    "BudgetExceededError",
    "CountFunction",
    "DihedralElement",
    "Edge",
    "ExactMatrix",
    "GainGraph",
    "GainmatError",
    "GenericAssignment",
    "GroupDescriptor",
    "InputError",
    "PreconditionError",
    "Representation",
    "Rotation",
    "Scalar",
    "Translation",
    "UnsupportedError",
    "Verdict",
    "augmented",
    "base_value",
    "check",
    "dilworth_rank",
    "dowling",
    "exterior",
    "exterior_square",
    "is_independent",
    "linear_rank",
    "matroid_rank",
    "natural",
    "parse_scalar",
    "rank",
]
