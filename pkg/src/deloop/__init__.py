"""Exact low-degree checks around Hochschild, cyclic and Lie homology.

Everything is computed over the rationals with :class:`fractions.Fraction`.
"""

from .algebra import (
    FinDimAlgebra,
    base_field,
    dual_numbers,
    group_algebra_cyclic,
    matrix_algebra,
    truncated_poly,
)
from .budget import DEFAULT_BUDGET, DEFAULT_CAP, SizeBudgetExceeded
from .hochschild import cyclic_homology, hochschild_homology
from .homology import HomologyReport
from .lie import FinDimLieAlgebra, gl, lie_homology, primitive_dim, sl2
from .linalg import RatMatrix, kernel_basis, rank

__version__ = "0.1.0"

__all__ = [
    "FinDimAlgebra",
    "base_field",
    "dual_numbers",
    "group_algebra_cyclic",
    "matrix_algebra",
    "truncated_poly",
    "DEFAULT_BUDGET",
    "DEFAULT_CAP",
    "SizeBudgetExceeded",
    "cyclic_homology",
    "hochschild_homology",
    "HomologyReport",
    "FinDimLieAlgebra",
    "gl",
    "lie_homology",
    "primitive_dim",
    "sl2",
    "RatMatrix",
    "kernel_basis",
    "rank",
]
