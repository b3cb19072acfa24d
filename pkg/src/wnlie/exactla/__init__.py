"""Exact scalars and linear algebra."""

from .fields import QQ, FieldElement, FieldSpec, field_extension, scalar_from_json, scalar_to_json
from .linalg import (
    Echelon,
    Solution,
    Subspace,
    identity,
    matmul,
    matvec,
    minimal_polynomial,
    nullspace,
    rank,
    rref,
    solve_linear,
    subspace_ops,
    transpose,
)

__all__ = [
    "QQ",
    "FieldElement",
    "FieldSpec",
    "field_extension",
    "scalar_from_json",
    "scalar_to_json",
    "Echelon",
    "Solution",
    "Subspace",
    "identity",
    "matmul",
    "matvec",
    "minimal_polynomial",
    "nullspace",
    "rank",
    "rref",
    "solve_linear",
    "subspace_ops",
    "transpose",
]
