"""Families of Lie algebras: Witt and Virasoro, loops, genus-0 vector fields and ``s ⊗ A``."""

from .affine import (
    CoordinateAlgebra,
    Coordinatization,
    IdealShape,
    TransportReport,
    affine_construct,
    affine_coordinatize,
    base_field,
    derivation_transport,
    equivariant_products,
    hom_s,
    ideal_shape_check,
    is_lie_isomorphism,
    matrix_algebra,
    product_algebra,
    simple_extension,
    standard_embedding,
    symmetric_product,
    tensor_algebra,
    tensor_derivation,
    truncated_polynomials,
)
from .graded_families import (
    abelian_tower,
    axis_sum,
    current,
    current_derivation_matrix,
    loop,
    loop_graded,
    multiloop,
    virasoro_hat,
    witt,
)
from .kn import INF, KNGenus0, RationalVectorField, combine, kn_genus0
from .registry import FAMILIES, from_family_json

__all__ = [name for name in dir() if not name.startswith("_")]
