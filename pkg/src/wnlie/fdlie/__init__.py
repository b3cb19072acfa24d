"""Finite-dimensional Lie algebras: construction and structure theory."""

from .algebra import (
    FinDimLie,
    JacobiReport,
    Quotient,
    build,
    change_basis,
    direct_sum,
    extend_scalars,
    from_matrices,
    from_sc,
    ideal_generated,
    jacobi_defect,
    jacobi_vector,
    quotient,
    restrict_scalars,
    restrict_to,
    semidirect,
    subalgebra_generated,
)
from .analysis import (
    CentroidReport,
    DerivationAlgebra,
    CharacteristicReport,
    FiltrationReport,
    FiltrationStep,
    H2Report,
    IdealReport,
    associative_closure,
    center,
    centroid,
    centroid_commutes_on_derived,
    commutant,
    derivations,
    filtration_from,
    filtration_theoremA,
    h2_trivial,
    is_characteristic,
    is_derivation,
    is_perfect,
    is_solvable,
    killing_form,
    killing_orthogonal,
    largest_perfect_ideal,
    paper_radical,
    radical_of_subalgebra,
    series,
    simple_ideals,
    simple_quotients,
    solvable_radical,
)
from .corpus import random_corpus
from .zoo import abelian, adjoint_matrices, gl_n, heisenberg, sl2, sl2_irrep, sl2_matrices, sl2_with_module, sl_n, two_dim_solvable

__all__ = [name for name in dir() if not name.startswith("_")]
