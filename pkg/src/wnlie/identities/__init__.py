"""Polynomial identities: matrix evaluation, central polynomials and Lie identity testing."""

from .polynomials import (
    CentralReport,
    CentralValue,
    IdentityVerdict,
    LiePolynomial,
    NcPolynomial,
    central_identity_p2,
    commutator,
    identity_catalog,
    is_central_value,
    lie_eval,
    lie_expand,
    matrix_units,
    nc_eval,
    random_matrix,
    satisfies_identity,
    standard_polynomial,
    verify_central_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
