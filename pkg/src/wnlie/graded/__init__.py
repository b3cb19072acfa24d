"""Z^n-graded Lie algebras evaluated inside finite degree windows."""

from .analysis import (
    ClosureReport,
    DerivationFiltration,
    H2Degree0Report,
    ProbeReport,
    Reduction,
    abelian_section_probe,
    abelianization_degrees,
    check_interior_derivation,
    cocycle_holds,
    derivation_filtration,
    find_reduction,
    graded_closure,
    graded_h2_degree0,
    graded_series,
    pushforward,
    verify_reduction,
)
from .core import (
    Component,
    GradedLie,
    Window,
    WindowedView,
    add_deg,
    as_degree,
    explicit,
    explicit_json,
    from_explicit_json,
    graded_from_findim,
    window_view,
)

__all__ = [name for name in dir() if not name.startswith("_")]
