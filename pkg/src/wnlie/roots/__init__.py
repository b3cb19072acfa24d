"""Weight decompositions, root data and quasi-minuscule weights."""

from .modules import (
    CoverVerdict,
    WeightedModule,
    is_quasi_minuscule,
    qm_cover_check,
    qm_weights,
    simple_module,
    weyl_dimension,
    weyl_reflections,
)
from .torus import (
    AlphaString,
    Rank1Report,
    Root,
    RootDatum,
    TorusSpec,
    WeightSpace,
    alpha_string,
    check_torus,
    default_torus,
    rank1_classify,
    root_data,
    weight_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
