"""Equivariant CW complexes and their Borel cohomology."""

from .borel import (
    BorelComplex,
    FilteredCohomology,
    SplitReport,
    TotalCoboundary,
    borel_cohomology,
    borel_filtered_cohomology,
    fixed_point_split_check,
    induced_module_on_cohomology,
    mod_p_filtration_dimensions,
    period_cycles,
    relative_borel_cohomology,
    restriction_to_subcomplex,
)
from .complex import (
    Expansion,
    GCWComplex,
    GCWError,
    OrbitCell,
    TorusGeometry,
    cochain_module,
    expand_to_cw,
    point_complex,
)

__all__ = [
    "BorelComplex",
    "Expansion",
    "FilteredCohomology",
    "GCWComplex",
    "GCWError",
    "OrbitCell",
    "SplitReport",
    "TorusGeometry",
    "TotalCoboundary",
    "borel_cohomology",
    "borel_filtered_cohomology",
    "cochain_module",
    "expand_to_cw",
    "fixed_point_split_check",
    "induced_module_on_cohomology",
    "mod_p_filtration_dimensions",
    "period_cycles",
    "point_complex",
    "relative_borel_cohomology",
    "restriction_to_subcomplex",
]
