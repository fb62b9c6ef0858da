"""Exact integer linear algebra: Smith forms, cochain cohomology, abelian groups."""

from .abelian import (
    AbelianMap,
    AbelianPresentation,
    SubgroupData,
    cokernel,
    format_group,
    image_subgroup,
    kernel_subgroup,
    presentation_from_relations,
    quotient_by,
)
from .complexes import ComplexError, check_complex, cohomology_at, mod_p_cohomology_at
from .elimination import Elimination, kernel_mod_p, rank_mod_p, reduce_mod_p, rref_mod_p
from .matrix import IntMatrix
from .smith import SmithForm, invariant_factors, smith_normal_form

__all__ = [
    "AbelianMap",
    "AbelianPresentation",
    "ComplexError",
    "Elimination",
    "IntMatrix",
    "SmithForm",
    "SubgroupData",
    "check_complex",
    "cohomology_at",
    "cokernel",
    "format_group",
    "image_subgroup",
    "invariant_factors",
    "kernel_mod_p",
    "kernel_subgroup",
    "mod_p_cohomology_at",
    "presentation_from_relations",
    "quotient_by",
    "rank_mod_p",
    "reduce_mod_p",
    "rref_mod_p",
    "smith_normal_form",
]
