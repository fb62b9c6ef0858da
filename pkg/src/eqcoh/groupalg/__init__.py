"""Finite groups, integral modules over them, and free resolutions."""

from .group import FinGroup, cyclic_group, dihedral_group, trivial_group
from .module import (
    GModule,
    GroupHom2,
    mat_det,
    mat_identity,
    mat_mul,
    mat_transpose,
    restrict_module,
    sign_homomorphisms,
    twist_module,
)
from .resolution import Resolution, normalized_bar_resolution, periodic_resolution_cyclic

__all__ = [
    "FinGroup",
    "GModule",
    "GroupHom2",
    "Resolution",
    "cyclic_group",
    "dihedral_group",
    "mat_det",
    "mat_identity",
    "mat_mul",
    "mat_transpose",
    "normalized_bar_resolution",
    "periodic_resolution_cyclic",
    "restrict_module",
    "sign_homomorphisms",
    "trivial_group",
    "twist_module",
]
