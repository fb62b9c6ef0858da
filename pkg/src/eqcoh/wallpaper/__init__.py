"""Plane crystallographic groups: lattices, point-group actions and torus cell structures."""

from .catalog import (
    ACTION_ROWS,
    NAMES,
    NONSYMMORPHIC,
    WallpaperEntry,
    catalog,
    coefficient_module,
    dual_action,
    entry,
    lattice_action_matrices,
    phi_names,
    row_representative,
)
from .complexes import (
    flag_subdivision,
    flag_torus,
    hexagonal_d6_complex,
    p6m_line_orbits,
    standard_torus,
    torus_gcw,
    wedge_orbits,
)
from .conjugacy import DEFAULT_BOUND, action_image, bounded_conjugacy_search, bounded_intertwiner_search


def catalog_json() -> list[dict]:
    """The catalog as JSON-ready data, including orbit counts of each torus complex."""
    out = []
    for e in catalog():
        data = e.to_json()
        data["torus_orbits"] = torus_gcw(e.name).orbit_counts()
        out.append(data)
    return out


__all__ = [
    "ACTION_ROWS",
    "DEFAULT_BOUND",
    "NAMES",
    "NONSYMMORPHIC",
    "WallpaperEntry",
    "action_image",
    "bounded_conjugacy_search",
    "bounded_intertwiner_search",
    "catalog",
    "catalog_json",
    "coefficient_module",
    "dual_action",
    "entry",
    "flag_subdivision",
    "flag_torus",
    "hexagonal_d6_complex",
    "lattice_action_matrices",
    "p6m_line_orbits",
    "phi_names",
    "row_representative",
    "standard_torus",
    "torus_gcw",
    "wedge_orbits",
]
