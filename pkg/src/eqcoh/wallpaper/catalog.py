"""The seventeen plane crystallographic groups as point-group actions on the torus."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import sympy

from ..groupalg import FinGroup, GModule, GroupHom2, cyclic_group, dihedral_group, sign_homomorphisms, trivial_group

Mat2 = tuple[tuple[int, int], tuple[int, int]]
Vec2 = tuple[Fraction, Fraction]

# lattice bases as exact Cartesian column vectors
_BASES = {
    "square": (("1", "0"), ("0", "1")),
    "rhombic": (("1", "1"), ("-1", "1")),
    "hexagonal": (("1", "0"), ("1/2", "sqrt(3)/2")),
}

_ROT60 = (("1/2", "-sqrt(3)/2"), ("sqrt(3)/2", "1/2"))
_ROT120 = (("-1/2", "-sqrt(3)/2"), ("sqrt(3)/2", "-1/2"))
_ROT90 = (("0", "-1"), ("1", "0"))
_MINUS = (("-1", "0"), ("0", "-1"))
_FLIP_X = (("-1", "0"), ("0", "1"))
_FLIP_Y = (("1", "0"), ("0", "-1"))

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class _Spec:
    name: str
    row: str
    lattice: str
    group: tuple[str, int]
    generators: Mapping[str, tuple[tuple[str, str], tuple[str, str]]]
    vectors: Mapping[str, tuple[Fraction, Fraction]] = field(default_factory=dict)


_SPECS = (
    _Spec("p1", "p1", "square", ("C", 1), {}),
    _Spec("p2", "p2", "square", ("C", 2), {"C": _MINUS}),
    _Spec("p3", "p3", "hexagonal", ("C", 3), {"C": _ROT120}),
    _Spec("p4", "p4", "square", ("C", 4), {"C": _ROT90}),
    _Spec("p6", "p6", "hexagonal", ("C", 6), {"C": _ROT60}),
    _Spec("pm", "pm/pg", "square", ("D", 1), {"s1": _FLIP_X}),
    _Spec("pg", "pm/pg", "square", ("D", 1), {"s1": _FLIP_X}, {"s1": (0, _HALF)}),
    _Spec("cm", "cm", "rhombic", ("D", 1), {"s1": _FLIP_X}),
    _Spec("pmm", "pmm/pmg/pgg", "square", ("D", 2), {"C": _MINUS, "s1": _FLIP_X}),
    _Spec("pmg", "pmm/pmg/pgg", "square", ("D", 2), {"C": _MINUS, "s1": _FLIP_X},
          {"s1": (0, _HALF), "s2": (0, 0), "C": (0, _HALF)}),
    _Spec("pgg", "pmm/pmg/pgg", "square", ("D", 2), {"C": _MINUS, "s1": _FLIP_X},
          {"s1": (0, _HALF), "s2": (_HALF, 0), "C": (_HALF, _HALF)}),
    _Spec("cmm", "cmm", "rhombic", ("D", 2), {"C": _MINUS, "s1": _FLIP_X}),
    _Spec("p3m1", "p3m1", "hexagonal", ("D", 3), {"C": _ROT120, "s1": _FLIP_X}),
    _Spec("p31m", "p31m", "hexagonal", ("D", 3), {"C": _ROT120, "s1": _FLIP_Y}),
    _Spec("p4m", "p4m/p4g", "square", ("D", 4), {"C": _ROT90, "s1": _FLIP_X}),
    # s_l = C^(l-1) s1, so sigma_d = sigma_x C4 is s4, sigma_y is s3, sigma_d' is s2
    _Spec("p4g", "p4m/p4g", "square", ("D", 4), {"C": _ROT90, "s1": _FLIP_X},
          {"C": (0, _HALF), "C^2": (_HALF, _HALF), "C^3": (_HALF, 0),
           "s1": (0, _HALF), "s4": (0, 0), "s3": (_HALF, 0), "s2": (_HALF, _HALF)}),
    _Spec("p6m", "p6m", "hexagonal", ("D", 6), {"C": _ROT60, "s1": _FLIP_Y}),
)

NAMES = tuple(s.name for s in _SPECS)
NONSYMMORPHIC = ("pg", "pmg", "pgg", "p4g")

# one representative per distinct point-group action, in table order
ACTION_ROWS = ("p1", "p2", "p3", "p4", "p6", "pm/pg", "cm", "pmm/pmg/pgg", "cmm",
               "p3m1", "p31m", "p4m/p4g", "p6m")


def row_representative(row: str) -> str:
    return row.split("/")[0]


@dataclass(frozen=True)
class WallpaperEntry:
    """One plane group: lattice, point group action and vector system.

    ``generator_matrices`` act on lattice coordinates (columns), and
    ``vector_system`` maps every element label to its translation part in
    lattice coordinates.
    """

    name: str
    row: str
    lattice: str
    lattice_basis: tuple[tuple[str, str], tuple[str, str]]
    point_group: FinGroup
    generator_matrices: Mapping[str, Mat2]
    vector_system: Mapping[str, Vec2]
    phis: Mapping[str, GroupHom2]

    @property
    def symmorphic(self) -> bool:
        return not any(any(v) for v in self.vector_system.values())

    @property
    def grid(self) -> str:
        return "triangular" if self.lattice == "hexagonal" else "square"

    def lattice_module(self) -> GModule:
        return lattice_action_matrices(self.name)

    def orientation_reversing(self) -> bool:
        M = self.lattice_module()
        return any(_det(M.action[g]) == -1 for g in range(self.point_group.order))

    def vector(self, g: int) -> Vec2:
        return self.vector_system[self.point_group.label(g)]

    def to_json(self) -> dict:
        G = self.point_group
        M = self.lattice_module()
        return {
            "name": self.name,
            "row": self.row,
            "lattice": self.lattice,
            "lattice_basis": [list(v) for v in self.lattice_basis],
            "point_group": G.name,
            "elements": list(G.elements),
            "generator_matrices": {k: [list(r) for r in m] for k, m in self.generator_matrices.items()},
            "action": {G.label(g): [list(r) for r in M.action[g]] for g in range(G.order)},
            "vector_system": {k: [str(x) for x in v] for k, v in self.vector_system.items()},
            "phis": sorted(self.phis),
            "symmorphic": self.symmorphic,
            "orientation_reversing": self.orientation_reversing(),
        }


def _det(m) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _to_lattice(lattice: str, cartesian) -> Mat2:
    """Exact change of basis ``B^-1 R B`` of a Cartesian matrix to lattice coordinates."""
    basis = sympy.Matrix([[sympy.sympify(x) for x in v] for v in _BASES[lattice]]).T
    R = sympy.Matrix([[sympy.sympify(x) for x in row] for row in cartesian])
    L = sympy.simplify(basis.inv() * R * basis)
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            x = sympy.nsimplify(L[i, j])
            if not x.is_integer:
                raise ValueError(f"matrix does not preserve the {lattice} lattice")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)  # type: ignore[return-value]


def _point_group(kind: str, n: int) -> FinGroup:
    if kind == "C":
        return trivial_group() if n == 1 else cyclic_group(n)
    return dihedral_group(n)


def _build(spec: _Spec) -> WallpaperEntry:
    G = _point_group(*spec.group)
    mats = {label: _to_lattice(spec.lattice, m) for label, m in spec.generators.items()}
    vectors = {G.label(g): (Fraction(0), Fraction(0)) for g in range(G.order)}
    for label, v in spec.vectors.items():
        vectors[G.label(G.index(label))] = (Fraction(v[0]), Fraction(v[1]))
    phis = sign_homomorphisms(G) if G.order > 1 else {}
    basis = tuple(tuple(str(x) for x in v) for v in _BASES[spec.lattice])
    return WallpaperEntry(spec.name, spec.row, spec.lattice, basis, G, mats, vectors, phis)  # type: ignore[arg-type]


@lru_cache(maxsize=None)
def _catalog() -> tuple[WallpaperEntry, ...]:
    return tuple(_build(s) for s in _SPECS)


def catalog() -> list[WallpaperEntry]:
    """All seventeen entries in the conventional order."""
    return list(_catalog())


def entry(name: str) -> WallpaperEntry:
    for e in _catalog():
        if e.name == name:
            return e
    raise KeyError(f"unknown plane group {name!r}; expected one of {', '.join(NAMES)}")


@lru_cache(maxsize=None)
def lattice_action_matrices(name: str) -> GModule:
    """The lattice as a left module over the point group."""
    e = entry(name)
    G = e.point_group
    if not e.generator_matrices:
        return GModule.trivial(G, 2)
    images = {G.index(label): m for label, m in e.generator_matrices.items()}
    return GModule.from_generators(G, images, f"Pi({e.row})")


def dual_action(name: str) -> GModule:
    """The transpose-inverse action on the dual lattice."""
    M = lattice_action_matrices(name)
    dual = M.dual()
    return GModule(dual.group, dual.rank, dual.action, f"Pi^({entry(name).row})")


def phi_names(name: str) -> list[str]:
    return sorted(entry(name).phis)


def coefficient_module(name: str, coeff: str) -> GModule:
    """``Z`` for ``"trivial"``, otherwise ``Z_phi`` for an available ``phi``."""
    from ..groupalg import twist_module

    e = entry(name)
    base = GModule.trivial(e.point_group)
    if coeff == "trivial":
        return base
    if coeff not in e.phis:
        avail = ", ".join(sorted(e.phis)) or "none"
        raise KeyError(f"{coeff} is not defined for {name} (point group {e.point_group.name}); available: {avail}")
    return twist_module(base, e.phis[coeff])
