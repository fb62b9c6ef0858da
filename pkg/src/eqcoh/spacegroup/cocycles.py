"""Cocycles of plane groups from their vector systems, and their classes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..groupalg import FinGroup, GModule
from ..groupcoh import Cocycle, cocycle_class, group_cohomology, restriction_map
from ..intlin import AbelianPresentation, SubgroupData
from ..wallpaper import bounded_intertwiner_search, dual_action, entry, lattice_action_matrices

Vec = tuple[Fraction, Fraction]
IntVec = tuple[int, int]


class VectorSystemError(ValueError):
    """The translation parts do not define a group extension of the point group by the lattice."""


@dataclass(frozen=True)
class VectorSystem:
    """Translation parts ``a[g]`` (lattice coordinates) of chosen lifts of the point group."""

    name: str
    module: GModule
    a: tuple[Vec, ...]

    @classmethod
    def of(cls, name: str) -> "VectorSystem":
        e = entry(name)
        G = e.point_group
        return cls(name, lattice_action_matrices(name), tuple(e.vector(g) for g in range(G.order)))

    @property
    def group(self) -> FinGroup:
        return self.module.group

    def shifted(self, shifts: Mapping[int, tuple[int, int]] | None = None,
                origin: Vec | None = None) -> "VectorSystem":
        """Change lifts by lattice vectors ``shifts[g]`` and move the origin to ``origin``."""
        out = []
        ox, oy = origin or (Fraction(0), Fraction(0))
        for g, (x, y) in enumerate(self.a):
            A = self.module.action[g]
            mx, my = (shifts or {}).get(g, (0, 0))
            # conjugating by a translation t changes a_g by g t - t
            gx = A[0][0] * ox + A[0][1] * oy - ox
            gy = A[1][0] * ox + A[1][1] * oy - oy
            out.append((x + mx + gx, y + my + gy))
        return VectorSystem(self.name, self.module, tuple(out))


@dataclass(frozen=True)
class NuCocycle:
    """``nu(g, h) = a_g + g a_h - a_{gh}``, a 2-cocycle for the left lattice module."""

    group: FinGroup
    module: GModule
    values: Mapping[tuple[int, int], IntVec]

    def __call__(self, g: int, h: int) -> IntVec:
        return self.values[(g, h)]

    def left_defect(self) -> tuple[tuple[int, int, int], IntVec] | None:
        """First triple violating ``g nu(h,k) - nu(gh,k) + nu(g,hk) - nu(g,h) = 0``."""
        G, acts = self.group, self.module.action
        for g, h, k in itertools.product(range(G.order), repeat=3):
            A = acts[g]
            u = self(h, k)
            val = [
                A[i][0] * u[0] + A[i][1] * u[1]
                - self(G.mul(g, h), k)[i] + self(g, G.mul(h, k))[i] - self(g, h)[i]
                for i in range(2)
            ]
            if any(val):
                return (g, h, k), (val[0], val[1])
        return None

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.values.values())

    def as_right_cocycle(self) -> Cocycle:
        """The same class in the engine's right-action convention: ``(g, h) -> nu(h^-1, g^-1)``."""
        G = self.group
        vals = {}
        for g, h in itertools.product(G.non_identity, repeat=2):
            v = self(G.inv(h), G.inv(g))
            if any(v):
                vals[(g, h)] = v
        return Cocycle(G, self.module, 2, vals)


@dataclass(frozen=True)
class TauCocycle:
    """``tau(g, h; k) = k(m)`` for the lattice vector ``m = values[(g, h)] = nu(h^-1, g^-1)``."""

    group: FinGroup
    module: GModule
    values: Mapping[tuple[int, int], IntVec]

    def __call__(self, g: int, h: int) -> IntVec:
        return self.values[(g, h)]

    def is_trivial(self) -> bool:
        return not any(any(v) for v in self.values.values())

    def dual_defect(self) -> tuple[tuple[int, int, int], IntVec] | None:
        """Check the cocycle law of ``tau`` on the character group.

        The group acts on characters by ``(g k)(m) = k(g^-1 m)``, so writing
        ``tau`` through lattice vectors the law reads
        ``m(h,k) - m(gh,k) + m(g,hk) - k^-1 m(g,h) = 0``.
        """
        G, acts = self.group, self.module.action
        for g, h, k in itertools.product(range(G.order), repeat=3):
            A = acts[G.inv(k)]
            u = self(g, h)
            val = [
                self(h, k)[i] - self(G.mul(g, h), k)[i] + self(g, G.mul(h, k))[i]
                - (A[i][0] * u[0] + A[i][1] * u[1])
                for i in range(2)
            ]
            if any(val):
                return (g, h, k), (val[0], val[1])
        return None


def nu(vs: VectorSystem) -> NuCocycle:
    """The lattice-valued cocycle measuring the failure of ``g -> a_g`` to split."""
    G, acts = vs.group, vs.module.action
    values = {}
    for g, h in itertools.product(range(G.order), repeat=2):
        A = acts[g]
        ah = vs.a[h]
        vec = tuple(vs.a[g][i] + A[i][0] * ah[0] + A[i][1] * ah[1] - vs.a[G.mul(g, h)][i] for i in range(2))
        if any(x.denominator != 1 for x in vec):
            raise VectorSystemError(
                f"nu({G.label(g)}, {G.label(h)}) = {tuple(map(str, vec))} is not a lattice vector"
            )
        values[(g, h)] = (int(vec[0]), int(vec[1]))
    return NuCocycle(G, vs.module, values)


def tau(c: NuCocycle) -> TauCocycle:
    G = c.group
    values = {(g, h): c(G.inv(h), G.inv(g)) for g, h in itertools.product(range(G.order), repeat=2)}
    return TauCocycle(G, c.module, values)


def nu_class(name: str) -> tuple[int, ...]:
    """Coordinates of ``[nu]`` in ``H^2(P; lattice)`` (canonical Smith coordinates)."""
    c = nu(VectorSystem.of(name))
    if c.group.order == 1:
        return ()
    return cocycle_class(c.as_right_cocycle())


def _reflection_subgroups(G: FinGroup) -> list[tuple[str, tuple[int, ...]]]:
    """One order-2 subgroup per conjugacy class of reflections ``s1``, ``s2``."""
    if not G.name.startswith("D"):
        return []
    n = G.order // 2
    labels = ["s1"] if n % 2 else ["s1", "s2"]
    return [(lab, G.closure([G.index(lab)])) for lab in labels]


def reflection_coordinates(name: str) -> dict[str, tuple[int, ...]]:
    """Restrictions of ``[nu]`` to the subgroups generated by each reflection class."""
    G = entry(name).point_group
    M = lattice_action_matrices(name)
    coords = nu_class(name)
    out = {}
    for lab, sub in _reflection_subgroups(G):
        f = restriction_map(G, sub, M, 2)
        out[lab] = f.target.normalize(list(f.apply(coords)))
    return out


@dataclass(frozen=True)
class TwistClassReport:
    name: str
    cohomology: AbelianPresentation
    coordinates: tuple[int, ...]
    nonzero: bool
    reflection_coordinates: dict[str, tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "H2": str(self.cohomology),
            "coordinates": list(self.coordinates),
            "nonzero": self.nonzero,
            "reflection_coordinates": {k: list(v) for k, v in self.reflection_coordinates.items()},
        }


def twist_class(name: str) -> TwistClassReport:
    G = entry(name).point_group
    if G.order == 1:
        H = AbelianPresentation(0)
        return TwistClassReport(name, H, (), False, {})
    H = group_cohomology(G, lattice_action_matrices(name), 2)
    coords = nu_class(name)
    return TwistClassReport(name, H, coords, not H.is_zero_element(coords), reflection_coordinates(name))


@dataclass(frozen=True)
class CorrespondenceReport:
    name: str
    lattice_side: AbelianPresentation
    dual_side: AbelianPresentation
    intertwiner: tuple | None
    lattice_class_nonzero: bool
    dual_class_nonzero: bool | None

    @property
    def ok(self) -> bool:
        return (self.lattice_side == self.dual_side
                and self.dual_class_nonzero is not None
                and self.dual_class_nonzero == self.lattice_class_nonzero)


def correspondence_check(name: str) -> CorrespondenceReport:
    """Compare ``H^2(P; lattice)`` with ``H^2(P; dual lattice)`` and transport ``[nu]``.

    The dual lattice with the transpose-inverse action is the first
    cohomology of the torus.  When a unimodular intertwiner ``T`` is found,
    ``T nu`` is a cocycle for the dual module and its class is compared.
    """
    e = entry(name)
    G = e.point_group
    M = lattice_action_matrices(name)
    D = dual_action(name)
    if G.order == 1:
        zero = AbelianPresentation(0)
        return CorrespondenceReport(name, zero, zero, ((1, 0), (0, 1)), False, False)
    left = group_cohomology(G, M, 2)
    right = group_cohomology(G, D, 2)
    c = nu(VectorSystem.of(name)).as_right_cocycle()
    lattice_nonzero = not left.is_zero_element(cocycle_class(c))
    T = bounded_intertwiner_search(M, D)
    dual_nonzero = None
    if not lattice_nonzero and left == right:
        # any isomorphism sends the zero class to zero
        dual_nonzero = False
    elif T is not None:
        moved = {k: (T[0][0] * v[0] + T[0][1] * v[1], T[1][0] * v[0] + T[1][1] * v[1]) for k, v in c.values.items()}
        dc = Cocycle(G, D, 2, moved)
        dual_nonzero = not right.is_zero_element(cocycle_class(dc))
    return CorrespondenceReport(name, left, right, T, lattice_nonzero, dual_nonzero)


def classes_generate(names: tuple[str, ...]) -> bool:
    """Whether the classes of the named groups (same point group action) generate ``H^2(P; lattice)``."""
    M = lattice_action_matrices(names[0])
    for n in names[1:]:
        if lattice_action_matrices(n) != M:
            raise ValueError("groups act differently on their lattices")
    H = group_cohomology(M.group, M, 2)
    return SubgroupData.generated_by(H, [nu_class(n) for n in names]).iso_type == H


__all__ = [
    "CorrespondenceReport",
    "NuCocycle",
    "TauCocycle",
    "TwistClassReport",
    "VectorSystem",
    "VectorSystemError",
    "classes_generate",
    "correspondence_check",
    "nu",
    "nu_class",
    "reflection_coordinates",
    "tau",
    "twist_class",
]

