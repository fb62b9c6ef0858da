"""G-CW complexes given by orbit representatives, and their expansions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from ..groupalg import FinGroup, GModule
from ..intlin import AbelianPresentation, IntMatrix, cohomology_at

# boundary term (i, g, c) of an orbit representative: c * (g . rep_i)
BoundaryTerm = tuple[int, int, int]


class GCWError(ValueError):
    """A G-CW complex failed validation."""


@dataclass(frozen=True)
class OrbitCell:
    stabilizer: tuple[int, ...]
    label: str = ""


@dataclass(frozen=True)
class TorusGeometry:
    """Enough geometry to locate the loops of a torus complex.

    ``lattice_action[g]`` is the integer matrix of ``g`` on lattice
    coordinates and ``edge_vectors[k]`` the displacement (end minus start)
    of the representative of 1-cell orbit ``k``.
    """

    lattice_action: tuple[tuple[tuple[int, ...], ...], ...]
    edge_vectors: tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class Expansion:
    """The underlying CW complex: one cell per coset per orbit.

    ``cells[d]`` lists ``(orbit, coset representative)`` pairs,
    ``perm[d][g][k]`` is the index of ``g`` applied to cell ``k`` and
    ``boundary[d]`` is the integer matrix from degree ``d`` to ``d-1``.
    """

    cells: tuple[tuple[tuple[int, int], ...], ...]
    perm: tuple[tuple[tuple[int, ...], ...], ...]
    boundary: tuple[IntMatrix, ...]
    orbit_of: tuple[tuple[int, ...], ...]

    @property
    def ranks(self) -> list[int]:
        return [len(c) for c in self.cells]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.ranks))

    def coboundary(self, d: int) -> IntMatrix:
        """Cellular coboundary from degree ``d`` to ``d+1`` (transpose of the boundary)."""
        top = len(self.cells) - 1
        if d < 0:
            return IntMatrix.zeros(self.ranks[0], 0)
        if d >= top:
            return IntMatrix.zeros(0, self.ranks[d] if d <= top else 0)
        return self.boundary[d + 1].transpose()

    def cohomology(self, d: int) -> AbelianPresentation:
        top = len(self.cells) - 1
        if d > top:
            return AbelianPresentation(0)
        return cohomology_at(self.coboundary(d - 1), self.coboundary(d))


@dataclass(frozen=True)
class GCWComplex:
    """Equivariant cells ``G/H x e^d`` with a Z[G]-linear boundary.

    ``boundary[d][j]`` lists terms ``(i, g, c)`` with
    ``d(rep_j) = sum c * (g . rep_i)`` over degree ``d-1`` orbits;
    ``boundary[0]`` is empty.  Stabilizers must fix their cells pointwise,
    so the group permutes expanded cells without signs.
    """

    group: FinGroup
    cells: tuple[tuple[OrbitCell, ...], ...]
    boundary: tuple[tuple[tuple[BoundaryTerm, ...], ...], ...]
    name: str = ""
    geometry: TorusGeometry | None = field(default=None, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def orbit_counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    @cached_property
    def expansion(self) -> Expansion:
        G = self.group
        cells, perms, orbit_of, index = [], [], [], []
        for d, orbits in enumerate(self.cells):
            lst: list[tuple[int, int]] = []
            lookup: dict[tuple[int, int], int] = {}
            for j, oc in enumerate(orbits):
                if not G.is_subgroup(oc.stabilizer):
                    raise GCWError(f"stabilizer of cell {d}:{j} is not a subgroup")
                for coset in G.cosets(oc.stabilizer):
                    k = len(lst)
                    lst.append((j, coset[0]))
                    for g in coset:
                        lookup[(j, g)] = k
            cells.append(tuple(lst))
            index.append(lookup)
            orbit_of.append(tuple(j for j, _ in lst))
            perms.append(
                tuple(tuple(lookup[(j, G.mul(g, r))] for j, r in lst) for g in range(G.order))
            )
        bounds = [IntMatrix.zeros(0, len(cells[0]))]
        for d in range(1, len(self.cells)):
            data: dict[int, dict[int, int]] = {}
            for k, (j, r) in enumerate(cells[d]):
                for i, g, c in self.boundary[d][j]:
                    row = index[d - 1][(i, G.mul(r, g))]
                    rd = data.setdefault(row, {})
                    v = rd.get(k, 0) + c
                    if v:
                        rd[k] = v
                    else:
                        del rd[k]
            bounds.append(IntMatrix.from_row_dicts(len(cells[d - 1]), len(cells[d]), data))
        return Expansion(tuple(cells), tuple(perms), tuple(bounds), tuple(orbit_of))

    # ---------------------------------------------------------- validation
    def validate(self, expected_cohomology: Sequence[AbelianPresentation] | None = None) -> None:
        """Check structure, equivariance, ``dd = 0`` and optionally the cohomology."""
        G = self.group
        if len(self.boundary) != len(self.cells) or self.boundary and any(self.boundary[0]):
            raise GCWError("boundary must have one (empty for degree 0) entry per degree")
        for d in range(1, len(self.cells)):
            if len(self.boundary[d]) != len(self.cells[d]):
                raise GCWError(f"degree {d}: one boundary per orbit is required")
            for j, terms in enumerate(self.boundary[d]):
                for i, g, c in terms:
                    if not (0 <= i < len(self.cells[d - 1]) and 0 <= g < G.order):
                        raise GCWError(f"malformed boundary term {(i, g, c)} in cell {d}:{j}")
        exp = self.expansion
        # the stabilizer must fix the boundary chain of its representative
        for d in range(1, len(self.cells)):
            bnd = exp.boundary[d]
            cols = bnd.column_dicts()
            for k, (j, r) in enumerate(exp.cells[d]):
                col = cols.get(k, {})
                for h in range(G.order):
                    if exp.perm[d][h][k] != k:
                        continue
                    moved = {exp.perm[d - 1][h][x]: v for x, v in col.items()}
                    if moved != col:
                        raise GCWError(f"boundary of cell {d}:{j} is not stabilizer invariant")
            # equivariance of the expanded boundary
            for g in G.generators or range(G.order):
                for k in range(len(exp.cells[d])):
                    img = {exp.perm[d - 1][g][x]: v for x, v in cols.get(k, {}).items()}
                    if img != cols.get(exp.perm[d][g][k], {}):
                        raise GCWError(f"expanded boundary is not equivariant in degree {d}")
        for d in range(2, len(self.cells)):
            if not (exp.boundary[d - 1] @ exp.boundary[d]).is_zero():
                raise GCWError(f"boundary squared is nonzero in degree {d}")
        if expected_cohomology is not None:
            for d, want in enumerate(expected_cohomology):
                got = exp.cohomology(d)
                if got != want:
                    raise GCWError(f"H^{d} of the expansion is {got}, expected {want}")

    def validate_torus(self) -> None:
        self.validate([AbelianPresentation(1), AbelianPresentation(2), AbelianPresentation(1)])
        if self.expansion.euler_characteristic != 0:
            raise GCWError("torus complex must have Euler characteristic 0")

    # ---------------------------------------------------------- subcomplexes
    def cell_subset(self, orbits: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        """Expanded cell indices lying over the given orbit indices per degree."""
        exp = self.expansion
        out = []
        for d in range(len(self.cells)):
            chosen = set(orbits[d]) if d < len(orbits) else set()
            out.append(tuple(k for k, j in enumerate(exp.orbit_of[d]) if j in chosen))
        return tuple(out)

    def is_closed(self, orbits: Sequence[Sequence[int]]) -> bool:
        """Whether the union of the given orbits is a subcomplex."""
        chosen = [set(orbits[d]) if d < len(orbits) else set() for d in range(len(self.cells))]
        for d in range(1, len(self.cells)):
            for j in chosen[d]:
                if any(i not in chosen[d - 1] for i, _, c in self.boundary[d][j] if c):
                    return False
        return True

    def closure(self, orbits: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        """Smallest subcomplex containing the given orbits."""
        chosen = [set(orbits[d]) if d < len(orbits) else set() for d in range(len(self.cells))]
        for d in range(len(self.cells) - 1, 0, -1):
            for j in chosen[d]:
                chosen[d - 1].update(i for i, _, c in self.boundary[d][j] if c)
        return tuple(tuple(sorted(c)) for c in chosen)

    def is_locally_closed(self, orbits: Sequence[Sequence[int]]) -> bool:
        """Whether the orbits form ``A - B`` for subcomplexes ``B`` inside ``A``."""
        hull = self.closure(orbits)
        rest = [tuple(j for j in hull[d] if j not in set(orbits[d] if d < len(orbits) else ()))
                for d in range(len(self.cells))]
        return self.is_closed(rest)

    def skeleton_orbits(self, k: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(range(len(c))) if d <= k else () for d, c in enumerate(self.cells))

    def all_orbits(self) -> tuple[tuple[int, ...], ...]:
        return self.skeleton_orbits(self.dimension)

    def complement(self, orbits: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        out = []
        for d, c in enumerate(self.cells):
            chosen = set(orbits[d]) if d < len(orbits) else set()
            out.append(tuple(j for j in range(len(c)) if j not in chosen))
        return tuple(out)

    def fixed_vertices(self) -> list[int]:
        """0-cell orbits whose stabilizer is the whole group."""
        return [j for j, oc in enumerate(self.cells[0]) if len(oc.stabilizer) == self.group.order]

    # -------------------------------------------------------------------- io
    def to_json(self) -> dict:
        G = self.group
        return {
            "name": self.name,
            "group": G.to_json(),
            "cells": [
                [{"label": oc.label, "stabilizer": [G.label(g) for g in oc.stabilizer]} for oc in orbits]
                for orbits in self.cells
            ],
            "boundary": [
                [[[i, G.label(g), c] for i, g, c in terms] for terms in deg]
                for deg in self.boundary
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping, group: FinGroup | None = None) -> "GCWComplex":
        G = group or FinGroup.from_json(data["group"])
        cells = tuple(
            tuple(
                OrbitCell(G.closure(G.index(s) for s in oc["stabilizer"]), oc.get("label", ""))
                for oc in orbits
            )
            for orbits in data["cells"]
        )
        boundary = tuple(
            tuple(tuple((int(i), G.index(g), int(c)) for i, g, c in terms) for terms in deg)
            for deg in data["boundary"]
        )
        X = cls(G, cells, boundary, data.get("name", ""))
        X.validate()
        return X


def point_complex(group: FinGroup) -> GCWComplex:
    """A single fixed point."""
    return GCWComplex(group, ((OrbitCell(tuple(range(group.order)), "pt"),),), ((),), "pt")


def expand_to_cw(X: GCWComplex) -> Expansion:
    """The underlying plain CW complex with its permutation action."""
    X.validate()
    return X.expansion


def cochain_module(X: GCWComplex, d: int, M: GModule, cells: Sequence[int] | None = None) -> GModule:
    """``C^d(X; M)`` restricted to a G-stable set of expanded cells, as a left module.

    ``(g f)(x) = g f(g^-1 x)``: the block from cell ``x`` to cell ``g x``
    is ``M.action[g]``.
    """
    exp = X.expansion
    G = X.group
    if cells is None:
        cells = range(len(exp.cells[d]))
    cells = list(cells)
    pos = {c: s for s, c in enumerate(cells)}
    m = M.rank
    size = len(cells) * m
    acts = []
    for g in range(G.order):
        rows = [[0] * size for _ in range(size)]
        A = M.action[g]
        for s, c in enumerate(cells):
            t = pos.get(exp.perm[d][g][c])
            if t is None:
                raise GCWError("cell subset is not G-stable")
            for a in range(m):
                for b in range(m):
                    if A[a][b]:
                        rows[t * m + a][s * m + b] = A[a][b]
        acts.append(tuple(tuple(r) for r in rows))
    return GModule(G, size, tuple(acts), f"C^{d}({X.name};{M.name})")
