"""Equivariant cell structures on the torus for each point-group action."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from ..gcw import GCWComplex, OrbitCell, TorusGeometry
from ..groupalg import FinGroup
from .catalog import entry, lattice_action_matrices

Point = tuple[Fraction, Fraction]
# a simplex of the subdivision: vertices are barycenters of coarse cells,
# listed by increasing coarse dimension
Flag = tuple[tuple[int, Point], ...]

_F = Fraction


def _coarse_faces(grid: str) -> list[list[tuple[int, Point]]]:
    """Coarse 2-cells of the unit cell as lists of (dim, barycenter) of all their faces."""
    if grid == "square":
        corners = [[(0, 0), (1, 0), (1, 1), (0, 1)]]
    elif grid == "triangular":
        corners = [[(0, 0), (1, 0), (0, 1)], [(1, 0), (1, 1), (0, 1)]]
    else:
        raise ValueError(f"unknown grid {grid!r}")
    faces = []
    for poly in corners:
        pts = [(_F(x), _F(y)) for x, y in poly]
        k = len(pts)
        cells = [(0, p) for p in pts]
        for i in range(k):
            p, q = pts[i], pts[(i + 1) % k]
            cells.append((1, ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)))
        cx = sum(p[0] for p in pts) / k
        cy = sum(p[1] for p in pts) / k
        cells.append((2, (cx, cy)))
        faces.append(cells)
    return faces


def _edges_of(face: list[tuple[int, Point]]) -> list[tuple[tuple[int, Point], tuple[int, Point], tuple[int, Point]]]:
    """Full flags (vertex, edge, face) inside one coarse face."""
    verts = [c for c in face if c[0] == 0]
    edges = [c for c in face if c[0] == 1]
    top = next(c for c in face if c[0] == 2)
    k = len(verts)
    out = []
    for i, e in enumerate(edges):
        for v in (verts[i], verts[(i + 1) % k]):
            out.append((v, e, top))
    return out


def _canonical(flag: Flag) -> Flag:
    x, y = flag[0][1]
    sx, sy = x.__floor__(), y.__floor__()
    return tuple((d, (p[0] - sx, p[1] - sy)) for d, p in flag)


def _act(mat, flag: Flag) -> Flag:
    return _canonical(tuple(
        (d, (mat[0][0] * p[0] + mat[0][1] * p[1], mat[1][0] * p[0] + mat[1][1] * p[1])) for d, p in flag
    ))


def _flag_key(flag: Flag):
    return tuple((d, p[0], p[1]) for d, p in flag)


def _point_label(p: Point) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def flag_subdivision(group: FinGroup, matrices, grid: str, name: str = "") -> GCWComplex:
    """Barycentric subdivision of the periodic square or triangular grid, modulo the lattice.

    ``matrices[g]`` is the lattice-coordinate matrix of ``g``.  Every simplex
    is fixed pointwise by its stabilizer because the action is linear and
    permutes barycenters preserving coarse dimension.
    """
    simplices: list[set[Flag]] = [set(), set(), set()]
    for face in _coarse_faces(grid):
        for full in _edges_of(face):
            for size in (1, 2, 3):
                for sub in itertools.combinations(full, size):
                    simplices[size - 1].add(_canonical(sub))
    ordered = [sorted(s, key=_flag_key) for s in simplices]
    order = group.order
    reps: list[list[Flag]] = []
    locate: list[dict[Flag, tuple[int, int]]] = []
    cells: list[tuple[OrbitCell, ...]] = []
    for d in range(3):
        found: dict[Flag, tuple[int, int]] = {}
        dreps: list[Flag] = []
        dcells = []
        for s in ordered[d]:
            if s in found:
                continue
            j = len(dreps)
            dreps.append(s)
            stab = []
            for g in range(order):
                img = _act(matrices[g], s)
                if img == s:
                    stab.append(g)
                found.setdefault(img, (j, g))
            label = "[" + " ".join(f"{dim}:{_point_label(p)}" for dim, p in s) + "]"
            dcells.append(OrbitCell(tuple(stab), label))
        if len(found) != len(ordered[d]):
            raise ValueError("group does not preserve the grid")
        reps.append(dreps)
        locate.append(found)
        cells.append(tuple(dcells))
    boundary: list[tuple] = [()]
    for d in (1, 2):
        deg = []
        for s in reps[d]:
            terms = []
            for i in range(len(s)):
                face = _canonical(s[:i] + s[i + 1:])
                j, g = locate[d - 1][face]
                terms.append((j, g, -1 if i % 2 else 1))
            deg.append(tuple(terms))
        boundary.append(tuple(deg))
    edge_vectors = tuple((s[1][1][0] - s[0][1][0], s[1][1][1] - s[0][1][1]) for s in reps[1])
    geometry = TorusGeometry(tuple(matrices), edge_vectors)
    X = GCWComplex(group, tuple(cells), tuple(boundary), name, geometry)
    X.validate_torus()
    return X


def standard_torus(group: FinGroup, name: str = "p1") -> GCWComplex:
    """One vertex, two loops along the lattice vectors and one square (trivial group only)."""
    if group.order != 1:
        raise ValueError("the minimal cell structure is only equivariant for the trivial group")
    whole = (0,)
    cells = (
        (OrbitCell(whole, "v"),),
        (OrbitCell(whole, "e_a"), OrbitCell(whole, "e_b")),
        (OrbitCell(whole, "f"),),
    )
    boundary = ((), ((), ()), ((),))
    geometry = TorusGeometry((((1, 0), (0, 1)),), ((_F(1), _F(0)), (_F(0), _F(1))))
    X = GCWComplex(group, cells, boundary, name, geometry)
    X.validate_torus()
    return X


def hexagonal_d6_complex(group: FinGroup, matrices, name: str = "p6m") -> GCWComplex:
    """The three-vertex-orbit D6 decomposition of the hexagonal torus.

    Vertices sit at ``0``, ``a/2`` and ``(a+b)/3``; the single 2-cell is the
    triangle on them.
    """
    G = group
    sub = lambda *labels: G.closure(G.index(x) for x in labels)  # noqa: E731
    cells = (
        (
            OrbitCell(tuple(range(G.order)), "e0_0"),
            OrbitCell(sub("C^3", "s1"), "e0_1"),
            OrbitCell(sub("C^2", "s2"), "e0_2"),
        ),
        (
            OrbitCell(sub("s1"), "e1_01"),
            OrbitCell(sub("s2"), "e1_02"),
            OrbitCell(sub("s4"), "e1_12"),
        ),
        (OrbitCell((G.identity,), "e2"),),
    )
    one = G.identity
    boundary = (
        (),
        (((1, one, 1), (0, one, -1)), ((2, one, 1), (0, one, -1)), ((2, one, 1), (1, one, -1))),
        (((2, one, 1), (1, one, -1), (0, one, 1)),),
    )
    third = _F(1, 3)
    edges = ((_F(1, 2), _F(0)), (third, third), (third - _F(1, 2), third))
    X = GCWComplex(G, cells, boundary, name, TorusGeometry(tuple(matrices), edges))
    X.validate_torus()
    return X


@lru_cache(maxsize=None)
def torus_gcw(name: str) -> GCWComplex:
    """A validated equivariant cell structure on the torus for the named group's action."""
    e = entry(name)
    G = e.point_group
    mats = lattice_action_matrices(name).action
    label = e.row
    if G.order == 1:
        return standard_torus(G, label)
    if name == "p6m":
        return hexagonal_d6_complex(G, mats, label)
    return flag_subdivision(G, mats, e.grid, label)


def flag_torus(name: str) -> GCWComplex:
    """The barycentric-subdivision complex for any entry, including p1 and p6m."""
    e = entry(name)
    return flag_subdivision(e.point_group, lattice_action_matrices(name).action, e.grid, e.row)


def wedge_orbits(X: GCWComplex) -> tuple[tuple[int, ...], ...]:
    """Orbits of the circle wedge: cells avoiding every coarse 2-cell barycenter.

    For the flag complexes this is the subdivided coarse 1-skeleton; for the
    minimal trivial-group complex it is the vertex and both loops.
    """
    if X.group.order == 1 and X.orbit_counts() == [1, 2, 1]:
        return ((0,), (0, 1), ())
    out = []
    for d, orbits in enumerate(X.cells):
        keep = []
        for j, oc in enumerate(orbits):
            dims = [part.split(":")[0] for part in oc.label.strip("[]").split()]
            if not dims or not all(x.isdigit() for x in dims):
                raise ValueError("wedge orbits are only defined for flag subdivisions")
            if "2" not in dims:
                keep.append(j)
        out.append(tuple(keep))
    if not X.is_closed(out):
        raise ValueError("wedge selection is not a subcomplex")
    return tuple(out)


def p6m_line_orbits() -> tuple[tuple[int, ...], ...]:
    """The invariant graph ``Y``: vertex orbits at ``0`` and ``a/2`` with the edge joining them."""
    return ((0, 1), (0,), ())
