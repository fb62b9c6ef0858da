"""Finitely generated abelian groups in invariant-factor form, their maps and subgroups."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, Sequence

from .elimination import Elimination
from .matrix import IntMatrix

Vec = dict[int, int]

_SUM_SPLIT = re.compile(r"\s*(?:⊕|\+|\(\+\))\s*")
_TERM = re.compile(r"^Z(?:_?(\d+)|_\{(\d+)\})?(?:\^\{?(\d+)\}?)?$")


@dataclass(frozen=True, eq=False)
class AbelianPresentation:
    """``Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`` with ``t_i | t_{i+1}``.

    Canonical coordinates list the free part first, then one coordinate per
    torsion factor (read modulo that factor).  ``basis_map`` sends ambient
    vectors (for a cohomology group: cocycle coordinates) to canonical
    coordinates; when ``denominator`` is not 1 the map is rational and the
    product must be divided by it.  ``generators`` holds ambient
    representatives of the canonical basis, when known.

    Equality and hashing use the isomorphism type only.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()
    basis_map: IntMatrix | None = field(default=None, repr=False)
    generators: tuple[Vec, ...] | None = field(default=None, repr=False)
    denominator: int = field(default=1, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion factors must be at least 2")
        if self.basis_map is not None and self.basis_map.rows != self.ngens:
            raise ValueError("basis_map has the wrong number of rows")

    # ------------------------------------------------------------ structure
    @classmethod
    def from_iso(cls, free_rank: int, torsion: Iterable[int] = ()) -> "AbelianPresentation":
        """Canonical form of ``Z^free_rank ⊕ ⊕ Z/t`` for any list of orders."""
        orders = [t for t in torsion if t != 1]
        if any(t < 1 for t in orders):
            raise ValueError("cyclic orders must be positive")
        if not orders:
            return cls(free_rank)
        diag = IntMatrix(len(orders), len(orders), [(i, i, t) for i, t in enumerate(orders)])
        return cls(free_rank, tuple(d for d in Elimination(diag).diagonal if d > 1))

    @classmethod
    def zero(cls) -> "AbelianPresentation":
        return cls(0)

    @property
    def iso_type(self) -> tuple[int, tuple[int, ...]]:
        return (self.free_rank, self.torsion)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbelianPresentation):
            return NotImplemented
        return self.iso_type == other.iso_type

    def __hash__(self) -> int:
        return hash(self.iso_type)

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Cardinality, or None for an infinite group."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def p_rank(self, p: int) -> int:
        """Number of torsion factors divisible by ``p``."""
        return sum(1 for t in self.torsion if t % p == 0)

    def orders(self) -> tuple[int, ...]:
        """Order of each canonical generator, with 0 for free ones."""
        return (0,) * self.free_rank + self.torsion

    def relation_matrix(self) -> IntMatrix:
        """Columns generating the relations among canonical coordinates."""
        f = self.free_rank
        return IntMatrix(self.ngens, len(self.torsion), [(f + i, i, t) for i, t in enumerate(self.torsion)])

    def normalize(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Reduce torsion coordinates into ``[0, t)``."""
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        f = self.free_rank
        return tuple(coords[:f]) + tuple(c % t for c, t in zip(coords[f:], self.torsion))

    def coordinates(self, vec: Mapping[int, int]) -> tuple[int, ...]:
        """Canonical coordinates of an ambient vector via ``basis_map``."""
        if self.basis_map is None:
            raise ValueError("presentation carries no basis_map")
        img = self.basis_map.apply(vec)
        raw = [img.get(i, 0) for i in range(self.ngens)]
        if self.denominator != 1:
            if any(x % self.denominator for x in raw):
                raise ValueError("vector does not lie in the subgroup")
            raw = [x // self.denominator for x in raw]
        return self.normalize(raw)

    def is_zero_element(self, coords: Sequence[int]) -> bool:
        return not any(self.normalize(coords))

    def element_order(self, coords: Sequence[int]) -> int | None:
        """Order of an element given in canonical coordinates (None if infinite)."""
        c = self.normalize(coords)
        if any(c[: self.free_rank]):
            return None
        out = 1
        for x, t in zip(c[self.free_rank :], self.torsion):
            if x:
                out = lcm(out, t // _gcd(x, t))
        return out

    def direct_sum(self, other: "AbelianPresentation") -> "AbelianPresentation":
        return AbelianPresentation.from_iso(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def tensor_mod(self, p: int) -> int:
        """Dimension of ``self ⊗ Z/p`` over the field with p elements."""
        return self.free_rank + self.p_rank(p)

    def tor_mod(self, p: int) -> int:
        """Dimension of ``Tor(self, Z/p)``."""
        return self.p_rank(p)

    # -------------------------------------------------------------- display
    def __str__(self) -> str:
        return format_group(self.free_rank, self.torsion)

    @classmethod
    def parse(cls, text: str) -> "AbelianPresentation":
        """Parse notation such as ``"Z ⊕ Z_2^3"``, ``"Z2+Z4"`` or ``"0"``."""
        text = text.strip()
        if text in ("0", ""):
            return cls(0)
        free = 0
        orders: list[int] = []
        for term in _SUM_SPLIT.split(text):
            m = _TERM.match(term.replace(" ", ""))
            if not m:
                raise ValueError(f"cannot parse group term {term!r}")
            k = m.group(1) or m.group(2)
            mult = int(m.group(3) or 1)
            if k is None:
                free += mult
            else:
                orders.extend([int(k)] * mult)
        return cls.from_iso(free, orders)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbelianPresentation":
        return cls.from_iso(int(data["free_rank"]), [int(t) for t in data["torsion"]])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def format_group(free_rank: int, torsion: Sequence[int]) -> str:
    """Render ``Z^r ⊕ Z_k^m ⊕ ...`` with the free part first."""
    parts = []
    if free_rank:
        parts.append("Z" if free_rank == 1 else f"Z^{free_rank}")
    counts: dict[int, int] = {}
    for t in torsion:
        counts[t] = counts.get(t, 0) + 1
    for t in sorted(counts):
        m = counts[t]
        parts.append(f"Z_{t}" if m == 1 else f"Z_{t}^{m}")
    return " ⊕ ".join(parts) if parts else "0"


# ------------------------------------------------------------------ builders
def presentation_from_relations(relations: IntMatrix) -> AbelianPresentation:
    """The cokernel ``Z^n / colspan(relations)`` with a basis_map from ``Z^n``."""
    elim = Elimination(relations)
    n = relations.rows
    pivot_rows = {r for r, _, _ in elim.pivots}
    free_rows = [r for r in range(n) if r not in pivot_rows]
    tors = [(r, d) for r, _, d in elim.pivots if d > 1]
    order = free_rows + [r for r, _ in tors]
    bmap = {i: elim.u_row({r: 1}) for i, r in enumerate(order)}
    gens = tuple(elim.u_inverse_apply({r: 1}) for r in order)
    return AbelianPresentation(
        free_rank=len(free_rows),
        torsion=tuple(d for _, d in tors),
        basis_map=IntMatrix.from_row_dicts(len(order), n, bmap),
        generators=gens,
    )


def _columns_matrix(rows: int, vectors: Sequence[Sequence[int]]) -> IntMatrix:
    return IntMatrix.from_columns(rows, [{i: v for i, v in enumerate(vec) if v} for vec in vectors])


# ---------------------------------------------------------------------- maps
@dataclass(frozen=True)
class AbelianMap:
    """A homomorphism written in canonical coordinates (target.ngens x source.ngens)."""

    source: AbelianPresentation
    target: AbelianPresentation
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"map matrix {self.matrix.shape} does not fit {self.source.ngens} -> {self.target.ngens}"
            )

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.normalize(self.matrix.apply_dense(list(coords)))

    def is_well_defined(self) -> bool:
        """Each torsion generator of order k maps to an element killed by k."""
        f = self.source.free_rank
        cols = self.matrix.column_dicts()
        for i, t in enumerate(self.source.torsion):
            col = cols.get(f + i, {})
            img = [t * col.get(r, 0) for r in range(self.target.ngens)]
            if not self.target.is_zero_element(img):
                return False
        return True

    def is_zero(self) -> bool:
        cols = self.matrix.column_dicts()
        return all(
            self.target.is_zero_element([cols.get(j, {}).get(r, 0) for r in range(self.target.ngens)])
            for j in range(self.source.ngens)
        )

    def compose(self, first: "AbelianMap") -> "AbelianMap":
        """``self ∘ first``."""
        if first.target.iso_type != self.source.iso_type:
            raise ValueError("maps are not composable")
        return AbelianMap(first.source, self.target, self.matrix @ first.matrix)

    @classmethod
    def identity(cls, group: AbelianPresentation) -> "AbelianMap":
        return cls(group, group, IntMatrix.identity(group.ngens))


# ----------------------------------------------------------------- subgroups
@dataclass(frozen=True)
class SubgroupData:
    """The subgroup of ``ambient`` generated by canonical-coordinate vectors."""

    ambient: AbelianPresentation
    generators: tuple[tuple[int, ...], ...]
    iso_type: AbelianPresentation

    @classmethod
    def generated_by(
        cls, ambient: AbelianPresentation, generators: Iterable[Sequence[int]]
    ) -> "SubgroupData":
        gens = tuple(ambient.normalize(list(g)) for g in generators)
        gens = tuple(g for g in gens if any(g))
        return cls(ambient, gens, _subgroup_presentation(ambient, gens))

    @classmethod
    def whole(cls, ambient: AbelianPresentation) -> "SubgroupData":
        n = ambient.ngens
        return cls.generated_by(ambient, [tuple(int(i == j) for i in range(n)) for j in range(n)])

    @classmethod
    def trivial(cls, ambient: AbelianPresentation) -> "SubgroupData":
        return cls.generated_by(ambient, [])

    def _span(self) -> IntMatrix:
        return IntMatrix.hstack(
            [_columns_matrix(self.ambient.ngens, self.generators), self.ambient.relation_matrix()]
        )

    def contains(self, coords: Sequence[int]) -> bool:
        """Membership test by solving the integer system ``span · y = coords``."""
        if len(coords) != self.ambient.ngens:
            raise ValueError("vector outside the ambient group")
        vec = {i: v for i, v in enumerate(coords) if v}
        if not vec:
            return True
        span = self._span()
        if span.cols == 0:
            return False
        elim = Elimination(span)
        img = elim.u_apply(vec)
        piv = {r: d for r, _, d in elim.pivots}
        return all(r in piv and v % piv[r] == 0 for r, v in img.items())

    def contains_subgroup(self, other: "SubgroupData") -> bool:
        return all(self.contains(g) for g in other.generators)

    @property
    def order(self) -> int | None:
        return self.iso_type.order


def _subgroup_presentation(ambient: AbelianPresentation, gens: Sequence[Sequence[int]]) -> AbelianPresentation:
    """Isomorphism type of ``<gens>`` inside ``ambient``, with a rational basis_map."""
    n = ambient.ngens
    if not gens:
        return AbelianPresentation(0, (), IntMatrix(0, n), (), 1)
    span = IntMatrix.hstack([_columns_matrix(n, gens), ambient.relation_matrix()])
    elim = Elimination(span)
    pivots = elim.pivots
    ell = len(pivots)
    # lattice L = span(gens) + relations, with basis d_i U^{-1} e_{r_i};
    # express the ambient relations in that basis
    rel_cols = ambient.relation_matrix().column_dicts()
    k = len(ambient.torsion)
    xcols = []
    for j in range(k):
        u = elim.u_apply(rel_cols.get(j, {}))
        xcols.append({i: u[r] // d for i, (r, _, d) in enumerate(pivots) if u.get(r)})
    inner = presentation_from_relations(IntMatrix.from_columns(ell, xcols))
    denom = 1
    for _, _, d in pivots:
        denom = lcm(denom, d)
    # ambient x in L  ->  lattice coords y_i = (U x)_{r_i} / d_i  ->  inner coords
    scaled = {}
    for i, (r, _, d) in enumerate(pivots):
        row = elim.u_row({r: 1})
        scaled[i] = {c: v * (denom // d) for c, v in row.items()}
    bmap = inner.basis_map @ IntMatrix.from_row_dicts(ell, n, scaled)
    reps = []
    for y in inner.generators or ():
        x = elim.u_inverse_apply({pivots[i][0]: v * pivots[i][2] for i, v in y.items()})
        reps.append(x)
    return AbelianPresentation(inner.free_rank, inner.torsion, bmap, tuple(reps), denom)


def image_subgroup(f: AbelianMap) -> SubgroupData:
    """Subgroup of ``f.target`` generated by the images of the source generators."""
    cols = f.matrix.column_dicts()
    gens = [[cols.get(j, {}).get(r, 0) for r in range(f.target.ngens)] for j in range(f.source.ngens)]
    return SubgroupData.generated_by(f.target, gens)


def kernel_subgroup(f: AbelianMap) -> SubgroupData:
    """Kernel of ``f`` as a subgroup of ``f.source``."""
    s = f.source.ngens
    if s == 0:
        return SubgroupData.trivial(f.source)
    system = IntMatrix.hstack([f.matrix, -f.target.relation_matrix()])
    elim = Elimination(system)
    piv_cols = {c for _, c, _ in elim.pivots}
    gens = []
    for j in range(system.cols):
        if j in piv_cols:
            continue
        v = elim.v_apply({j: 1})
        gens.append([v.get(i, 0) for i in range(s)])
    return SubgroupData.generated_by(f.source, gens)


def quotient_by(sub: SubgroupData) -> AbelianPresentation:
    """``ambient / sub`` in canonical form; basis_map acts on ambient canonical coordinates."""
    amb = sub.ambient
    for g in sub.generators:
        if len(g) != amb.ngens:
            raise ValueError("generator outside the ambient group")
    rel = IntMatrix.hstack([_columns_matrix(amb.ngens, sub.generators), amb.relation_matrix()])
    return presentation_from_relations(rel)


def cokernel(f: AbelianMap) -> AbelianPresentation:
    return quotient_by(image_subgroup(f))
