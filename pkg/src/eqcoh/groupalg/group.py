"""Finite groups given by multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class FinGroup:
    """A finite group on the indices ``0..order-1``.

    ``mult[a][b]`` is the index of the product ``a*b``.  ``aliases`` maps
    extra labels to indices, and ``generators`` lists a generating set
    (used only as a hint for faster rank certificates).
    """

    name: str
    elements: tuple[str, ...]
    mult: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    generators: tuple[int, ...] = ()
    aliases: Mapping[str, int] = field(default_factory=dict, compare=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    # -------------------------------------------------------------- lookups
    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.order:
                raise KeyError(label)
            return label
        try:
            return self.elements.index(label)
        except ValueError:
            pass
        if label in self.aliases:
            return self.aliases[label]
        raise KeyError(f"{label!r} is not an element of {self.name}")

    def label(self, g: int) -> str:
        return self.elements[g]

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def product(self, items: Iterable[int]) -> int:
        out = self.identity
        for g in items:
            out = self.mult[out][g]
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        out = self.identity
        for _ in range(k):
            out = self.mult[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mult[x][g]
            k += 1
        return k

    @property
    def non_identity(self) -> tuple[int, ...]:
        return tuple(g for g in range(self.order) if g != self.identity)

    # ----------------------------------------------------------- subgroups
    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.mult[a][b] in s for a in s for b in s) and all(self.inverse[a] in s for a in s)

    def closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        """The subgroup generated by ``gens``, as a sorted index tuple."""
        elems = {self.identity}
        frontier = list(elems)
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mult[a][g]
                    if b not in elems:
                        elems.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(elems))

    def subgroup(self, subset: Iterable[int], name: str | None = None) -> tuple["FinGroup", tuple[int, ...]]:
        """The subgroup on ``subset`` and its embedding (subgroup index -> group index)."""
        emb = tuple(sorted(set(subset)))
        if not self.is_subgroup(emb):
            raise ValueError(f"{[self.label(g) for g in emb]} is not a subgroup of {self.name}")
        pos = {g: i for i, g in enumerate(emb)}
        mult = tuple(tuple(pos[self.mult[a][b]] for b in emb) for a in emb)
        inverse = tuple(pos[self.inverse[a]] for a in emb)
        gens = _small_generating_set(mult, pos[self.identity])
        sub = FinGroup(
            name=name or f"{self.name}[{','.join(self.label(g) for g in emb)}]",
            elements=tuple(self.label(g) for g in emb),
            mult=mult,
            identity=pos[self.identity],
            inverse=inverse,
            generators=gens,
        )
        return sub, emb

    def cosets(self, subgroup: Sequence[int]) -> list[tuple[int, ...]]:
        """Left cosets ``gH`` in order of their smallest element."""
        seen: set[int] = set()
        out = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.mult[g][h] for h in subgroup))
            seen.update(coset)
            out.append(coset)
        return out

    # ---------------------------------------------------------- validation
    def validate(self) -> None:
        n = self.order
        if len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise ValueError("multiplication table has the wrong shape")
        for a in range(n):
            if sorted(self.mult[a]) != list(range(n)):
                raise ValueError("multiplication table rows must be permutations")
            if self.mult[self.identity][a] != a or self.mult[a][self.identity] != a:
                raise ValueError("identity law fails")
            if self.mult[a][self.inverse[a]] != self.identity or self.mult[self.inverse[a]][a] != self.identity:
                raise ValueError("inverse law fails")
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                for c in range(n):
                    if self.mult[ab][c] != self.mult[a][self.mult[b][c]]:
                        raise ValueError("associativity fails")
        if self.generators and len(self.closure(self.generators)) != n:
            raise ValueError("generators do not generate the group")

    # ------------------------------------------------------------------ io
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "elements": list(self.elements),
            "mult": [list(r) for r in self.mult],
            "generators": [self.elements[g] for g in self.generators],
        }

    @classmethod
    def from_table(cls, name: str, elements: Sequence[str], mult: Sequence[Sequence[int]],
                   generators: Sequence[int] = ()) -> "FinGroup":
        n = len(elements)
        mult_t = tuple(tuple(int(x) for x in row) for row in mult)
        identity = next((e for e in range(n) if list(mult_t[e]) == list(range(n))), None)
        if identity is None:
            raise ValueError("no identity element in table")
        inverse = []
        for a in range(n):
            inv = [b for b in range(n) if mult_t[a][b] == identity]
            if len(inv) != 1:
                raise ValueError(f"element {elements[a]!r} has no unique inverse")
            inverse.append(inv[0])
        gens = tuple(generators) or _small_generating_set(mult_t, identity)
        group = cls(name, tuple(elements), mult_t, identity, tuple(inverse), gens)
        group.validate()
        return group

    @classmethod
    def from_json(cls, data: Mapping) -> "FinGroup":
        elements = list(data["elements"])
        if len(set(elements)) != len(elements):
            raise ValueError("element labels must be distinct")
        gens = [elements.index(g) for g in data.get("generators", [])]
        return cls.from_table(data.get("name", "G"), elements, data["mult"], gens)


def _small_generating_set(mult: Sequence[Sequence[int]], identity: int) -> tuple[int, ...]:
    """Greedy generating set: repeatedly add the smallest element not yet reached."""
    n = len(mult)
    gens: list[int] = []
    reached = {identity}
    while len(reached) < n:
        g = min(x for x in range(n) if x not in reached)
        gens.append(g)
        reached = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for h in gens:
                    b = mult[a][h]
                    if b not in reached:
                        reached.add(b)
                        nxt.append(b)
            frontier = nxt
    return tuple(gens)


def _rotation_label(a: int) -> str:
    return "1" if a == 0 else ("C" if a == 1 else f"C^{a}")


def cyclic_group(n: int) -> FinGroup:
    """``Z_n = <C | C^n>`` with elements labelled ``1, C, C^2, ...``."""
    if n < 1:
        raise ValueError("cyclic group order must be at least 1")
    mult = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FinGroup(
        name=f"Z{n}",
        elements=tuple(_rotation_label(a) for a in range(n)),
        mult=mult,
        identity=0,
        inverse=tuple((-a) % n for a in range(n)),
        generators=(1,) if n > 1 else (),
    )


def dihedral_group(n: int) -> FinGroup:
    """``D_n = <C, s | C^n, s^2, sCsC>`` of order 2n.

    Index ``a + n*b`` holds ``C^a s^b``.  Reflections are labelled ``s1..sn``
    with ``s_l = C^(l-1) s1``.

    >>> D4 = dihedral_group(4)
    >>> C, s = D4.index("C"), D4.index("s1")
    >>> D4.product([s, C, s]) == D4.inv(C)
    True
    """
    if n < 1:
        raise ValueError("dihedral group parameter must be at least 1")

    def split(x: int) -> tuple[int, int]:
        return x % n, x // n

    def mul(x: int, y: int) -> int:
        a, b = split(x)
        c, d = split(y)
        return (a + (c if b == 0 else -c)) % n + n * ((b + d) % 2)

    order = 2 * n
    mult = tuple(tuple(mul(x, y) for y in range(order)) for x in range(order))
    inverse = tuple(next(y for y in range(order) if mult[x][y] == 0) for x in range(order))
    labels = tuple(_rotation_label(a) for a in range(n)) + tuple(f"s{l}" for l in range(1, n + 1))
    aliases = {f"σ{l}": n + l - 1 for l in range(1, n + 1)}
    aliases["σ"] = aliases["s"] = n
    return FinGroup(
        name=f"D{n}",
        elements=labels,
        mult=mult,
        identity=0,
        inverse=inverse,
        generators=((1,) if n > 1 else ()) + (n,),
        aliases=aliases,
    )


def trivial_group() -> FinGroup:
    return cyclic_group(1)
