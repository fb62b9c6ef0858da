"""Z-free modules over finite groups and sign characters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .group import FinGroup

Mat = tuple[tuple[int, ...], ...]


def mat_mul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def mat_det(a: Mat) -> int:
    """Determinant by fraction-free elimination (Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_kron(a: Mat, b: Mat) -> Mat:
    return tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a
        for rb in b
    )


def as_mat(rows: Sequence[Sequence[int]]) -> Mat:
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True)
class GModule:
    """A left ``Z[G]``-module ``Z^rank``: ``action[g] @ action[h] == action[g*h]``.

    Cochain formulas use the induced right action ``m.g = action[g^-1] m``.
    """

    group: FinGroup
    rank: int
    action: tuple[Mat, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.action) != self.group.order:
            raise ValueError("one action matrix per group element is required")
        for m in self.action:
            if len(m) != self.rank or any(len(r) != self.rank for r in m):
                raise ValueError("action matrices must be rank x rank")

    @classmethod
    def trivial(cls, group: FinGroup, rank: int = 1) -> "GModule":
        eye = mat_identity(rank)
        return cls(group, rank, (eye,) * group.order, "Z" if rank == 1 else f"Z^{rank}")

    @classmethod
    def from_generators(cls, group: FinGroup, images: Mapping[int, Sequence[Sequence[int]]],
                        name: str = "") -> "GModule":
        """Extend matrices given on ``group.generators`` to all elements.

        The result is validated, so inconsistent images raise ValueError.
        """
        gens = list(images)
        if not gens:
            raise ValueError("at least one generator image is needed to fix the rank")
        rank = len(next(iter(images.values())))
        acts: dict[int, Mat] = {group.identity: mat_identity(rank)}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = group.mul(a, g)
                    m = mat_mul(acts[a], as_mat(images[g]))
                    if b not in acts:
                        acts[b] = m
                        nxt.append(b)
            frontier = nxt
        if len(acts) != group.order:
            raise ValueError("generator images do not cover the group")
        module = cls(group, rank, tuple(acts[g] for g in range(group.order)), name)
        module.validate()
        return module

    def validate(self) -> None:
        G = self.group
        if self.action[G.identity] != mat_identity(self.rank):
            raise ValueError("identity must act trivially")
        for g in range(G.order):
            if abs(mat_det(self.action[g])) != 1:
                raise ValueError(f"action of {G.label(g)} is not invertible over Z")
            for h in range(G.order):
                if mat_mul(self.action[g], self.action[h]) != self.action[G.mul(g, h)]:
                    raise ValueError(f"homomorphism law fails at ({G.label(g)}, {G.label(h)})")

    def right(self, g: int) -> Mat:
        """Matrix of the right action ``m -> m.g``."""
        return self.action[self.group.inv(g)]

    def twist(self, phi: "GroupHom2") -> "GModule":
        return twist_module(self, phi)

    def restrict(self, subset: Sequence[int]) -> "GModule":
        return restrict_module(self, subset)

    def tensor(self, other: "GModule") -> "GModule":
        if other.group is not self.group and other.group != self.group:
            raise ValueError("modules over different groups")
        acts = tuple(mat_kron(a, b) for a, b in zip(self.action, other.action))
        return GModule(self.group, self.rank * other.rank, acts, f"{self.name}⊗{other.name}")

    def dual(self) -> "GModule":
        """Contragredient module: ``g`` acts by the transpose of ``action[g^-1]``."""
        G = self.group
        acts = tuple(mat_transpose(self.action[G.inv(g)]) for g in range(G.order))
        return GModule(G, self.rank, acts, f"{self.name}^*")

    def direct_sum(self, other: "GModule") -> "GModule":
        r, s = self.rank, other.rank
        acts = []
        for a, b in zip(self.action, other.action):
            rows = [tuple(row) + (0,) * s for row in a] + [(0,) * r + tuple(row) for row in b]
            acts.append(tuple(rows))
        return GModule(self.group, r + s, tuple(acts), f"{self.name}⊕{other.name}")

    def key(self) -> tuple:
        """Hashable identity for caching."""
        return (self.group.name, self.group.mult, self.rank, self.action)

    def to_json(self) -> dict:
        G = self.group
        return {
            "name": self.name,
            "rank": self.rank,
            "action": {G.label(g): [list(r) for r in self.action[g]] for g in range(G.order)},
        }

    @classmethod
    def from_json(cls, group: FinGroup, data: Mapping) -> "GModule":
        acts = data["action"]
        rank = int(data.get("rank", len(next(iter(acts.values())))))
        given = {group.index(k): as_mat(v) for k, v in acts.items()}
        if len(given) == group.order:
            module = cls(group, rank, tuple(given[g] for g in range(group.order)), data.get("name", ""))
            module.validate()
            return module
        return cls.from_generators(group, given, data.get("name", ""))


@dataclass(frozen=True)
class GroupHom2:
    """A homomorphism ``G -> {+1, -1}``."""

    group: FinGroup
    values: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.values) != self.group.order or any(v not in (1, -1) for v in self.values):
            raise ValueError("values must be +-1, one per element")

    def validate(self) -> None:
        G = self.group
        for g in range(G.order):
            for h in range(G.order):
                if self.values[G.mul(g, h)] != self.values[g] * self.values[h]:
                    raise ValueError("not multiplicative")

    def __call__(self, g: int) -> int:
        return self.values[g]

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def kernel(self) -> tuple[int, ...]:
        return tuple(g for g, v in enumerate(self.values) if v == 1)

    @classmethod
    def trivial(cls, group: FinGroup) -> "GroupHom2":
        return cls(group, (1,) * group.order, "trivial")

    @classmethod
    def from_generators(cls, group: FinGroup, images: Mapping[int, int], name: str = "") -> "GroupHom2":
        signs = {group.identity: 1}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g, s in images.items():
                    b = group.mul(a, g)
                    if b not in signs:
                        signs[b] = signs[a] * s
                        nxt.append(b)
            frontier = nxt
        hom = cls(group, tuple(signs[g] for g in range(group.order)), name)
        hom.validate()
        return hom


def twist_module(M: GModule, phi: GroupHom2) -> GModule:
    """``M ⊗ Z_phi``: every action matrix is multiplied by ``phi(g)``."""
    if phi.group != M.group:
        raise ValueError("module and homomorphism live on different groups")
    acts = tuple(tuple(tuple(s * x for x in r) for r in m) for m, s in zip(M.action, phi.values))
    suffix = phi.name or "phi"
    return GModule(M.group, M.rank, acts, f"{M.name}⊗Z_{suffix}" if M.name else f"Z_{suffix}")


def restrict_module(M: GModule, subset: Sequence[int]) -> GModule:
    """Restriction of ``M`` to the subgroup on ``subset`` (indices of ``M.group``)."""
    sub, emb = M.group.subgroup(subset)
    return GModule(sub, M.rank, tuple(M.action[g] for g in emb), M.name)


def sign_homomorphisms(group: FinGroup) -> dict[str, GroupHom2]:
    """The named characters phi0, phi1, phi2 available on a cyclic or dihedral group.

    Cyclic groups of even order get phi1 (C -> -1).  Dihedral groups get
    phi0 (C -> 1, s -> -1); when n is even they also get phi1 (C -> -1,
    s -> 1) and phi2 (C -> -1, s -> -1).
    """
    name = group.name
    out: dict[str, GroupHom2] = {}
    if name.startswith("Z"):
        n = group.order
        if n % 2 == 0:
            out["phi1"] = GroupHom2.from_generators(group, {group.index("C"): -1}, "phi1")
        return out
    if not name.startswith("D"):
        raise ValueError(f"{name} is neither cyclic nor dihedral")
    n = group.order // 2
    s = group.index("s1")
    if n == 1:
        out["phi0"] = GroupHom2.from_generators(group, {s: -1}, "phi0")
        return out
    C = group.index("C")
    out["phi0"] = GroupHom2.from_generators(group, {C: 1, s: -1}, "phi0")
    if n % 2 == 0:
        out["phi1"] = GroupHom2.from_generators(group, {C: -1, s: 1}, "phi1")
        out["phi2"] = GroupHom2.from_generators(group, {C: -1, s: -1}, "phi2")
    return out
