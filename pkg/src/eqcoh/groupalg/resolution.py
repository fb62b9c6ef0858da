"""Free resolutions of Z over Z[G], stored as right-module boundary terms."""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from ..intlin import IntMatrix
from .group import FinGroup

# a boundary term (i, g, c) of generator e_j means  c * e_i . g
Term = tuple[int, int, int]


class Resolution:
    """A free right ``Z[G]``-resolution ``F_n -> ... -> F_0 -> Z``.

    Boundaries are stored per generator as lists of terms and expanded to
    integer matrices in the regular-representation basis only on request:
    basis vector ``e_i . h`` has index ``i * |G| + h``.
    """

    def __init__(self, group: FinGroup, max_degree: int, kind: str,
                 ranks: Sequence[int], term_builder: Callable[[int], list[list[Term]]],
                 hint_builder: Callable[[int], list[int]] | None = None,
                 labels: Callable[[int, int], str] | None = None):
        if max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        self.group = group
        self.max_degree = max_degree
        self.kind = kind
        self.ranks = list(ranks)
        self._term_builder = term_builder
        self._hint_builder = hint_builder
        self._labels = labels
        self._terms: dict[int, list[list[Term]]] = {}
        # bar resolutions also index generators by element tuples
        self.tuple_index: Callable[[Sequence[int]], int] | None = None
        self.tuple_of: Callable[[int, int], tuple[int, ...]] | None = None

    def terms(self, n: int) -> list[list[Term]]:
        """Boundary of each degree-``n`` generator (``1 <= n <= max_degree``)."""
        if not 1 <= n <= self.max_degree:
            raise ValueError(f"degree {n} outside 1..{self.max_degree}")
        if n not in self._terms:
            self._terms[n] = self._term_builder(n)
        return self._terms[n]

    def hint(self, n: int) -> list[int]:
        """Degree-``n`` generators whose cochain rows tend to carry full rank."""
        if self._hint_builder is None:
            return list(range(self.ranks[n]))
        return self._hint_builder(n)

    def generator_label(self, n: int, j: int) -> str:
        return self._labels(n, j) if self._labels else f"e{n}_{j}"

    def boundary(self, n: int) -> IntMatrix:
        """The boundary ``F_n -> F_{n-1}`` over Z, of size ``ranks[n-1]|G| x ranks[n]|G|``."""
        G = self.group
        order = G.order
        mult = G.mult
        data: dict[int, dict[int, int]] = {}
        for j, terms in enumerate(self.terms(n)):
            for h in range(order):
                col = j * order + h
                for i, g, c in terms:
                    row = i * order + mult[g][h]
                    rd = data.setdefault(row, {})
                    v = rd.get(col, 0) + c
                    if v:
                        rd[col] = v
                    else:
                        del rd[col]
        return IntMatrix.from_row_dicts(self.ranks[n - 1] * order, self.ranks[n] * order, data)

    def augmentation(self) -> IntMatrix:
        """``F_0 -> Z`` sending every ``e_i . g`` to 1."""
        n = self.ranks[0] * self.group.order
        return IntMatrix(1, n, [(0, k, 1) for k in range(n)])


def normalized_bar_resolution(G: FinGroup, max_degree: int) -> Resolution:
    """Bar resolution on tuples of non-identity elements.

    ``d[g1|...|gn] = [g2|...|gn] + sum_i (-1)^i [..|g_i g_{i+1}|..]
    + (-1)^n [g1|...|g_{n-1}] . g_n``, with tuples containing the identity
    dropped.
    """
    nonid = G.non_identity
    base = len(nonid)
    digit = {g: k for k, g in enumerate(nonid)}
    ident = G.identity
    mult = G.mult

    def index(t: Sequence[int]) -> int:
        out = 0
        for g in t:
            out = out * base + digit[g]
        return out

    def tuples(n: int):
        return itertools.product(nonid, repeat=n)

    def build(n: int) -> list[list[Term]]:
        out = []
        for t in tuples(n):
            acc: dict[tuple[int, int], int] = {}

            def add(face, g, c):
                key = (index(face), g)
                acc[key] = acc.get(key, 0) + c

            add(t[1:], ident, 1)
            for i in range(1, n):
                merged = mult[t[i - 1]][t[i]]
                if merged != ident:
                    add(t[: i - 1] + (merged,) + t[i + 1 :], ident, -1 if i % 2 else 1)
            add(t[:-1], t[-1], -1 if n % 2 else 1)
            out.append([(i, g, c) for (i, g), c in acc.items() if c])
        return out

    gens = set(G.generators)

    def hint(n: int) -> list[int]:
        if n == 0 or not gens:
            return list(range(base**n))
        return [index(t) for t in tuples(n) if t[0] in gens]

    def label(n: int, j: int) -> str:
        return "[" + "|".join(G.label(g) for g in tuple_of(n, j)) + "]"

    def tuple_of(n: int, j: int) -> tuple[int, ...]:
        out = []
        for _ in range(n):
            j, r = divmod(j, base)
            out.append(nonid[r])
        return tuple(reversed(out))

    ranks = [base**n for n in range(max_degree + 1)]
    res = Resolution(G, max_degree, "bar", ranks, build, hint, label)
    res.tuple_index = index
    res.tuple_of = tuple_of
    return res


def periodic_resolution_cyclic(G: FinGroup | int, max_degree: int) -> Resolution:
    """Rank-one periodic resolution of a cyclic group with generator ``C``.

    Odd boundaries multiply by ``C - 1``, even ones by the norm element.
    """
    from .group import cyclic_group

    if isinstance(G, int):
        if G < 2:
            raise ValueError("periodic resolution needs a cyclic group of order at least 2")
        G = cyclic_group(G)
    if G.order < 2:
        raise ValueError("periodic resolution needs a cyclic group of order at least 2")
    gen = next((g for g in range(G.order) if G.element_order(g) == G.order), None)
    if gen is None:
        raise ValueError(f"{G.name} is not cyclic")
    powers = [G.power(gen, k) for k in range(G.order)]

    def build(n: int) -> list[list[Term]]:
        if n % 2:
            return [[(0, gen, 1), (0, G.identity, -1)]]
        return [[(0, g, 1) for g in powers]]

    return Resolution(G, max_degree, "periodic", [1] * (max_degree + 1), build)
