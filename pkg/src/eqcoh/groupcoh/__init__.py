"""Cohomology of finite groups with coefficients in Z-free modules."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from ..groupalg import (
    FinGroup,
    GModule,
    GroupHom2,
    Resolution,
    normalized_bar_resolution,
    restrict_module,
    twist_module,
)
from ..intlin import AbelianMap, AbelianPresentation, IntMatrix, cohomology_at

DEFAULT_DEGREE_CAP = 4

_lock = threading.Lock()
_bar_cache: dict[FinGroup, Resolution] = {}
_coh_cache: dict[tuple, AbelianPresentation] = {}


def bar_resolution(G: FinGroup, degree: int) -> Resolution:
    """Shared normalized bar resolution of ``G`` reaching at least ``degree``."""
    with _lock:
        res = _bar_cache.get(G)
        if res is None or res.max_degree < degree:
            res = normalized_bar_resolution(G, max(degree, DEFAULT_DEGREE_CAP))
            _bar_cache[G] = res
        return res


class CochainCoboundary:
    """The coboundary ``Hom(F_n, M) -> Hom(F_{n+1}, M)`` of a resolution.

    Cochains are stored as one block of ``M.rank`` coordinates per
    degree-``n`` generator.  For a boundary term ``c * e_i . g`` of
    ``e_j`` the block ``(j, i)`` receives ``c * action[g^-1]``, which is the
    right action of ``g``.  Rows can be materialized selectively.
    """

    def __init__(self, res: Resolution, module: GModule, n: int):
        if module.group != res.group:
            raise ValueError("module and resolution are over different groups")
        self.res = res
        self.module = module
        self.n = n
        m = module.rank
        self.rows = res.ranks[n + 1] * m
        self.cols = res.ranks[n] * m if n >= 0 else 0

    def select(self, rows: Sequence[int] | None = None) -> IntMatrix:
        m = self.module.rank
        if self.n < 0:
            return IntMatrix.zeros(self.rows if rows is None else len(rows), 0)
        terms = self.res.terms(self.n + 1)
        right = self._sparse_right()
        if rows is None:
            rows = range(self.rows)
        data: dict[int, dict[int, int]] = {}
        for out_row, row in enumerate(rows):
            j, a = divmod(row, m)
            acc: dict[int, int] = {}
            for i, g, c in terms[j]:
                base = i * m
                for b, x in right[g][a]:
                    k = base + b
                    v = acc.get(k, 0) + c * x
                    if v:
                        acc[k] = v
                    else:
                        del acc[k]
            if acc:
                data[out_row] = acc
        return IntMatrix.from_row_dicts(len(rows), self.cols, data)

    def _sparse_right(self) -> list[list[list[tuple[int, int]]]]:
        return [
            [[(b, x) for b, x in enumerate(row) if x] for row in self.module.right(g)]
            for g in range(self.res.group.order)
        ]

    def hint_rows(self) -> list[int]:
        m = self.module.rank
        return [j * m + a for j in self.res.hint(self.n + 1) for a in range(m)]


def cochain_coboundary(res: Resolution, module: GModule, n: int) -> IntMatrix:
    """Materialized coboundary from degree ``n`` to ``n+1`` (``n = -1`` gives the zero map)."""
    return CochainCoboundary(res, module, n).select()


def group_cohomology(
    G: FinGroup, M: GModule, n: int, resolution: Resolution | None = None
) -> AbelianPresentation:
    """``H^n(G; M)`` from the Hom-dual of a resolution (bar by default).

    The presentation's basis_map acts on cochain vectors of the resolution
    used, with ``M.rank`` coordinates per generator.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if M.group != G:
        raise ValueError("module is over a different group")
    key = None
    if resolution is None:
        key = (G, M.key(), n)
        with _lock:
            hit = _coh_cache.get(key)
        if hit is not None:
            return hit
        resolution = bar_resolution(G, n + 1)
    elif resolution.max_degree < n + 1:
        raise ValueError(f"resolution reaches degree {resolution.max_degree}, need {n + 1}")
    d_in = CochainCoboundary(resolution, M, n - 1).select()
    out = CochainCoboundary(resolution, M, n)
    result = cohomology_at(d_in, out, row_hint=out.hint_rows())
    if key is not None:
        with _lock:
            _coh_cache.setdefault(key, result)
    return result


def twisted_point_cohomology(P: FinGroup, phi: GroupHom2, n: int) -> AbelianPresentation:
    """``H^n(P; Z_phi)``."""
    return group_cohomology(P, twist_module(GModule.trivial(P), phi), n)


# ------------------------------------------------------------------ cocycles
@dataclass(frozen=True)
class Cocycle:
    """A normalized cochain given on tuples of non-identity elements.

    Missing tuples evaluate to zero, as do all tuples containing the identity.
    """

    group: FinGroup
    module: GModule
    degree: int
    values: Mapping[tuple[int, ...], tuple[int, ...]]

    @classmethod
    def from_function(cls, group: FinGroup, module: GModule, degree: int,
                      fn: Callable[..., Sequence[int]]) -> "Cocycle":
        import itertools

        vals = {}
        for t in itertools.product(group.non_identity, repeat=degree):
            v = tuple(int(x) for x in fn(*t))
            if any(v):
                vals[t] = v
        return cls(group, module, degree, vals)

    def __call__(self, *args: int) -> tuple[int, ...]:
        if any(a == self.group.identity for a in args):
            return (0,) * self.module.rank
        return tuple(self.values.get(tuple(args), (0,) * self.module.rank))

    def to_vector(self, res: Resolution) -> dict[int, int]:
        m = self.module.rank
        vec: dict[int, int] = {}
        for t, v in self.values.items():
            if self.group.identity in t:
                continue
            base = res.tuple_index(t) * m
            for a, x in enumerate(v):
                if x:
                    vec[base + a] = x
        return vec

    def coboundary_defect(self) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """First tuple where the coboundary fails to vanish, or None.

        Uses the right-action formula
        ``(d f)(g_1..g_{n+1}) = f(g_2..) + sum (-1)^i f(..g_i g_{i+1}..)
        + (-1)^{n+1} f(g_1..g_n).g_{n+1}``.
        """
        import itertools

        G, n, m = self.group, self.degree, self.module.rank
        for t in itertools.product(G.non_identity, repeat=n + 1):
            acc = list(self(*t[1:]))
            for i in range(1, n + 1):
                merged = t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1 :]
                sign = -1 if i % 2 else 1
                acc = [x + sign * y for x, y in zip(acc, self(*merged))]
            last = self(*t[:-1])
            act = self.module.right(t[-1])
            sign = -1 if (n + 1) % 2 else 1
            acc = [x + sign * sum(act[a][b] * last[b] for b in range(m)) for a, x in enumerate(acc)]
            if any(acc):
                return t, tuple(acc)
        return None

    def is_cocycle(self) -> bool:
        return self.coboundary_defect() is None


class CocycleError(ValueError):
    pass


def cocycle_class(c: Cocycle) -> tuple[int, ...]:
    """Coordinates of ``[c]`` in ``group_cohomology(c.group, c.module, c.degree)``."""
    res = bar_resolution(c.group, c.degree + 1)
    vec = c.to_vector(res)
    image = cochain_coboundary(res, c.module, c.degree).apply(vec)
    if image:
        raise CocycleError("cochain violates the cocycle condition")
    H = group_cohomology(c.group, c.module, c.degree)
    return H.coordinates(vec)


def coboundary_of(group: FinGroup, module: GModule, degree: int,
                  values: Mapping[tuple[int, ...], Sequence[int]]) -> Cocycle:
    """The coboundary of a ``degree``-cochain, as a Cocycle of degree + 1."""
    res = bar_resolution(group, degree + 1)
    m = module.rank
    vec: dict[int, int] = {}
    for t, v in values.items():
        if group.identity in t:
            continue
        base = res.tuple_index(t) * m
        for a, x in enumerate(v):
            if x:
                vec[base + a] = int(x)
    img = cochain_coboundary(res, module, degree).apply(vec)
    out: dict[tuple[int, ...], list[int]] = {}
    for k, x in img.items():
        j, a = divmod(k, m)
        out.setdefault(res.tuple_of(degree + 1, j), [0] * m)[a] = x
    return Cocycle(group, module, degree + 1, {t: tuple(v) for t, v in out.items()})


# --------------------------------------------------------------- restriction
def restriction_map(G: FinGroup, H: Sequence[int], M: GModule, n: int) -> AbelianMap:
    """``H^n(G; M) -> H^n(K; M|_K)`` for the subgroup ``K`` on the indices ``H``."""
    sub_module = restrict_module(M, H)
    K = sub_module.group
    emb = tuple(sorted(set(H)))
    source = group_cohomology(G, M, n)
    target = group_cohomology(K, sub_module, n)
    res_g = bar_resolution(G, n + 1)
    res_k = bar_resolution(K, n + 1)
    m = M.rank
    cols = []
    for rep in source.generators or ():
        restricted: dict[int, int] = {}
        for k, x in rep.items():
            j, a = divmod(k, m)
            t = res_g.tuple_of(n, j)
            try:
                local = tuple(emb.index(g) for g in t)
            except ValueError:
                continue
            restricted[res_k.tuple_index(local) * m + a] = x
        coords = target.coordinates(restricted)
        cols.append({i: v for i, v in enumerate(coords) if v})
    return AbelianMap(source, target, IntMatrix.from_columns(target.ngens, cols))


__all__ = [
    "Cocycle",
    "CocycleError",
    "CochainCoboundary",
    "bar_resolution",
    "coboundary_of",
    "cochain_coboundary",
    "cocycle_class",
    "group_cohomology",
    "restriction_map",
    "twisted_point_cohomology",
]
