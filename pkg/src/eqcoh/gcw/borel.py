"""The Borel double complex of a G-CW complex and its column filtration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..groupalg import GModule, Resolution, mat_mul
from ..groupcoh import CochainCoboundary, bar_resolution
from ..intlin import (
    AbelianMap,
    AbelianPresentation,
    IntMatrix,
    SubgroupData,
    cohomology_at,
    kernel_mod_p,
    kernel_subgroup,
    quotient_by,
    rank_mod_p,
)
from .complex import GCWComplex, GCWError, cochain_module


class BorelComplex:
    """``Tot^n = ⊕_{p+q=n} Hom_G(F_p, C^q(S; M))`` for a G-stable cell set ``S``.

    ``S`` is given by orbit indices per degree and must be locally closed,
    ``S = A - B`` for subcomplexes ``B`` inside ``A``; the complex then
    computes the relative cohomology of ``(A, B)``.  Only columns
    ``p < pmax`` are kept, which is the quotient by the columns ``>= pmax``.

    The differential is ``D = d_bar + (-1)^p d_X``.  Within block ``(p, q)``
    the coordinate of generator ``j``, cell position ``s`` and module
    coordinate ``a`` is ``(j * |S_q| + s) * rank(M) + a``.
    """

    def __init__(self, X: GCWComplex, M: GModule, orbits: Sequence[Sequence[int]] | None = None,
                 pmax: int | None = None, resolution: Resolution | None = None):
        if M.group != X.group:
            raise ValueError("module and complex are over different groups")
        self.X = X
        self.M = M
        self.orbits = tuple(tuple(o) for o in (orbits if orbits is not None else X.all_orbits()))
        if not X.is_locally_closed(self.orbits):
            raise GCWError("cell set is not a difference of nested subcomplexes")
        self.pmax = pmax
        self._res = resolution
        self.cells = X.cell_subset(self.orbits)
        self.top = X.dimension
        self.modules = [cochain_module(X, q, M, self.cells[q]) for q in range(self.top + 1)]
        self._pos = [{c: s for s, c in enumerate(cs)} for cs in self.cells]
        self._build_dx()

    def _build_dx(self) -> None:
        exp = self.X.expansion
        self._dx = []
        for q in range(self.top):
            cols = exp.boundary[q + 1].column_dicts()
            pos_in = self._pos[q]
            rows: dict[int, dict[int, int]] = {}
            for s_out, c_out in enumerate(self.cells[q + 1]):
                acc = {pos_in[c]: v for c, v in cols.get(c_out, {}).items() if c in pos_in}
                if acc:
                    rows[s_out] = acc
            self._dx.append(rows)

    def resolution(self, degree: int) -> Resolution:
        if self._res is not None and self._res.max_degree >= degree:
            return self._res
        self._res = bar_resolution(self.X.group, degree)
        return self._res

    # ---------------------------------------------------------------- layout
    def blocks(self, n: int) -> list[tuple[int, int]]:
        out = []
        for q in range(min(n, self.top) + 1):
            p = n - q
            if p < 0 or (self.pmax is not None and p >= self.pmax):
                continue
            out.append((p, q))
        return out

    def block_size(self, p: int, q: int) -> int:
        res = self.resolution(max(p, 1))
        return res.ranks[p] * self.modules[q].rank

    def offsets(self, n: int) -> dict[tuple[int, int], int]:
        off, out = 0, {}
        for b in self.blocks(n):
            out[b] = off
            off += self.block_size(*b)
        return out

    def dim(self, n: int) -> int:
        return sum(self.block_size(*b) for b in self.blocks(n)) if n >= 0 else 0

    # ----------------------------------------------------------- coboundary
    def coboundary(self, n: int) -> "TotalCoboundary":
        return TotalCoboundary(self, n)

    def cohomology(self, n: int) -> AbelianPresentation:
        d_out = self.coboundary(n)
        return cohomology_at(self.coboundary(n - 1).select(), d_out, row_hint=d_out.hint_rows())

    def mod_p_dimension(self, n: int, p: int) -> int:
        d_in = self.coboundary(n - 1).select()
        d_out = self.coboundary(n).select()
        return self.dim(n) - rank_mod_p(d_in, p) - rank_mod_p(d_out, p)

    def project(self, vec: dict[int, int], n: int, other: "BorelComplex") -> dict[int, int]:
        """Image of a degree-``n`` cochain under restriction to ``other``.

        ``other`` must use fewer columns and/or a closed subset of the cells.
        """
        src_off = self.offsets(n)
        dst_off = other.offsets(n)
        m = self.M.rank
        layout = []
        for (p, q), off in src_off.items():
            size = self.block_size(p, q)
            layout.append((off, off + size, p, q))
        out: dict[int, int] = {}
        for k, v in vec.items():
            for lo, hi, p, q in layout:
                if lo <= k < hi:
                    break
            else:
                raise IndexError(k)
            if (p, q) not in dst_off:
                continue
            local = k - lo
            ncell = len(self.cells[q])
            j, rem = divmod(local, ncell * m)
            s, a = divmod(rem, m)
            t = other._pos[q].get(self.cells[q][s])
            if t is None:
                continue
            out[dst_off[(p, q)] + (j * len(other.cells[q]) + t) * m + a] = v
        return out


class TotalCoboundary:
    """Row-selectable matrix of ``D: Tot^n -> Tot^{n+1}``."""

    def __init__(self, B: BorelComplex, n: int):
        self.B = B
        self.n = n
        self.rows = B.dim(n + 1)
        self.cols = B.dim(n)
        self._row_off = B.offsets(n + 1)
        self._col_off = B.offsets(n)
        self._bar: dict[tuple[int, int], CochainCoboundary] = {}

    def _row_blocks(self):
        B = self.B
        for (p, q), off in sorted(self._row_off.items(), key=lambda t: t[1]):
            yield p, q, off, B.block_size(p, q)

    def hint_rows(self) -> list[int]:
        out = []
        B = self.B
        for p, q, off, size in self._row_blocks():
            if p == 0:
                out.extend(range(off, off + size))
                continue
            width = B.modules[q].rank
            res = B.resolution(p)
            for j in res.hint(p):
                base = off + j * width
                out.extend(range(base, base + width))
        return out

    def select(self, rows: Sequence[int] | None = None) -> IntMatrix:
        B = self.B
        if self.n < 0:
            return IntMatrix.zeros(self.rows if rows is None else len(rows), 0)
        if rows is None:
            rows = range(self.rows)
        blocks = list(self._row_blocks())
        grouped: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for out_row, r in enumerate(rows):
            for p, q, off, size in blocks:
                if off <= r < off + size:
                    grouped.setdefault((p, q), []).append((out_row, r - off))
                    break
            else:
                raise IndexError(r)
        data: dict[int, dict[int, int]] = {}
        m = B.M.rank
        for (p, q), items in grouped.items():
            local_rows = [lr for _, lr in items]
            # bar part from block (p-1, q)
            if p >= 1 and (p - 1, q) in self._col_off:
                key = (p - 1, q)
                cc = self._bar.get(key)
                if cc is None:
                    cc = CochainCoboundary(B.resolution(p), B.modules[q], p - 1)
                    self._bar[key] = cc
                sub = cc.select(local_rows)
                off = self._col_off[key]
                for i, row in sub.row_items():
                    tgt = data.setdefault(items[i][0], {})
                    for c, v in row.items():
                        tgt[off + c] = tgt.get(off + c, 0) + v
            # cellular part from block (p, q-1), sign (-1)^p
            if q >= 1 and (p, q - 1) in self._col_off:
                off = self._col_off[(p, q - 1)]
                sign = -1 if p % 2 else 1
                dx = B._dx[q - 1]
                n_out = len(B.cells[q])
                n_in = len(B.cells[q - 1])
                for out_row, lr in items:
                    j, rem = divmod(lr, n_out * m)
                    s, a = divmod(rem, m)
                    ent = dx.get(s)
                    if not ent:
                        continue
                    tgt = data.setdefault(out_row, {})
                    base = off + j * n_in * m
                    for t, v in ent.items():
                        k = base + t * m + a
                        tgt[k] = tgt.get(k, 0) + sign * v
        return IntMatrix.from_row_dicts(len(rows), self.cols, data)


# ------------------------------------------------------------ filtrations
@dataclass(frozen=True)
class FilteredCohomology:
    """``H^n_G(X; M)`` with ``filtration[p] = F^p`` for ``p = 0..n+1``."""

    degree: int
    total: AbelianPresentation
    filtration: tuple[SubgroupData, ...]

    def graded(self, p: int) -> AbelianPresentation:
        """``F^p / F^{p+1}``, which is ``E_inf^{p, n-p}``."""
        upper = self.filtration[p]
        lower = self.filtration[p + 1]
        inner = _as_subgroup_of(lower, upper)
        return quotient_by(inner)

    def check_descending(self) -> bool:
        return all(
            self.filtration[p].contains_subgroup(self.filtration[p + 1])
            for p in range(len(self.filtration) - 1)
        )


def _as_subgroup_of(small: SubgroupData, big: SubgroupData) -> SubgroupData:
    """Rewrite ``small`` inside the canonical coordinates of ``big``."""
    pres = big.iso_type
    gens = []
    for g in small.generators:
        vec = {i: v for i, v in enumerate(g) if v}
        gens.append(pres.coordinates(vec))
    return SubgroupData.generated_by(pres, gens)


def _map_between(B: BorelComplex, total: AbelianPresentation, n: int,
                 C: BorelComplex, target: AbelianPresentation) -> AbelianMap:
    cols = []
    for rep in total.generators or ():
        coords = target.coordinates(B.project(rep, n, C))
        cols.append({i: v for i, v in enumerate(coords) if v})
    return AbelianMap(total, target, IntMatrix.from_columns(target.ngens, cols))


def borel_filtered_cohomology(X: GCWComplex, M: GModule, n: int,
                              orbits: Sequence[Sequence[int]] | None = None) -> FilteredCohomology:
    """``H^n_G(X; M)`` with its column filtration.

    ``F^p`` is the image of the cohomology of the columns ``>= p``, which by
    the long exact sequence equals the kernel of the map to the cohomology of
    the quotient complex of columns ``< p``.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    B = BorelComplex(X, M, orbits)
    total = B.cohomology(n)
    steps = [SubgroupData.whole(total)]
    for p in range(1, n + 1):
        C = BorelComplex(X, M, orbits, pmax=p, resolution=B.resolution(n + 1))
        target = C.cohomology(n)
        steps.append(kernel_subgroup(_map_between(B, total, n, C, target)))
    steps.append(SubgroupData.trivial(total))
    return FilteredCohomology(n, total, tuple(steps))


def borel_cohomology(X: GCWComplex, M: GModule, n: int,
                     orbits: Sequence[Sequence[int]] | None = None) -> AbelianPresentation:
    return BorelComplex(X, M, orbits).cohomology(n)


def relative_borel_cohomology(X: GCWComplex, A: Sequence[Sequence[int]], M: GModule, n: int) -> AbelianPresentation:
    """``H^n_G(X, A; M)`` for a G-stable subcomplex ``A`` (orbit indices per degree)."""
    if not X.is_closed(A):
        raise GCWError("A is not closed under the boundary")
    return BorelComplex(X, M, X.complement(A)).cohomology(n)


def restriction_to_subcomplex(X: GCWComplex, A: Sequence[Sequence[int]], M: GModule, n: int) -> AbelianMap:
    """``H^n_G(X; M) -> H^n_G(A; M)`` for a subcomplex ``A``."""
    if not X.is_closed(A):
        raise GCWError("A is not closed under the boundary")
    B = BorelComplex(X, M)
    C = BorelComplex(X, M, A, resolution=B.resolution(n + 1))
    return _map_between(B, B.cohomology(n), n, C, C.cohomology(n))


@dataclass(frozen=True)
class SplitReport:
    total: AbelianPresentation
    point: AbelianPresentation
    reduced: AbelianPresentation
    restriction_surjective: bool
    ok: bool


def fixed_point_split_check(X: GCWComplex, M: GModule, n: int) -> SplitReport:
    """Compare ``H^n_G(X)`` with ``H^n_G(pt) ⊕ ker(restriction to a fixed 0-cell)``."""
    fixed = X.fixed_vertices()
    if not fixed:
        raise GCWError("complex has no fixed 0-cell")
    pt = ((fixed[0],),) + tuple(() for _ in range(X.dimension))
    res_map = restriction_to_subcomplex(X, pt, M, n)
    reduced = kernel_subgroup(res_map).iso_type
    image = quotient_by(kernel_subgroup(res_map))
    surjective = image == res_map.target
    ok = surjective and res_map.source == res_map.target.direct_sum(reduced)
    return SplitReport(res_map.source, res_map.target, reduced, surjective, ok)


def induced_module_on_cohomology(X: GCWComplex, q: int, basis: str = "auto") -> GModule:
    """The action of ``G`` on ``H^q(X; Z)``.

    The returned left module has ``action[g]`` equal to the pullback along
    ``g^-1``, so the pullback ``g^*`` is ``action[g^-1]``.  With torus
    geometry and ``q = 1`` the basis is dual to the loops along the two
    lattice vectors; otherwise it is the one produced by the Smith form.
    """
    G = X.group
    exp = X.expansion
    H = exp.cohomology(q)
    if H.torsion:
        raise GCWError(f"H^{q} has torsion {H}; not a Z-free module")
    gens = list(H.generators or ())
    change = None
    if q == 1 and X.geometry is not None and basis in ("auto", "periods"):
        loops = period_cycles(X)
        # pairing matrix P[i][k] = <generator k, loop i>
        P = [[sum(z.get(e, 0) * c for e, c in loop.items()) for z in gens] for loop in loops]
        det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
        if abs(det) != 1:
            raise GCWError("period loops do not form a basis of homology")
        change = P
    acts = []
    for g in range(G.order):
        perm = exp.perm[q][g]
        cols = []
        for z in gens:
            # push the cochain forward along g: (g f)(g x) = f(x)
            moved = {perm[c]: v for c, v in z.items()}
            cols.append(H.coordinates(moved))
        mat = tuple(tuple(cols[k][i] for k in range(len(gens))) for i in range(len(gens)))
        if change is not None:
            inv = _inverse_2x2(change)
            mat = mat_mul(mat_mul(tuple(map(tuple, change)), mat), inv)
        acts.append(mat)
    module = GModule(G, H.free_rank, tuple(acts), f"H^{q}({X.name})")
    module.validate()
    return module


def _inverse_2x2(m):
    a, b = m[0]
    c, d = m[1]
    det = a * d - b * c
    return ((d * det, -b * det), (-c * det, a * det))


def period_cycles(X: GCWComplex) -> list[dict[int, int]]:
    """1-cycles of a torus complex lifting to paths along ``(1,0)`` and ``(0,1)``."""
    from collections import deque
    from fractions import Fraction

    geo = X.geometry
    if geo is None:
        raise GCWError("complex carries no torus geometry")
    exp = X.expansion
    bnd = exp.boundary[1].column_dicts()
    edges = []
    for k, (j, r) in enumerate(exp.cells[1]):
        col = bnd.get(k, {})
        start = next((c for c, v in col.items() if v == -1), None)
        end = next((c for c, v in col.items() if v == 1), None)
        if start is None or end is None:
            start = end = next(iter(col), 0) if col else None
            if start is None:
                # a loop edge with zero boundary starts and ends at the only vertex
                start = end = 0
        L = geo.lattice_action[r]
        vx, vy = geo.edge_vectors[j]
        disp = (L[0][0] * vx + L[0][1] * vy, L[1][0] * vx + L[1][1] * vy)
        edges.append((start, end, disp))
    adj: dict[int, list[tuple[int, int, tuple, int]]] = {}
    for k, (s, e, d) in enumerate(edges):
        adj.setdefault(s, []).append((e, k, d, 1))
        adj.setdefault(e, []).append((s, k, (-d[0], -d[1]), -1))
    origin = 0
    loops = []
    for target in ((1, 0), (0, 1)):
        goal = (origin, (Fraction(target[0]), Fraction(target[1])))
        start = (origin, (Fraction(0), Fraction(0)))
        prev = {start: None}
        queue = deque([start])
        while queue and goal not in prev:
            v, pos = queue.popleft()
            for w, k, d, sgn in adj.get(v, ()):
                npos = (pos[0] + d[0], pos[1] + d[1])
                if abs(npos[0]) > 3 or abs(npos[1]) > 3:
                    continue
                state = (w, npos)
                if state not in prev:
                    prev[state] = ((v, pos), k, sgn)
                    queue.append(state)
        if goal not in prev:
            raise GCWError("could not find a loop along a lattice vector")
        chain: dict[int, int] = {}
        state = goal
        while prev[state] is not None:
            state, k, sgn = prev[state]
            chain[k] = chain.get(k, 0) + sgn
        loops.append({k: v for k, v in chain.items() if v})
    return loops


def mod_p_filtration_dimensions(X: GCWComplex, M: GModule, n: int, p: int) -> list[int]:
    """Dimensions of ``F^s H^n_G(X; M ⊗ F_p)`` for ``s = 0..n+1``."""
    B = BorelComplex(X, M)
    d_in = B.coboundary(n - 1).select()
    d_out = B.coboundary(n).select()
    cocycles = kernel_mod_p(d_out, p)
    rank_in = rank_mod_p(d_in, p)
    dim_total = len(cocycles) - rank_in
    dims = [dim_total]
    for s in range(1, n + 1):
        C = BorelComplex(X, M, pmax=s, resolution=B.resolution(n + 1))
        c_in = C.coboundary(n - 1).select()
        images = [{i: v for i, v in row.items()} for _, row in c_in.transpose().row_items()]
        base = rank_mod_p(images, p)
        projected = [B.project(z, n, C) for z in cocycles]
        mapped = rank_mod_p(images + projected, p) - base
        dims.append(dim_total - mapped)
    dims.append(0)
    return dims
