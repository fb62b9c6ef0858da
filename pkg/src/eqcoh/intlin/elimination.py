"""Logged sparse elimination over Z and ranks over prime fields.

The eliminator records every unimodular row and column operation instead of
accumulating transform matrices.  Callers replay the log lazily to get single
rows of the left transform, single columns of its inverse, and so on; this is
what keeps the large Borel complexes tractable.

Operation encoding (rows and columns alike):

``(ADD, target, source, f)``
    target += f * source
``(PAIR, x, y, a, b, c, d)``
    (x, y) <- (a*x + b*y, c*x + d*y), with a*d - b*c = +-1
``(NEG, i)``
    i <- -i
"""

from __future__ import annotations

import heapq
from typing import Iterable, Mapping

from .matrix import IntMatrix

ADD, PAIR, NEG = 0, 1, 2

Vec = dict[int, int]


def _axpy(target: Vec, source: Mapping[int, int], f: int) -> None:
    """target += f * source, in place, dropping zeros."""
    for k, v in source.items():
        nv = target.get(k, 0) + f * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def _pair_vec(vec: Vec, x: int, y: int, a: int, b: int, c: int, d: int) -> None:
    vx = vec.get(x, 0)
    vy = vec.get(y, 0)
    if not vx and not vy:
        return
    nx, ny = a * vx + b * vy, c * vx + d * vy
    for k, v in ((x, nx), (y, ny)):
        if v:
            vec[k] = v
        else:
            vec.pop(k, None)


class Elimination:
    """Smith-style diagonalization of an integer matrix with an operation log.

    After construction, ``pivots`` lists ``(row, col, d)`` with ``d > 0``
    such that ``U A V`` has entry ``d`` at ``(row, col)`` and zeros elsewhere,
    where ``U`` (resp. ``V``) is the product of the logged row (resp. column)
    operations.  The diagonal values taken in pivot order form a divisibility
    chain.
    """

    def __init__(self, A: IntMatrix):
        self.shape = A.shape
        self.row_ops: list[tuple] = []
        self.col_ops: list[tuple] = []
        self.pivots: list[tuple[int, int, int]] = []
        self._rows: dict[int, Vec] = A.row_dicts()
        self._colrows: dict[int, set[int]] = {}
        for r, row in self._rows.items():
            for c in row:
                self._colrows.setdefault(c, set()).add(r)
        self._unit_phase()
        self._general_phase()
        self._finish()
        del self._rows, self._colrows

    # ------------------------------------------------------------ primitives
    def _row_add(self, tgt: int, src: int, f: int) -> None:
        """row[tgt] += f * row[src] on the live matrix, logged."""
        if not f:
            return
        self.row_ops.append((ADD, tgt, src, f))
        rows, colrows = self._rows, self._colrows
        trow = rows.setdefault(tgt, {})
        for k, v in rows[src].items():
            nv = trow.get(k, 0) + f * v
            if nv:
                if k not in trow:
                    colrows.setdefault(k, set()).add(tgt)
                trow[k] = nv
            elif k in trow:
                del trow[k]
                colrows[k].discard(tgt)
        if not trow:
            del rows[tgt]

    def _col_add(self, tgt: int, src: int, f: int) -> None:
        """col[tgt] += f * col[src] on the live matrix, logged."""
        if not f:
            return
        self.col_ops.append((ADD, tgt, src, f))
        rows, colrows = self._rows, self._colrows
        tset = colrows.setdefault(tgt, set())
        for r in list(colrows.get(src, ())):
            row = rows[r]
            nv = row.get(tgt, 0) + f * row[src]
            if nv:
                row[tgt] = nv
                tset.add(r)
            else:
                row.pop(tgt, None)
                tset.discard(r)
        if not tset:
            del colrows[tgt]

    def _retire(self, r: int, c: int) -> None:
        """Drop a finished pivot (its row and column are otherwise zero)."""
        row = self._rows.pop(r)
        for k in row:
            s = self._colrows.get(k)
            if s is not None:
                s.discard(r)
                if not s:
                    del self._colrows[k]

    # ---------------------------------------------------------------- phases
    def _unit_phase(self) -> None:
        """Eliminate on +-1 entries, sparsest column first."""
        rows, colrows = self._rows, self._colrows
        heap = [(len(s), c) for c, s in colrows.items()]
        heapq.heapify(heap)
        while heap:
            cnt, c = heapq.heappop(heap)
            s = colrows.get(c)
            if not s:
                continue
            if len(s) != cnt:
                heapq.heappush(heap, (len(s), c))
                continue
            best, best_len = -1, 0
            for r in s:
                v = rows[r][c]
                if v == 1 or v == -1:
                    ln = len(rows[r])
                    if best < 0 or ln < best_len:
                        best, best_len = r, ln
                        if ln == 1:
                            break
            if best < 0:
                continue
            r = best
            prow = rows.pop(r)
            for k in prow:
                colrows[k].discard(r)
            u = prow[c]
            # clear the pivot column with row operations
            for i in list(colrows[c]):
                row = rows[i]
                f = -row[c] * u
                self.row_ops.append((ADD, i, r, f))
                for k, v in prow.items():
                    nv = row.get(k, 0) + f * v
                    if nv:
                        if k not in row:
                            colrows[k].add(i)
                        row[k] = nv
                    else:
                        del row[k]
                        colrows[k].discard(i)
                if not row:
                    del rows[i]
            # the pivot row's remaining entries are cleared by column
            # operations that touch only this row
            for k, v in prow.items():
                if k != c:
                    self.col_ops.append((ADD, k, c, -v * u))
            if u < 0:
                self.row_ops.append((NEG, r))
            self.pivots.append((r, c, 1))
            for k in prow:
                if not colrows[k]:
                    del colrows[k]
                elif k != c:
                    heapq.heappush(heap, (len(colrows[k]), k))

    def _general_phase(self) -> None:
        """Euclidean reduction on whatever survives the unit phase."""
        rows, colrows = self._rows, self._colrows
        while rows:
            r, c, v = min(
                ((r, c, v) for r, row in rows.items() for c, v in row.items()),
                key=lambda t: (abs(t[2]), t[0], t[1]),
            )
            while True:
                dirty = False
                for i in sorted(colrows[c]):
                    if i == r:
                        continue
                    self._row_add(i, r, -(rows[i][c] // v))
                    if rows.get(i, {}).get(c):
                        dirty = True
                for k in sorted(rows[r]):
                    if k == c:
                        continue
                    self._col_add(k, c, -(rows[r][k] // v))
                    if rows[r].get(k):
                        dirty = True
                if not dirty:
                    break
                cand = [(abs(rows[i][c]), i, c) for i in colrows[c] if i != r]
                cand += [(abs(w), r, k) for k, w in rows[r].items() if k != c]
                _, r, c = min(cand)
                v = rows[r][c]
            self._retire(r, c)
            colrows.pop(c, None)
            if v < 0:
                self.row_ops.append((NEG, r))
                v = -v
            self.pivots.append((r, c, v))

    def _finish(self) -> None:
        """Arrange the diagonal into a divisibility chain."""
        units = [p for p in self.pivots if p[2] == 1]
        rest = [list(p) for p in self.pivots if p[2] != 1]
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i][2], rest[j][2]
                if b % a == 0:
                    continue
                g, s, t = _xgcd(a, b)
                ri, ci = rest[i][0], rest[i][1]
                rj, cj = rest[j][0], rest[j][1]
                self.row_ops.append((PAIR, ri, rj, s, t, -b // g, a // g))
                self.col_ops.append((PAIR, ci, cj, 1, 1, -t * b // g, s * a // g))
                rest[i][2], rest[j][2] = g, a // g * b
        self.pivots = units + [tuple(p) for p in rest]

    # ------------------------------------------------------------ accessors
    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def diagonal(self) -> list[int]:
        return [d for _, _, d in self.pivots]

    def u_row(self, start: Mapping[int, int]) -> Vec:
        """Return x^T U for the row vector x = start."""
        x = dict(start)
        for op in reversed(self.row_ops):
            kind = op[0]
            if kind == ADD:
                _, tgt, src, f = op
                xt = x.get(tgt)
                if xt:
                    nv = x.get(src, 0) + f * xt
                    if nv:
                        x[src] = nv
                    else:
                        x.pop(src, None)
            elif kind == PAIR:
                _, i, j, a, b, c, d = op
                _pair_vec(x, i, j, a, c, b, d)
            else:
                i = op[1]
                if i in x:
                    x[i] = -x[i]
        return x

    def u_apply(self, vec: Mapping[int, int]) -> Vec:
        """Return U y."""
        y = dict(vec)
        for op in self.row_ops:
            kind = op[0]
            if kind == ADD:
                _, tgt, src, f = op
                ys = y.get(src)
                if ys:
                    nv = y.get(tgt, 0) + f * ys
                    if nv:
                        y[tgt] = nv
                    else:
                        y.pop(tgt, None)
            elif kind == PAIR:
                _, i, j, a, b, c, d = op
                _pair_vec(y, i, j, a, b, c, d)
            else:
                i = op[1]
                if i in y:
                    y[i] = -y[i]
        return y

    def u_inverse_apply(self, vec: Mapping[int, int]) -> Vec:
        """Return U^{-1} y."""
        y = dict(vec)
        for op in reversed(self.row_ops):
            kind = op[0]
            if kind == ADD:
                _, tgt, src, f = op
                ys = y.get(src)
                if ys:
                    nv = y.get(tgt, 0) - f * ys
                    if nv:
                        y[tgt] = nv
                    else:
                        y.pop(tgt, None)
            elif kind == PAIR:
                _, i, j, a, b, c, d = op
                det = a * d - b * c
                _pair_vec(y, i, j, d * det, -b * det, -c * det, a * det)
            else:
                i = op[1]
                if i in y:
                    y[i] = -y[i]
        return y

    def v_apply(self, vec: Mapping[int, int]) -> Vec:
        """Return V y."""
        y = dict(vec)
        for op in reversed(self.col_ops):
            kind = op[0]
            if kind == ADD:
                _, tgt, src, f = op
                yt = y.get(tgt)
                if yt:
                    nv = y.get(src, 0) + f * yt
                    if nv:
                        y[src] = nv
                    else:
                        y.pop(src, None)
            elif kind == PAIR:
                _, i, j, a, b, c, d = op
                _pair_vec(y, i, j, a, c, b, d)
            else:
                i = op[1]
                if i in y:
                    y[i] = -y[i]
        return y

    def v_inverse_apply(self, vec: Mapping[int, int]) -> Vec:
        """Return V^{-1} y."""
        y = dict(vec)
        for op in self.col_ops:
            kind = op[0]
            if kind == ADD:
                _, tgt, src, f = op
                yt = y.get(tgt)
                if yt:
                    nv = y.get(src, 0) - f * yt
                    if nv:
                        y[src] = nv
                    else:
                        y.pop(src, None)
            elif kind == PAIR:
                _, i, j, a, b, c, d = op
                det = a * d - b * c
                _pair_vec(y, i, j, d * det, -c * det, -b * det, a * det)
            else:
                i = op[1]
                if i in y:
                    y[i] = -y[i]
        return y

    def v_inverse_row(self, start: Mapping[int, int]) -> Vec:
        """Return x^T V^{-1} for the row vector x = start."""
        x = dict(start)
        for op in reversed(self.col_ops):
            kind = op[0]
            if kind == ADD:
                _, tgt, src, f = op
                xs = x.get(src)
                if xs:
                    nv = x.get(tgt, 0) - f * xs
                    if nv:
                        x[tgt] = nv
                    else:
                        x.pop(tgt, None)
            elif kind == PAIR:
                _, i, j, a, b, c, d = op
                det = a * d - b * c
                _pair_vec(x, i, j, d * det, -b * det, -c * det, a * det)
            else:
                i = op[1]
                if i in x:
                    x[i] = -x[i]
        return x

    def right_multiply_u_inverse(self, columns: dict[int, Vec]) -> None:
        """Replace the matrix B (given by its columns, in place) with B U^{-1}."""
        for op in self.row_ops:
            kind = op[0]
            if kind == ADD:
                _, tgt, src, f = op
                ct = columns.get(tgt)
                if ct:
                    cs = columns.setdefault(src, {})
                    _axpy(cs, ct, -f)
                    if not cs:
                        del columns[src]
            elif kind == PAIR:
                _, i, j, a, b, c, d = op
                det = a * d - b * c
                ci = columns.pop(i, {})
                cj = columns.pop(j, {})
                ni: Vec = {}
                nj: Vec = {}
                _axpy(ni, ci, d * det)
                _axpy(ni, cj, -c * det)
                _axpy(nj, ci, -b * det)
                _axpy(nj, cj, a * det)
                if ni:
                    columns[i] = ni
                if nj:
                    columns[j] = nj
            else:
                i = op[1]
                if i in columns:
                    columns[i] = {k: -v for k, v in columns[i].items()}

    def left_matrix(self) -> IntMatrix:
        """U with rows permuted so that pivot rows come first, in pivot order."""
        n = self.shape[0]
        order = self._row_order()
        return IntMatrix.from_row_dicts(n, n, {i: self.u_row({r: 1}) for i, r in enumerate(order)})

    def right_matrix(self) -> IntMatrix:
        """V with columns permuted so that pivot columns come first."""
        n = self.shape[1]
        order = self._col_order()
        return IntMatrix.from_columns(n, [self.v_apply({c: 1}) for c in order])

    def _row_order(self) -> list[int]:
        piv = [r for r, _, _ in self.pivots]
        seen = set(piv)
        return piv + [r for r in range(self.shape[0]) if r not in seen]

    def _col_order(self) -> list[int]:
        piv = [c for _, c, _ in self.pivots]
        seen = set(piv)
        return piv + [c for c in range(self.shape[1]) if c not in seen]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# ---------------------------------------------------------------- prime field
def _check_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def rank_mod_p(A: IntMatrix | Iterable[Mapping[int, int]], p: int, check_prime: bool = True) -> int:
    """Rank of an integer matrix reduced modulo the prime ``p``.

    Accepts an IntMatrix or any iterable of sparse row dictionaries.
    """
    if check_prime:
        _check_prime(p)
    source = (row for _, row in A.row_items()) if isinstance(A, IntMatrix) else A
    rows: list[Vec | None] = []
    colrows: dict[int, set[int]] = {}
    for row in source:
        red = {k: v % p for k, v in row.items() if v % p}
        if red:
            i = len(rows)
            rows.append(red)
            for k in red:
                colrows.setdefault(k, set()).add(i)
    heap = [(len(s), c) for c, s in colrows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        s = colrows.get(c)
        if not s:
            continue
        if len(s) != cnt:
            heapq.heappush(heap, (len(s), c))
            continue
        piv = min(s, key=lambda i: len(rows[i]))
        prow = rows[piv]
        rows[piv] = None
        for k in prow:
            colrows[k].discard(piv)
        inv = pow(prow[c], p - 2, p)
        for i in list(s):
            row = rows[i]
            f = row[c] * inv % p
            for k, v in prow.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    if k not in row:
                        colrows[k].add(i)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    colrows[k].discard(i)
        rank += 1
        del colrows[c]
        for k in prow:
            if k != c and k in colrows:
                if colrows[k]:
                    heapq.heappush(heap, (len(colrows[k]), k))
                else:
                    del colrows[k]
    return rank


def rref_mod_p(rows: Iterable[Mapping[int, int]], p: int) -> dict[int, Vec]:
    """Row-reduced echelon basis of the row space mod p, keyed by pivot column.

    Every basis vector is monic at its pivot and zero at all other pivots.
    """
    basis: dict[int, Vec] = {}
    for row in rows:
        vec = reduce_mod_p(row, basis, p)
        if not vec:
            continue
        c = min(vec)
        inv = pow(vec[c], p - 2, p)
        vec = {k: v * inv % p for k, v in vec.items()}
        for b in basis.values():
            f = b.get(c)
            if f:
                for k, v in vec.items():
                    nv = (b.get(k, 0) - f * v) % p
                    if nv:
                        b[k] = nv
                    else:
                        b.pop(k, None)
        basis[c] = vec
    return basis


def reduce_mod_p(row: Mapping[int, int], basis: Mapping[int, Vec], p: int) -> Vec:
    """Reduce a vector against an RREF basis from :func:`rref_mod_p`."""
    vec = {k: v % p for k, v in row.items() if v % p}
    for c in sorted(set(vec) & set(basis)):
        f = vec.get(c)
        if f:
            for k, v in basis[c].items():
                nv = (vec.get(k, 0) - f * v) % p
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
    return vec


def kernel_mod_p(A: IntMatrix, p: int) -> list[Vec]:
    """A basis of the right kernel of A mod p."""
    basis = rref_mod_p((row for _, row in A.row_items()), p)
    pivots = set(basis)
    out = []
    for free in range(A.cols):
        if free in pivots:
            continue
        vec = {free: 1}
        for c, b in basis.items():
            f = b.get(free)
            if f:
                vec[c] = (-f) % p
        out.append(vec)
    return out
