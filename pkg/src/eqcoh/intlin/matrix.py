"""Sparse integer matrices stored row-major as dictionaries."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence


class IntMatrix:
    """A sparse matrix with arbitrary-precision integer entries.

    Entries are kept as ``{row: {col: value}}`` with no stored zeros.
    Duplicate ``(row, col)`` pairs passed to the constructor are summed.

    >>> A = IntMatrix.from_dense([[2, 0], [0, 3]])
    >>> A.entries
    [(0, 0, 2), (1, 1, 3)]
    >>> (A @ A).to_dense()
    [[4, 0], [0, 9]]
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[tuple[int, int, int]] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, int]] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if v:
                row = data.setdefault(r, {})
                nv = row.get(c, 0) + v
                if nv:
                    row[c] = nv
                else:
                    del row[c]
        self._data = {r: row for r, row in data.items() if row}

    @classmethod
    def from_row_dicts(cls, rows: int, cols: int, data: Mapping[int, Mapping[int, int]]) -> "IntMatrix":
        """Build from ``{row: {col: value}}``; zero values are dropped."""
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        clean: dict[int, dict[int, int]] = {}
        for r, row in data.items():
            kept = {c: v for c, v in row.items() if v}
            if kept:
                clean[r] = kept
        m._data = clean
        return m

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        nrows = len(dense)
        ncols = cols if cols is not None else (len(dense[0]) if nrows else 0)
        data = {}
        for i, row in enumerate(dense):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            data[i] = {j: int(v) for j, v in enumerate(row) if v}
        return cls.from_row_dicts(nrows, ncols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_row_dicts(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_row_dicts(rows, cols, {})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, int]]) -> "IntMatrix":
        """Build a matrix whose j-th column is the sparse vector ``columns[j]``."""
        data: dict[int, dict[int, int]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data.setdefault(i, {})[j] = v
        return cls.from_row_dicts(rows, len(columns), data)

    # ------------------------------------------------------------------ access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> list[tuple[int, int, int]]:
        return [(r, c, v) for r in sorted(self._data) for c, v in sorted(self._data[r].items())]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def row(self, i: int) -> dict[int, int]:
        return dict(self._data.get(i, {}))

    def row_items(self) -> Iterator[tuple[int, dict[int, int]]]:
        """Iterate over (row index, row dict) for non-empty rows; dicts must not be mutated."""
        return iter(self._data.items())

    def row_dicts(self) -> dict[int, dict[int, int]]:
        """A deep copy of the row storage."""
        return {r: dict(row) for r, row in self._data.items()}

    def column_dicts(self) -> dict[int, dict[int, int]]:
        cols: dict[int, dict[int, int]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                cols.setdefault(c, {})[r] = v
        return cols

    def __getitem__(self, key: tuple[int, int]) -> int:
        r, c = key
        return self._data.get(r, {}).get(c, 0)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._data

    # -------------------------------------------------------------- arithmetic
    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_row_dicts(self.cols, self.rows, self.column_dicts())

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        odata = other._data
        out: dict[int, dict[int, int]] = {}
        for r, row in self._data.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                orow = odata.get(k)
                if orow:
                    for c, w in orow.items():
                        acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return IntMatrix.from_row_dicts(self.rows, other.cols, out)

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Matrix times a sparse column vector."""
        out: dict[int, int] = {}
        for r, row in self._data.items():
            s = 0
            for c, v in row.items():
                x = vec.get(c)
                if x:
                    s += v * x
            if s:
                out[r] = s
        return out

    def apply_dense(self, vec: Sequence[int]) -> list[int]:
        out = [0] * self.rows
        for r, row in self._data.items():
            out[r] = sum(v * vec[c] for c, v in row.items())
        return out

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = self.row_dicts()
        for r, row in other._data.items():
            tgt = out.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, 0) + v
        return IntMatrix.from_row_dicts(self.rows, self.cols, out)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.from_row_dicts(
            self.rows, self.cols, {r: {c: -v for c, v in row.items()} for r, row in self._data.items()}
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix.from_row_dicts(
            self.rows, self.cols, {r: {c: k * v for c, v in row.items()} for r, row in self._data.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self.entries)))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_dense()})"
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -------------------------------------------------------------- selection
    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "IntMatrix":
        """Submatrix on the given row and column index lists (in the given order)."""
        if rows is None:
            rows = range(self.rows)
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = None if cols is None else {c: j for j, c in enumerate(cols)}
        out: dict[int, dict[int, int]] = {}
        for r, i in rmap.items():
            row = self._data.get(r)
            if not row:
                continue
            if cmap is None:
                out[i] = dict(row)
            else:
                sel = {cmap[c]: v for c, v in row.items() if c in cmap}
                if sel:
                    out[i] = sel
        return IntMatrix.from_row_dicts(len(rmap), self.cols if cmap is None else len(cmap), out)

    def mod(self, p: int) -> "IntMatrix":
        return IntMatrix.from_row_dicts(
            self.rows, self.cols, {r: {c: v % p for c, v in row.items()} for r, row in self._data.items()}
        )

    @staticmethod
    def hstack(blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = blocks[0].rows
        out: dict[int, dict[int, int]] = {}
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise ValueError("row mismatch in hstack")
            for r, row in b._data.items():
                tgt = out.setdefault(r, {})
                for c, v in row.items():
                    tgt[c + off] = v
            off += b.cols
        return IntMatrix.from_row_dicts(rows, off, out)

    @staticmethod
    def vstack(blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        cols = blocks[0].cols
        out: dict[int, dict[int, int]] = {}
        off = 0
        for b in blocks:
            if b.cols != cols:
                raise ValueError("column mismatch in vstack")
            for r, row in b._data.items():
                out[r + off] = dict(row)
            off += b.rows
        return IntMatrix.from_row_dicts(off, cols, out)


def dense_vector(vec: Mapping[int, int], n: int) -> list[int]:
    out = [0] * n
    for i, v in vec.items():
        out[i] = v
    return out


def sparse_vector(vec: Sequence[int]) -> dict[int, int]:
    return {i: v for i, v in enumerate(vec) if v}
