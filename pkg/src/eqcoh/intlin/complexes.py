"""Cohomology of integer cochain complexes."""

from __future__ import annotations

import random
from typing import Protocol, Sequence, Union

from .abelian import AbelianPresentation
from .elimination import Elimination, _check_prime, rank_mod_p
from .matrix import IntMatrix

# any prime works for the rank certificate; a large one makes accidental
# rank drops negligible
CERTIFICATE_PRIME = 2147483647

# above this many stored entries the complex condition is checked with
# random vectors instead of a full matrix product
EXACT_CHECK_LIMIT = 200_000


class RowSource(Protocol):
    """A matrix that can be materialized whole or on a subset of rows."""

    rows: int
    cols: int

    def select(self, rows: Sequence[int] | None = None) -> IntMatrix: ...


Coboundary = Union[IntMatrix, RowSource]


class ComplexError(ValueError):
    """Raised for mismatched dimensions or a violated complex condition."""


def check_complex(d_in: IntMatrix, d_out: IntMatrix, p: int | None = None, seed: int = 0) -> None:
    """Raise ComplexError unless ``d_out @ d_in == 0`` (modulo ``p`` if given).

    Large inputs use two random test vectors modulo a prime instead of the
    full product.
    """
    if d_out.cols != d_in.rows:
        raise ComplexError(f"cannot compose {d_out.shape} after {d_in.shape}")
    if d_in.nnz + d_out.nnz <= EXACT_CHECK_LIMIT:
        prod = d_out @ d_in
        bad = prod.entries if p is None else [e for e in prod.entries if e[2] % p]
        if bad:
            raise ComplexError(f"complex condition fails at {bad[0][:2]}")
        return
    q = CERTIFICATE_PRIME if p is None else p
    rng = random.Random(seed)
    for _ in range(2):
        x = {j: rng.randrange(1, q) for j in range(d_in.cols)}
        y = d_out.apply({i: v % q for i, v in d_in.apply(x).items()})
        if any(v % q for v in y.values()):
            raise ComplexError("complex condition fails on a random test vector")


def _materialize(d: Coboundary) -> IntMatrix:
    return d if isinstance(d, IntMatrix) else d.select(None)


def cohomology_at(
    d_in: IntMatrix,
    d_out: Coboundary,
    row_hint: Sequence[int] | None = None,
    check: bool = True,
) -> AbelianPresentation:
    """``ker(d_out) / im(d_in)`` in canonical form.

    The result carries a ``basis_map`` from cocycle coordinates to canonical
    coordinates and representative cocycles in ``generators``.

    Only ``d_in`` is fully reduced.  The free rank ``N - rank(d_in) -
    rank(d_out)`` is first bounded using a rank modulo a large prime of the
    rows listed in ``row_hint`` (then of all rows): a rank mod p never exceeds
    the rational rank, so reaching the upper bound proves the free rank is
    zero.  Otherwise ``d_out`` is reduced exactly as well.

    >>> z = IntMatrix.zeros
    >>> str(cohomology_at(z(2, 0), z(0, 2)))
    'Z^2'
    >>> str(cohomology_at(IntMatrix.from_dense([[2]]), z(0, 1)))
    'Z_2'
    """
    n = d_in.rows
    if d_out.cols != n:
        raise ComplexError(f"d_out has {d_out.cols} columns but d_in has {n} rows")
    full_out: IntMatrix | None = d_out if isinstance(d_out, IntMatrix) else None
    if check:
        if full_out is not None:
            check_complex(d_in, full_out)
        elif row_hint is not None:
            check_complex(d_in, d_out.select(row_hint))

    elim = Elimination(d_in)
    pivot_rows = {r for r, _, _ in elim.pivots}
    torsion = [(r, d) for r, _, d in elim.pivots if d > 1]
    rest = [i for i in range(n) if i not in pivot_rows]

    free_certified = not rest
    if not free_certified and row_hint is not None:
        sub = d_out.select(row_hint)
        free_certified = rank_mod_p(sub, CERTIFICATE_PRIME, check_prime=False) == len(rest)
    if not free_certified:
        if full_out is None:
            full_out = _materialize(d_out)
            if check:
                check_complex(d_in, full_out)
        free_certified = rank_mod_p(full_out, CERTIFICATE_PRIME, check_prime=False) == len(rest)

    free_rows: list[dict[int, int]] = []
    free_gens: list[dict[int, int]] = []
    if not free_certified:
        assert full_out is not None
        columns = full_out.column_dicts()
        elim.right_multiply_u_inverse(columns)
        restricted = IntMatrix.from_columns(full_out.rows, [columns.get(w, {}) for w in rest])
        inner = Elimination(restricted)
        used = {c for _, c, _ in inner.pivots}
        for j in range(len(rest)):
            if j in used:
                continue
            v = inner.v_apply({j: 1})
            free_gens.append(elim.u_inverse_apply({rest[i]: x for i, x in v.items()}))
            w = inner.v_inverse_row({j: 1})
            free_rows.append(elim.u_row({rest[i]: x for i, x in w.items()}))

    tors_rows = []
    for r, d in torsion:
        row = elim.u_row({r: 1})
        tors_rows.append({c: v % d for c, v in row.items() if v % d})
    rows = free_rows + tors_rows
    return AbelianPresentation(
        free_rank=len(free_rows),
        torsion=tuple(d for _, d in torsion),
        basis_map=IntMatrix.from_row_dicts(len(rows), n, dict(enumerate(rows))),
        generators=tuple(free_gens) + tuple(elim.u_inverse_apply({r: 1}) for r, _ in torsion),
    )


def mod_p_cohomology_at(d_in: IntMatrix, d_out: IntMatrix, p: int, check: bool = True) -> int:
    """Dimension of ``ker(d_out) / im(d_in)`` over the field with p elements.

    >>> mod_p_cohomology_at(IntMatrix.from_dense([[2]]), IntMatrix.zeros(0, 1), 2)
    1
    """
    _check_prime(p)
    if d_out.cols != d_in.rows:
        raise ComplexError(f"cannot compose {d_out.shape} after {d_in.shape}")
    if check:
        check_complex(d_in, d_out, p=p)
    return d_in.rows - rank_mod_p(d_out, p, check_prime=False) - rank_mod_p(d_in, p, check_prime=False)
