"""Smith normal form with materialized unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass

from .elimination import Elimination
from .matrix import IntMatrix


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right`` is diagonal with nonzero diagonal ``d``.

    ``d`` lists only the nonzero invariant factors, so ``len(d) == rank``.
    """

    d: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    rank: int


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Smith normal form of ``A`` together with its transforms.

    >>> smith_normal_form(IntMatrix.from_dense([[2, 4], [6, 8]])).d
    (2, 4)
    """
    elim = Elimination(A)
    return SmithForm(
        d=tuple(elim.diagonal),
        left=elim.left_matrix(),
        right=elim.right_matrix(),
        rank=elim.rank,
    )


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form, without materializing transforms."""
    return tuple(Elimination(A).diagonal)
