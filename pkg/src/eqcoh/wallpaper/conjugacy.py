"""Bounded searches for conjugating matrices in GL(2, Z)."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from ..groupalg import GModule, mat_mul

Mat = tuple[tuple[int, ...], ...]

DEFAULT_BOUND = 5


def _candidates(bound: int):
    """Unimodular 2x2 matrices with entries in ``[-bound, bound]``, smallest entries first."""
    for size in range(1, bound + 1):
        rng = range(-size, size + 1)
        found = []
        for a, b, c, d in itertools.product(rng, repeat=4):
            if max(abs(a), abs(b), abs(c), abs(d)) != size:
                continue
            det = a * d - b * c
            if det in (1, -1):
                entries = (a, b, c, d)
                key = (sum(map(abs, entries)), sum(x < 0 for x in entries), tuple(-x for x in entries))
                found.append((key, ((a, b), (c, d)), det))
        for _, T, det in sorted(found):
            yield T, det


def _inverse(T: Mat, det: int) -> Mat:
    (a, b), (c, d) = T
    return ((d * det, -b * det), (-c * det, a * det))


def _freeze(mats: Iterable[Sequence[Sequence[int]]]) -> frozenset[Mat]:
    return frozenset(tuple(tuple(r) for r in m) for m in mats)


def bounded_conjugacy_search(A: Iterable[Sequence[Sequence[int]]], B: Iterable[Sequence[Sequence[int]]],
                             bound: int = DEFAULT_BOUND) -> Mat | None:
    """A matrix ``T`` with ``T A T^-1 = B`` as sets, or None if none has entries within ``bound``.

    None means inconclusive: a conjugator with larger entries may exist.

    >>> bounded_conjugacy_search([((0, -1), (1, 0))], [((0, 1), (-1, 0))])
    ((0, 1), (1, 0))
    """
    sa, sb = _freeze(A), _freeze(B)
    if len(sa) != len(sb):
        return None
    for T, det in _candidates(bound):
        Ti = _inverse(T, det)
        if all(mat_mul(mat_mul(T, m), Ti) in sb for m in sa):
            return T
    return None


def bounded_intertwiner_search(M: GModule, N: GModule, bound: int = DEFAULT_BOUND) -> Mat | None:
    """A unimodular ``T`` with ``T M(g) = N(g) T`` for every element, or None within ``bound``."""
    if M.group != N.group or M.rank != 2 or N.rank != 2:
        raise ValueError("need two rank-2 modules over the same group")
    for T, _ in _candidates(bound):
        if all(mat_mul(T, M.action[g]) == mat_mul(N.action[g], T) for g in range(M.group.order)):
            return T
    return None


def action_image(M: GModule) -> frozenset[Mat]:
    """The set of matrices by which the group acts."""
    return _freeze(M.action)
