"""The Leray-Serre spectral sequence of the Borel fibration: E2 and E-infinity pages."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..gcw import (
    BorelComplex,
    FilteredCohomology,
    GCWComplex,
    GCWError,
    borel_filtered_cohomology,
    induced_module_on_cohomology,
)
from ..groupalg import GModule
from ..groupcoh import group_cohomology
from ..intlin import AbelianPresentation

MAX_P = 4
MAX_Q = 2


@dataclass(frozen=True)
class SpectralPage:
    """Entries ``(p, q)`` of one page inside the window ``p <= 4``, ``q <= 2``."""

    page_label: str
    entries: Mapping[tuple[int, int], AbelianPresentation] = field(default_factory=dict)

    def __post_init__(self):
        for p, q in self.entries:
            if not (0 <= p <= MAX_P and 0 <= q <= MAX_Q):
                raise ValueError(f"entry {(p, q)} lies outside the window")

    def __getitem__(self, key: tuple[int, int]) -> AbelianPresentation:
        return self.entries[key]

    def __contains__(self, key: object) -> bool:
        return key in self.entries

    def total_degree(self, n: int) -> list[tuple[int, int]]:
        return sorted(k for k in self.entries if sum(k) == n)

    def to_json(self) -> dict:
        return {
            "page": self.page_label,
            "entries": {f"{p},{q}": str(v) for (p, q), v in sorted(self.entries.items())},
        }


def _window(max_p: int, max_q: int, max_total: int | None) -> list[tuple[int, int]]:
    if max_p > MAX_P or max_q > MAX_Q:
        raise ValueError(f"window is capped at p <= {MAX_P}, q <= {MAX_Q}")
    return [
        (p, q)
        for q in range(max_q + 1)
        for p in range(max_p + 1)
        if max_total is None or p + q <= max_total
    ]


def e2_page(X: GCWComplex, M: GModule, max_p: int = MAX_P, max_q: int = MAX_Q,
            max_total: int | None = None) -> SpectralPage:
    """``E2^{p,q} = H^p(G; H^q(X) ⊗ M)`` over the window."""
    if M.group != X.group:
        raise ValueError("module and complex are over different groups")
    fibers: dict[int, GModule] = {}
    entries = {}
    for p, q in _window(max_p, max_q, max_total):
        if q > X.dimension:
            entries[(p, q)] = AbelianPresentation(0)
            continue
        if q not in fibers:
            fibers[q] = induced_module_on_cohomology(X, q).tensor(M)
        entries[(p, q)] = group_cohomology(X.group, fibers[q], p)
    return SpectralPage("E2", entries)


def filtered_range(X: GCWComplex, M: GModule, degrees: Sequence[int],
                   orbits: Sequence[Sequence[int]] | None = None) -> dict[int, FilteredCohomology]:
    return {n: borel_filtered_cohomology(X, M, n, orbits) for n in degrees}


def einf_page(filtered: Mapping[int, FilteredCohomology], max_p: int = MAX_P,
              max_q: int = MAX_Q) -> SpectralPage:
    """``E_inf^{p, n-p} = F^p / F^{p+1}`` from the filtrations of each total degree."""
    entries = {}
    for n, fc in filtered.items():
        if fc.degree != n:
            raise ValueError("filtration keyed under the wrong degree")
        for p in range(n + 1):
            q = n - p
            if p <= max_p and q <= max_q:
                entries[(p, q)] = fc.graded(p)
    return SpectralPage("Einf", entries)


@dataclass(frozen=True)
class EntryComparison:
    p: int
    q: int
    e2: AbelianPresentation
    einf: AbelianPresentation

    @property
    def equal(self) -> bool:
        return self.e2 == self.einf

    @property
    def order_divides(self) -> bool | None:
        """Order-level subquotient check; None when either side is infinite."""
        a, b = self.e2.order, self.einf.order
        if a is None or b is None:
            if self.einf.free_rank > self.e2.free_rank:
                return False
            return None
        return a % b == 0


@dataclass(frozen=True)
class DegeneracyReport:
    entries: tuple[EntryComparison, ...]

    @property
    def degenerate(self) -> bool:
        """Whether every compared entry survives unchanged (no claim outside the window)."""
        return all(e.equal for e in self.entries)

    def changed(self) -> list[tuple[int, int]]:
        return [(e.p, e.q) for e in self.entries if not e.equal]

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            flag = "" if e.equal else "  <- differential"
            out.append(f"({e.p},{e.q}): E2 = {e.e2}, Einf = {e.einf}{flag}")
        return out


def degeneracy_report(e2: SpectralPage, einf: SpectralPage) -> DegeneracyReport:
    """Compare the pages on their common entries."""
    common = sorted(set(e2.entries) & set(einf.entries))
    return DegeneracyReport(tuple(EntryComparison(p, q, e2[(p, q)], einf[(p, q)]) for p, q in common))


@dataclass(frozen=True)
class SplittingReport:
    degree: int
    total: AbelianPresentation
    point: AbelianPresentation
    wedge: AbelianPresentation
    relative: AbelianPresentation

    @property
    def summed(self) -> AbelianPresentation:
        return self.point.direct_sum(self.wedge).direct_sum(self.relative)

    @property
    def orders_match(self) -> bool:
        """Free ranks add up and torsion orders multiply."""
        s = self.summed
        return (s.free_rank == self.total.free_rank
                and _torsion_order(s) == _torsion_order(self.total))

    @property
    def isomorphic(self) -> bool:
        return self.summed == self.total


def _torsion_order(A: AbelianPresentation) -> int:
    out = 1
    for d in A.torsion:
        out *= d
    return out


def _has_order_three(X: GCWComplex) -> bool:
    G = X.group
    return any(G.element_order(g) % 3 == 0 for g in range(G.order))


def stable_splitting_check(X: GCWComplex, wedge: Sequence[Sequence[int]], M: GModule, n: int) -> SplittingReport:
    """Split ``H^n_G(X)`` along a fixed point and an invariant wedge of circles.

    Computes ``H^n_G(pt)``, ``H^n_G(wedge, pt)`` and ``H^n_G(X, wedge)``.
    """
    if _has_order_three(X):
        raise GCWError("the splitting needs a group without elements of order 3")
    if not X.is_closed(wedge):
        raise GCWError("marked wedge is not a subcomplex")
    fixed = [j for j in X.fixed_vertices() if j in set(wedge[0])]
    if not fixed:
        raise GCWError("marked wedge contains no fixed vertex")
    point = ((fixed[0],),) + tuple(() for _ in range(X.dimension))
    wedge_minus_point = tuple(
        tuple(j for j in wedge[d] if not (d == 0 and j == fixed[0])) if d < len(wedge) else ()
        for d in range(X.dimension + 1)
    )
    total = BorelComplex(X, M).cohomology(n)
    pt = BorelComplex(X, M, point).cohomology(n)
    wedge_part = BorelComplex(X, M, wedge_minus_point).cohomology(n)
    relative = BorelComplex(X, M, X.complement(wedge)).cohomology(n)
    return SplittingReport(n, total, pt, wedge_part, relative)


def filtration_top_identity(X: GCWComplex, fc3: FilteredCohomology, e2: SpectralPage) -> tuple[AbelianPresentation, AbelianPresentation]:
    """``(F^2 H^3, E2^{2,1} ⊕ E2^{3,0})`` for comparison."""
    if fc3.degree != 3:
        raise ValueError("needs the filtration of H^3")
    return fc3.filtration[2].iso_type, e2[(2, 1)].direct_sum(e2[(3, 0)])


__all__ = [
    "DegeneracyReport",
    "EntryComparison",
    "MAX_P",
    "MAX_Q",
    "SpectralPage",
    "SplittingReport",
    "degeneracy_report",
    "e2_page",
    "einf_page",
    "filtered_range",
    "filtration_top_identity",
    "stable_splitting_check",
]
