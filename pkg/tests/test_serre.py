import pytest

from eqcoh.gcw import GCWError, borel_filtered_cohomology, induced_module_on_cohomology
from eqcoh.groupcoh import group_cohomology
from eqcoh.intlin import AbelianPresentation
from eqcoh.serre import (
    MAX_P,
    SpectralPage,
    degeneracy_report,
    e2_page,
    einf_page,
    filtered_range,
    filtration_top_identity,
    stable_splitting_check,
)
from eqcoh.wallpaper import coefficient_module, torus_gcw, wedge_orbits

A = AbelianPresentation.parse


def test_window_is_enforced():
    with pytest.raises(ValueError):
        SpectralPage("E2", {(MAX_P + 1, 0): A("0")})
    with pytest.raises(ValueError):
        SpectralPage("E2", {(0, 3): A("0")})
    with pytest.raises(ValueError):
        e2_page(torus_gcw("p2"), coefficient_module("p2", "trivial"), max_p=5)


def test_e2_rows_are_group_cohomology():
    X = torus_gcw("p4")
    M = coefficient_module("p4", "phi1")
    e2 = e2_page(X, M, max_total=3)
    G = X.group
    det_twist = induced_module_on_cohomology(X, 2).tensor(M)
    for p in range(4):
        assert e2[(p, 0)] == group_cohomology(G, M, p)
    for p in range(2):
        assert e2[(p, 2)] == group_cohomology(G, det_twist, p)
    assert e2.total_degree(2) == [(0, 2), (1, 1), (2, 0)]


def test_hexagonal_twisted_first_cohomology_vanishes():
    X = torus_gcw("p6m")
    H1 = induced_module_on_cohomology(X, 1).tensor(coefficient_module("p6m", "phi2"))
    for n in range(3):
        assert group_cohomology(X.group, H1, n).is_trivial


def test_hexagonal_twisted_entry_survives():
    X = torus_gcw("p6m")
    M = coefficient_module("p6m", "phi2")
    e2 = e2_page(X, M, max_total=3)
    einf = einf_page({3: borel_filtered_cohomology(X, M, 3)})
    assert e2[(1, 2)] == A("Z_2") == einf[(1, 2)]


@pytest.mark.parametrize("name, coeff", [("p2", "trivial"), ("p2", "phi1"), ("pmm", "phi1"),
                                         ("cmm", "phi0"), ("p4m", "trivial"), ("p3m1", "phi0")])
def test_pages_agree_in_low_degrees(name, coeff):
    X = torus_gcw(name)
    M = coefficient_module(name, coeff)
    e2 = e2_page(X, M, max_total=3)
    fcs = filtered_range(X, M, range(4))
    einf = einf_page(fcs)
    rep = degeneracy_report(e2, einf)
    assert rep.degenerate, rep.lines()
    assert len(rep.entries) == 4 + 3 + 2
    for n, fc in fcs.items():
        assert fc.check_descending()
        # graded pieces multiply up to the total order when finite
        if fc.total.order is not None:
            prod = 1
            for p in range(n + 1):
                prod *= fc.graded(p).order
            assert prod == fc.total.order


def test_degeneracy_report_flags_differences():
    e2 = SpectralPage("E2", {(0, 1): A("Z_2^2"), (1, 0): A("Z")})
    einf = SpectralPage("Einf", {(0, 1): A("Z_2"), (1, 0): A("Z")})
    rep = degeneracy_report(e2, einf)
    assert not rep.degenerate
    assert rep.changed() == [(0, 1)]
    assert rep.entries[0].order_divides


def test_splitting_rejects_order_three():
    X = torus_gcw("p3")
    with pytest.raises(GCWError):
        stable_splitting_check(X, wedge_orbits(X), coefficient_module("p3", "trivial"), 1)


def test_splitting_rejects_non_subcomplex():
    X = torus_gcw("p2")
    top_only = ((), (), (0,))
    with pytest.raises(GCWError):
        stable_splitting_check(X, top_only, coefficient_module("p2", "trivial"), 1)


@pytest.mark.parametrize("name, coeff", [("p2", "phi1"), ("cm", "trivial"), ("p4m", "phi2")])
def test_splitting_is_an_isomorphism(name, coeff):
    X = torus_gcw(name)
    W = wedge_orbits(X)
    for n in range(4):
        rep = stable_splitting_check(X, W, coefficient_module(name, coeff), n)
        assert rep.orders_match
        assert rep.isomorphic


def test_filtration_top_identity_needs_degree_three():
    X = torus_gcw("pm")
    M = coefficient_module("pm", "trivial")
    e2 = e2_page(X, M, max_total=3)
    with pytest.raises(ValueError):
        filtration_top_identity(X, borel_filtered_cohomology(X, M, 2), e2)
    left, right = filtration_top_identity(X, borel_filtered_cohomology(X, M, 3), e2)
    assert left == right == A("Z_2")
