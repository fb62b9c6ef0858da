import pytest

from eqcoh.gcw import (
    BorelComplex,
    GCWComplex,
    GCWError,
    OrbitCell,
    borel_cohomology,
    borel_filtered_cohomology,
    expand_to_cw,
    fixed_point_split_check,
    induced_module_on_cohomology,
    point_complex,
    relative_borel_cohomology,
    restriction_to_subcomplex,
)
from eqcoh.groupalg import GModule, cyclic_group, dihedral_group, sign_homomorphisms, twist_module
from eqcoh.groupcoh import group_cohomology
from eqcoh.intlin import AbelianPresentation
from eqcoh.wallpaper import (
    ACTION_ROWS,
    coefficient_module,
    lattice_action_matrices,
    p6m_line_orbits,
    row_representative,
    torus_gcw,
    wedge_orbits,
)

A = AbelianPresentation.parse
Z2 = cyclic_group(2)
ALL = (0, 1)


def antipodal_circle():
    """Z_2 swapping two vertices and two edges of a circle."""
    g = Z2.index("C")
    return GCWComplex(
        Z2,
        ((OrbitCell((0,), "v"),), (OrbitCell((0,), "e"),)),
        ((), (((0, g, 1), (0, 0, -1)),)),
        "antipodal",
    )


def reflected_circle():
    """Z_2 fixing two vertices and swapping the two arcs between them."""
    return GCWComplex(
        Z2,
        ((OrbitCell(ALL, "v0"), OrbitCell(ALL, "v1")), (OrbitCell((0,), "e"),)),
        ((), (((1, 0, 1), (0, 0, -1)),)),
        "reflection",
    )


def test_point_complex_gives_group_cohomology():
    D = dihedral_group(3)
    X = point_complex(D)
    X.validate()
    for M in (GModule.trivial(D), twist_module(GModule.trivial(D), sign_homomorphisms(D)["phi0"])):
        for n in range(4):
            assert borel_cohomology(X, M, n) == group_cohomology(D, M, n)


def test_free_action_gives_quotient_cohomology():
    X = antipodal_circle()
    X.validate([A("Z"), A("Z")])
    M = GModule.trivial(Z2)
    # the quotient of a free action on a circle is again a circle
    assert [str(borel_cohomology(X, M, n)) for n in range(4)] == ["Z", "Z", "0", "0"]


def test_reflected_circle_by_hand():
    # long exact sequence of the pair (circle, two fixed points), whose
    # relative part is a free arc: Z, 0, Z_2^2, 0, Z_2^2
    X = reflected_circle()
    X.validate([A("Z"), A("Z")])
    M = GModule.trivial(Z2)
    assert [str(borel_cohomology(X, M, n)) for n in range(5)] == ["Z", "0", "Z_2^2", "0", "Z_2^2"]
    assert str(relative_borel_cohomology(X, ((0, 1), ()), M, 1)) == "Z"


def test_fixed_point_split_on_reflected_circle():
    X = reflected_circle()
    for n in range(4):
        rep = fixed_point_split_check(X, GModule.trivial(Z2), n)
        assert rep.ok
        assert rep.restriction_surjective


def test_fixed_point_split_needs_a_fixed_vertex():
    with pytest.raises(GCWError):
        fixed_point_split_check(antipodal_circle(), GModule.trivial(Z2), 1)


def test_invalid_complexes_are_rejected():
    # a boundary that is not stabilizer invariant
    bad = GCWComplex(
        Z2,
        ((OrbitCell(ALL, "v0"), OrbitCell((0,), "w")), (OrbitCell(ALL, "e"),)),
        ((), (((1, 0, 1), (0, 0, -1)),)),
    )
    with pytest.raises(GCWError):
        bad.validate()
    # a wrong expected cohomology
    with pytest.raises(GCWError):
        antipodal_circle().validate([A("Z"), A("Z^2")])
    # relative cohomology needs a subcomplex
    X = reflected_circle()
    assert not X.is_closed(((0,), (0,)))
    with pytest.raises(GCWError):
        relative_borel_cohomology(X, ((0,), (0,)), GModule.trivial(Z2), 1)


def test_json_round_trip():
    X = reflected_circle()
    assert GCWComplex.from_json(X.to_json(), Z2) == X


# ------------------------------------------------------------- torus complexes
@pytest.mark.parametrize("row", ACTION_ROWS)
def test_torus_complexes_are_tori(row):
    X = torus_gcw(row_representative(row))
    X.validate_torus()
    exp = expand_to_cw(X)
    assert exp.euler_characteristic == 0
    assert [str(exp.cohomology(d)) for d in range(3)] == ["Z", "Z^2", "Z"]
    for d in range(2, X.dimension + 1):
        assert (exp.boundary[d - 1] @ exp.boundary[d]).is_zero()


@pytest.mark.parametrize("row", ACTION_ROWS)
def test_induced_action_on_first_cohomology_is_the_pullback(row):
    name = row_representative(row)
    X = torus_gcw(name)
    G = X.group
    H1 = induced_module_on_cohomology(X, 1)
    L = lattice_action_matrices(name)
    for g in range(G.order):
        # the pullback along g is the transpose of the lattice matrix
        pull = H1.action[G.inv(g)]
        Lg = L.action[g]
        assert [list(r) for r in pull] == [[Lg[j][i] for j in range(2)] for i in range(2)]
    H2 = induced_module_on_cohomology(X, 2)
    for g in range(G.order):
        Lg = L.action[g]
        assert H2.action[g][0][0] == Lg[0][0] * Lg[1][1] - Lg[0][1] * Lg[1][0]


def test_borel_complex_is_a_complex():
    X = torus_gcw("p4m")
    B = BorelComplex(X, coefficient_module("p4m", "phi1"))
    for n in range(3):
        assert (B.coboundary(n + 1).select() @ B.coboundary(n).select()).is_zero()


def test_filtration_is_descending_and_exhaustive():
    X = torus_gcw("cmm")
    fc = borel_filtered_cohomology(X, coefficient_module("cmm", "trivial"), 2)
    assert fc.check_descending()
    assert fc.filtration[0].iso_type == fc.total
    assert fc.filtration[-1].iso_type.is_trivial


# ------------------------------------------------------- invariant subspaces
def test_p6m_line_subcomplex_trivial_coefficients():
    X = torus_gcw("p6m")
    Y = p6m_line_orbits()
    M = coefficient_module("p6m", "trivial")
    assert [str(borel_cohomology(X, M, n, Y)) for n in range(4)] == ["Z", "0", "Z_2^3", "Z_2^2"]


def test_p6m_line_subcomplex_twisted_coefficients():
    X = torus_gcw("p6m")
    Y = p6m_line_orbits()
    M = coefficient_module("p6m", "phi2")
    assert [str(borel_cohomology(X, M, n, Y)) for n in range(4)] == ["0", "Z_2", "Z_2^2", "Z_2^3"]


def test_p4m_wedge():
    X = torus_gcw("p4m")
    W = wedge_orbits(X)
    assert X.is_closed(W)
    M = coefficient_module("p4m", "trivial")
    assert [str(borel_cohomology(X, M, n, W)) for n in range(4)] == ["Z", "0", "Z_2^3", "Z_2^2"]


def test_p6m_relative_to_one_skeleton():
    X = torus_gcw("p6m")
    sk = X.skeleton_orbits(1)
    assert str(relative_borel_cohomology(X, sk, coefficient_module("p6m", "trivial"), 2)) == "Z"


@pytest.mark.parametrize("name", ["p2", "p4", "pmm", "p4m"])
def test_fixed_point_split_on_tori(name):
    X = torus_gcw(name)
    for n in range(3):
        assert fixed_point_split_check(X, coefficient_module(name, "trivial"), n).ok


def test_restriction_to_a_fixed_point_is_onto_point_cohomology():
    X = torus_gcw("p2")
    fixed = X.fixed_vertices()
    assert len(fixed) >= 1
    pt = ((fixed[0],), (), ())
    f = restriction_to_subcomplex(X, pt, coefficient_module("p2", "trivial"), 2)
    assert f.target == A("Z_2")
