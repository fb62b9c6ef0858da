import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcoh.groupalg import (
    GModule,
    cyclic_group,
    dihedral_group,
    periodic_resolution_cyclic,
    sign_homomorphisms,
    twist_module,
)
from eqcoh.groupcoh import (
    Cocycle,
    CocycleError,
    bar_resolution,
    coboundary_of,
    cochain_coboundary,
    cocycle_class,
    group_cohomology,
    restriction_map,
    twisted_point_cohomology,
)
from eqcoh.intlin import AbelianPresentation, cokernel, kernel_subgroup
from eqcoh.wallpaper import dual_action, lattice_action_matrices
from oracles import brute_group_cohomology

A = AbelianPresentation.parse


def _modules(G):
    mods = [GModule.trivial(G)]
    mods += [twist_module(GModule.trivial(G), phi) for phi in sign_homomorphisms(G).values()]
    return mods


SMALL = [cyclic_group(2), cyclic_group(3), cyclic_group(4), dihedral_group(2), dihedral_group(3)]
LATTICE_BY_GROUP = {"Z2": ["p2"], "Z3": ["p3"], "Z4": ["p4"], "D2": ["pmm", "cmm"], "D3": ["p3m1", "p31m"]}


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_bar_cohomology_matches_unnormalized_oracle(G):
    mods = _modules(G) + [lattice_action_matrices(n) for n in LATTICE_BY_GROUP[G.name]]
    for M in mods:
        for n in range(3):
            free, tors = brute_group_cohomology(G.order, G.mult, M.action, M.rank, n)
            assert group_cohomology(G, M, n) == AbelianPresentation.from_iso(free, tors), (M.name, n)


# values from the unnormalized-cochain oracle in tests/oracles.py, frozen here
# because that oracle takes several seconds for groups of order 8 and 12
FROZEN_LATTICE = {
    ("p6", 0): "0", ("p6", 1): "0", ("p6", 2): "0",
    ("p4m", 0): "0", ("p4m", 1): "Z_2", ("p4m", 2): "Z_2",
    ("p6m", 0): "0", ("p6m", 1): "0", ("p6m", 2): "0",
}


@pytest.mark.parametrize("key", sorted(FROZEN_LATTICE))
def test_lattice_cohomology_frozen_values(key):
    name, n = key
    M = lattice_action_matrices(name)
    assert group_cohomology(M.group, M, n) == A(FROZEN_LATTICE[key])


def test_known_cyclic_and_dihedral_values():
    assert group_cohomology(cyclic_group(5), GModule.trivial(cyclic_group(5)), 2) == A("Z_5")
    D4 = dihedral_group(4)
    assert [str(group_cohomology(D4, GModule.trivial(D4), n)) for n in range(4)] == ["Z", "0", "Z_2^2", "Z_2"]


CYCLIC_CASES = [
    (G, M)
    for G in (cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(6))
    for M in _modules(G)
] + [
    (lattice_action_matrices(n).group, mod)
    for n in ("p2", "p3", "p4", "p6", "pm", "cm")
    for mod in (lattice_action_matrices(n), dual_action(n))
]


@pytest.mark.parametrize("case", CYCLIC_CASES, ids=lambda c: f"{c[0].name}-{c[1].name}")
def test_bar_and_periodic_resolutions_agree(case):
    G, M = case
    periodic = periodic_resolution_cyclic(G, 4)
    for n in range(4):
        assert group_cohomology(G, M, n) == group_cohomology(G, M, n, resolution=periodic)


def test_resolution_too_short_is_rejected():
    G = cyclic_group(2)
    with pytest.raises(ValueError):
        group_cohomology(G, GModule.trivial(G), 3, resolution=periodic_resolution_cyclic(G, 2))
    with pytest.raises(ValueError):
        group_cohomology(G, GModule.trivial(G), -1)


# ------------------------------------------------------------------ cocycles
def test_cocycle_class_of_generator():
    G = cyclic_group(2)
    M = GModule.trivial(G)
    c = Cocycle.from_function(G, M, 2, lambda g, h: (1,))
    assert c.is_cocycle()
    assert cocycle_class(c) == (1,)


def test_non_cocycle_is_rejected():
    G = cyclic_group(3)
    M = GModule.trivial(G)
    c = Cocycle.from_function(G, M, 2, lambda g, h: (1,) if (g, h) == (1, 1) else (0,))
    assert not c.is_cocycle()
    with pytest.raises(CocycleError):
        cocycle_class(c)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["pmm", "p4", "cmm", "p3m1"]))
def test_coboundaries_have_zero_class(seed, name):
    rng = random.Random(seed)
    M = lattice_action_matrices(name)
    G = M.group
    values = {(g,): (rng.randint(-3, 3), rng.randint(-3, 3)) for g in G.non_identity}
    c = coboundary_of(G, M, 1, values)
    assert c.is_cocycle()
    H = group_cohomology(G, M, 2)
    assert H.is_zero_element(cocycle_class(c))


def test_cochain_coboundaries_compose_to_zero():
    M = lattice_action_matrices("p4m")
    res = bar_resolution(M.group, 3)
    for n in range(2):
        assert (cochain_coboundary(res, M, n + 1) @ cochain_coboundary(res, M, n)).is_zero()


# -------------------------------------------------------------- restriction
POINT_TWISTS = [
    (G, name)
    for G in (cyclic_group(2), cyclic_group(4), cyclic_group(6), dihedral_group(1), dihedral_group(2),
              dihedral_group(3), dihedral_group(4), dihedral_group(6))
    for name in sign_homomorphisms(G)
]


@pytest.mark.parametrize("case", POINT_TWISTS, ids=lambda c: f"{c[0].name}-{c[1]}")
def test_twisted_orders_from_restriction_to_kernel(case):
    """``|H^n(P; Z_phi)| = |coker res_n| |ker res_{n+1}|`` for restriction to ``ker phi``."""
    G, name = case
    phi = sign_homomorphisms(G)[name]
    K = phi.kernel()
    T = GModule.trivial(G)
    maps = [restriction_map(G, K, T, n) for n in range(5)]
    for n in range(4):
        H = twisted_point_cohomology(G, phi, n)
        assert H.order == cokernel(maps[n]).order * kernel_subgroup(maps[n + 1]).order


def test_restriction_to_whole_group_is_identity():
    D = dihedral_group(2)
    f = restriction_map(D, range(D.order), GModule.trivial(D), 2)
    assert cokernel(f).is_trivial
    assert kernel_subgroup(f).iso_type.is_trivial
