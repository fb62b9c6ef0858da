import itertools
import json
import math
from fractions import Fraction

import pytest

from eqcoh.groupalg import mat_det, mat_mul, mat_transpose, sign_homomorphisms
from eqcoh.wallpaper import (
    ACTION_ROWS,
    NAMES,
    NONSYMMORPHIC,
    action_image,
    bounded_conjugacy_search,
    bounded_intertwiner_search,
    catalog,
    catalog_json,
    coefficient_module,
    dual_action,
    entry,
    lattice_action_matrices,
    phi_names,
    row_representative,
)

POINT_GROUP = {
    "p1": "Z1", "p2": "Z2", "p3": "Z3", "p4": "Z4", "p6": "Z6",
    "pm": "D1", "pg": "D1", "cm": "D1",
    "pmm": "D2", "pmg": "D2", "pgg": "D2", "cmm": "D2",
    "p3m1": "D3", "p31m": "D3", "p4m": "D4", "p4g": "D4", "p6m": "D6",
}


def test_catalog_has_seventeen_groups_in_thirteen_rows():
    assert len(catalog()) == 17
    assert len(NAMES) == 17
    assert len(ACTION_ROWS) == 13
    assert sorted({entry(n).row for n in NAMES}) == sorted(ACTION_ROWS)
    assert set(NONSYMMORPHIC) == {"pg", "pmg", "pgg", "p4g"}


@pytest.mark.parametrize("name", NAMES)
def test_point_groups(name):
    assert entry(name).point_group.name == POINT_GROUP[name]


@pytest.mark.parametrize("name", NAMES)
def test_lattice_action_is_faithful_and_crystallographic(name):
    M = lattice_action_matrices(name)
    G = M.group
    M.validate()
    assert len(action_image(M)) == G.order
    for g in range(G.order):
        A = M.action[g]
        k = G.element_order(g)
        tr = A[0][0] + A[1][1]
        if mat_det(A) == 1:
            # a rotation through 2 pi / k has trace 2 cos(2 pi / k)
            assert tr == round(2 * math.cos(2 * math.pi / k))
        else:
            assert k == 2 and tr == 0


@pytest.mark.parametrize("name", NAMES)
def test_lattice_action_preserves_a_metric(name):
    M = lattice_action_matrices(name)
    # average the standard form over the group; it must be invariant and nondegenerate
    Q = [[Fraction(0)] * 2 for _ in range(2)]
    for A in M.action:
        AtA = mat_mul(mat_transpose(A), A)
        for i, j in itertools.product(range(2), repeat=2):
            Q[i][j] += AtA[i][j]
    for A in M.action:
        At = mat_transpose(A)
        QA = [[sum(Q[i][k] * A[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        AtQA = [[sum(At[i][k] * QA[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        assert AtQA == Q
    assert Q[0][0] * Q[1][1] - Q[0][1] ** 2 > 0


def test_grouped_rows_share_their_action():
    for row in ACTION_ROWS:
        names = [n for n in NAMES if entry(n).row == row]
        mods = {lattice_action_matrices(n) for n in names}
        assert len(mods) == 1
        assert row_representative(row) == names[0]


@pytest.mark.parametrize("name", NAMES)
def test_orientation(name):
    e = entry(name)
    assert e.orientation_reversing() == e.point_group.name.startswith("D")


@pytest.mark.parametrize("name", NAMES)
def test_available_twists(name):
    G = entry(name).point_group
    expected = sorted(sign_homomorphisms(G)) if G.order > 1 else []
    assert phi_names(name) == expected
    for phi in phi_names(name):
        M = coefficient_module(name, phi)
        assert M.rank == 1
        assert any(M.action[g] == ((-1,),) for g in range(G.order))


def test_unavailable_twist_raises():
    with pytest.raises(KeyError):
        coefficient_module("p3", "phi1")
    with pytest.raises(KeyError):
        coefficient_module("pm", "phi2")
    with pytest.raises(KeyError):
        entry("p5")


@pytest.mark.parametrize("name", NAMES)
def test_vector_systems_are_half_lattice(name):
    e = entry(name)
    for g in range(e.point_group.order):
        v = e.vector(g)
        assert all(x.denominator in (1, 2) for x in v)
    assert e.symmorphic == (name not in NONSYMMORPHIC)


def test_catalog_json_is_serializable():
    data = catalog_json()
    assert json.loads(json.dumps(data)) == data
    assert {d["name"] for d in data} == set(NAMES)
    assert all(len(x["torus_orbits"]) == 3 for x in data)


# ------------------------------------------------------------------ conjugacy
def _unimodular(bound):
    rng = range(-bound, bound + 1)
    return [((a, b), (c, d)) for a, b, c, d in itertools.product(rng, repeat=4) if a * d - b * c in (1, -1)]


def test_conjugacy_search_matches_brute_force_on_small_bound():
    """The ordered search succeeds exactly when a plain enumeration does."""
    A = lattice_action_matrices("p31m").action
    for other in ("p3m1", "p31m"):
        for mats in (lattice_action_matrices(other).action, dual_action(other).action):
            B = set(mats)
            brute = any(
                {mat_mul(mat_mul(T, m), ((T[1][1] * d, -T[0][1] * d), (-T[1][0] * d, T[0][0] * d))) for m in A} == B
                for T in _unimodular(2)
                for d in [T[0][0] * T[1][1] - T[0][1] * T[1][0]]
            )
            assert (bounded_conjugacy_search(A, mats, 2) is not None) == brute


def test_conjugator_conjugates():
    A = dual_action("p3m1").action
    B = lattice_action_matrices("p31m").action
    T = bounded_conjugacy_search(A, B)
    assert T is not None
    det = mat_det(T)
    Ti = ((T[1][1] * det, -T[0][1] * det), (-T[1][0] * det, T[0][0] * det))
    assert {mat_mul(mat_mul(T, m), Ti) for m in A} == set(B)


def test_hexagonal_reflection_actions_are_not_self_dual():
    assert bounded_conjugacy_search(dual_action("p3m1").action, lattice_action_matrices("p3m1").action) is None


@pytest.mark.parametrize("name", ["p2", "p4", "pm", "cm", "pmm", "cmm", "p4m"])
def test_intertwiner_with_dual(name):
    M, D = lattice_action_matrices(name), dual_action(name)
    T = bounded_intertwiner_search(M, D)
    assert T is not None
    for g in range(M.group.order):
        assert mat_mul(T, M.action[g]) == mat_mul(D.action[g], T)
