import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from typsep.helly import kappa_exact, left_coset
from typsep.lattice import bits_to_list, popcount
from typsep.orbits import (
    COUNTEREXAMPLE,
    DWISE_FAILS,
    GLOBAL_EQUAL,
    ActionTable,
    LinearAction,
    TupleInstance,
    coset_space_action,
    diagonal_cyclic_action,
    duality_trials,
    dwise_implies_global,
    embed_instance,
    orbit_duality_check,
    permutation_module,
    probe_actions,
    random_instance,
    same_orbit,
    transporter,
    verify_reductive_bound,
    witness_instance,
)

from conftest import group, lat


def brute_same(t):
    g = t.action.group
    return any(
        all(t.action.apply(h, a) == b for a, b in zip(t.x, t.x_prime)) for h in range(g.order)
    )


def brute_verdict(t, d):
    if brute_same(t):
        return GLOBAL_EQUAL
    for idx in combinations(range(t.m), d):
        sub = TupleInstance(t.action, tuple(t.x[i] for i in idx), tuple(t.x_prime[i] for i in idx))
        if not brute_same(sub):
            return DWISE_FAILS
    return COUNTEREXAMPLE


def c3_on_gf7():
    return diagonal_cyclic_action(3, 7, [2, 4])


def test_c3_transporter_examples():
    a = c3_on_gf7()
    t = transporter(a, (1, 1), (2, 4))
    assert t is not None and t.size == 1
    assert transporter(a, (1, 1), (1, 2)) is None
    stab = transporter(a, (0, 0), (0, 0))
    assert popcount(stab.members) == 3 and stab.members == stab.subgroup
    # distinct fixed points
    assert transporter(a, (0, 0), (0, 0)).members and transporter(a, (0, 0), (1, 0)) is None


def test_transporter_is_left_coset_of_stabilizer():
    g = group("binary:tet")
    action, _ = coset_space_action(g, lat("binary:tet").subgroups[1:5])
    for x in range(action.points):
        for y in range(0, action.points, 3):
            t = transporter(action, x, y)
            if t is None:
                continue
            stab = transporter(action, x, x).members
            assert t.size == popcount(stab)
            for h in bits_to_list(t.members):
                assert left_coset(g, stab, h).members == t.members


def test_bad_actions_rejected():
    g = group("cyclic:3")
    with pytest.raises(ValueError):
        ActionTable(g, [[0, 1], [1, 0], [0, 1]])  # not a homomorphism
    with pytest.raises(ValueError):
        ActionTable(g, [[1, 0], [0, 1], [1, 0]])  # identity moves points
    with pytest.raises(ValueError):
        LinearAction(g, 7, [[[1]], [[2]], [[3]]])  # 2 * 2 != 3 mod 7


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_same_orbit_properties(seed):
    rng = random.Random(seed)
    g, L = group("dicyclic:3"), lat("dicyclic:3")
    action = probe_actions(g, L, rng)[rng.randrange(6)]
    t = random_instance(action, rng.randint(1, 5), rng)
    ok, wit = same_orbit(t)
    assert ok == brute_same(t)
    if ok:
        assert all(action.apply(wit, a) == b for a, b in zip(t.x, t.x_prime))
    flipped = TupleInstance(action, t.x_prime, t.x)
    assert same_orbit(flipped)[0] == ok
    h = rng.randrange(g.order)
    moved = TupleInstance(action, t.x, tuple(action.apply(h, p) for p in t.x_prime))
    assert same_orbit(moved)[0] == ok
    for d in range(1, t.m + 1):
        assert dwise_implies_global(t, d).verdict == brute_verdict(t, d)


def test_identical_tuples_global_equal():
    a = c3_on_gf7()
    t = TupleInstance(a, ((1, 2), (3, 4)), ((1, 2), (3, 4)))
    assert same_orbit(t) == (True, 0)
    for d in (1, 2):
        assert dwise_implies_global(t, d).verdict == GLOBAL_EQUAL
    with pytest.raises(ValueError):
        dwise_implies_global(t, 3)


def test_klein4_witness_instance():
    g, L = group("klein4"), lat("klein4")
    _, w = kappa_exact(g, L)
    t = witness_instance(g, w)
    assert t.m == 3 and t.action.points == 6
    assert same_orbit(t) == (False, None)
    assert dwise_implies_global(t, 2).verdict == COUNTEREXAMPLE
    assert dwise_implies_global(t, 3).verdict != COUNTEREXAMPLE
    lin = embed_instance(t, 2)
    assert dwise_implies_global(lin, 2).verdict == COUNTEREXAMPLE


@pytest.mark.parametrize("spec", ["cyclic:5", "binary:tet", "symmetric:4", "dicyclic:6"])
def test_witness_instance_counterexample(spec):
    g, L = group(spec), lat(spec)
    k, w = kappa_exact(g, L)
    t = witness_instance(g, w)
    assert dwise_implies_global(t, k - 1).verdict == COUNTEREXAMPLE
    assert brute_verdict(t, k - 1) == COUNTEREXAMPLE
    assert dwise_implies_global(t, k).verdict != COUNTEREXAMPLE


def test_cyclic_witness_is_two_regular_points():
    g, L = group("cyclic:4"), lat("cyclic:4")
    _, w = kappa_exact(g, L)
    t = witness_instance(g, w)
    assert t.action.points == 4
    assert dwise_implies_global(t, 1).verdict == COUNTEREXAMPLE


def test_invalid_witness_rejected():
    from typsep.helly import HellyWitness

    g, L = group("klein4"), lat("klein4")
    c = left_coset(g, L.subgroups[1], 0)
    with pytest.raises(ValueError):
        witness_instance(g, HellyWitness((c, c)))


def test_permutation_module_is_representation():
    g, L = group("alternating:4"), lat("alternating:4")
    a, _ = coset_space_action(g, [L.subgroups[1]])
    lin = permutation_module(a, 3)
    assert lin.dimension == a.points == 6


def test_reductive_bound_c3():
    r = verify_reductive_bound(c3_on_gf7(), 500, seed=11, m_range=(4, 4))
    assert r["ok"] and r["violation_count"] == 0 and r["trials"] == 500
    assert verify_reductive_bound(c3_on_gf7(), 500, seed=11, m_range=(4, 4)) == r


def test_reductive_bound_detects_adversarial_instance():
    # the V4 witness over GF(2)^6 fails the test at d = 2, which is below dim + 1
    g, L = group("klein4"), lat("klein4")
    _, w = kappa_exact(g, L)
    lin_t = embed_instance(witness_instance(g, w), 2)
    r = verify_reductive_bound(lin_t.action, 0, seed=0, d=2, instances=[lin_t])
    assert r["violation_count"] == 1 and not r["ok"]


def test_duality_power():
    # below kappa the randomized generator does find counterexamples
    g, L = group("symmetric:4"), lat("symmetric:4")
    k, w = kappa_exact(g, L)
    low = duality_trials(g, L, k - 1, 400, seed=5, witness=w)
    high = duality_trials(g, L, k, 400, seed=5, witness=w)
    assert low[COUNTEREXAMPLE] > 0
    assert high[COUNTEREXAMPLE] == 0


def test_orbit_duality_check_report():
    r = orbit_duality_check(group("dicyclic:2"), 300, seed=3, lat=lat("dicyclic:2"))
    assert r["ok"] and r["lower_ok"] and r["counterexamples"] == 0
    assert sum(r["verdicts"].values()) == 300
    assert r == orbit_duality_check(group("dicyclic:2"), 300, seed=3, lat=lat("dicyclic:2"))
