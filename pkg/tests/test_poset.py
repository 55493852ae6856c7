import json
import random
from importlib import resources

import pytest

from oracles import max_antichain
from spdiag.errors import CyclicQuiver, NotSink, NotTypeA
from spdiag.generate import all_alien_sets, orientations, random_poset, template_hosts
from spdiag.poset import (
    Poset,
    chain_decomposition,
    classify_sincere,
    decompose_type_A,
    find_forbidden_peak_subposet,
    forbidden_template,
    hasse_quiver,
    is_type_A,
    neighbors,
    poset_from_quiver,
    quiver_from_json,
    quiver_to_json,
    sincere_template,
    validate_alien_set,
    width,
    witness_is_valid,
    z_subquiver,
)
from spdiag.quiver import Quiver, path_quiver


def load(name):
    return json.loads(resources.files("spdiag.fixtures").joinpath(name).read_text())


ONEPEAK = Poset.from_json(load("onepeak_poset.json"))
THREEPEAK = Poset.from_json(load("threepeak_poset.json"))
A6_Q = path_quiver(">><<<")
E7_Q = Quiver(tuple(range(1, 8)), ((1, 2), (3, 2), (3, 4), (4, 5), (6, 5), (6, 7)))


def test_poset_rejects_cycles():
    with pytest.raises(CyclicQuiver):
        Poset.from_covers([1, 2], [(1, 2), (2, 1)])


def test_covers_are_transitive_reduction():
    P = Poset.from_covers([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    assert set(P.covers) == {(1, 2), (2, 3)}


def test_onepeak_from_a6_quiver_and_alien_arrow():
    assert poset_from_quiver(A6_Q.add_arrows([(5, 2)])) == ONEPEAK


def test_threepeak_from_e7_quiver_and_alien_arrows():
    assert poset_from_quiver(E7_Q.add_arrows([(3, 1), (6, 4)])) == THREEPEAK


def test_hasse_quiver_of_onepeak():
    H = hasse_quiver(ONEPEAK)
    assert set(H.arrows) == {(1, 2), (2, 3), (4, 3), (5, 2), (5, 4), (6, 5)}


def test_cones():
    assert ONEPEAK.down_cone(3) == frozenset(ONEPEAK.elements)
    assert ONEPEAK.up_cone(6) == frozenset({6, 5, 4, 2, 3})
    assert ONEPEAK.maxima() == (3,)


def test_width_of_onepeak():
    assert width(ONEPEAK) == 2 == max_antichain(ONEPEAK)


def test_width_matches_brute_force_on_random_posets():
    rng = random.Random(7)
    for _ in range(60):
        P = random_poset(rng, rng.randint(1, 8), density=rng.random())
        chains = chain_decomposition(P)
        assert sorted(x for c in chains for x in c) == sorted(P.elements)
        for c in chains:
            assert all(P.lt(a, b) for a, b in zip(c, c[1:]))
        assert width(P) == max_antichain(P)


def test_onepeak_is_type_a():
    # {2,4,5,6} is R2-shaped but its maxima 2, 4 are not maximal in the poset
    assert find_forbidden_peak_subposet(ONEPEAK) is None


def test_threepeak_is_type_a():
    assert find_forbidden_peak_subposet(THREEPEAK) is None
    assert is_type_A(THREEPEAK)


def test_crown_r40():
    P = Poset.from_json(load("crown_poset.json"))
    w = find_forbidden_peak_subposet(P)
    assert w is not None and w.family == "R4n"
    assert set(w.elements) == {"a", "b", "x", "y"}
    assert witness_is_valid(P, w)
    assert not is_type_A(P)


@pytest.mark.parametrize("family,m", [("R1", 0), ("R2", 0), ("R3", 0), ("R4n", 0),
                                      ("R4n", 1), ("R4n", 2)])
def test_templates_detect_themselves(family, m):
    t = forbidden_template(family, m)
    w = find_forbidden_peak_subposet(t)
    assert w is not None and w.family == family
    assert witness_is_valid(t, w)


def test_r4n_witness_has_no_smaller_crown_inside():
    t = forbidden_template("R4n", 2)
    w = find_forbidden_peak_subposet(t)
    assert len(w.elements) == 8


def test_crown_search_ignores_comparable_lower_elements():
    # two maxima over a chain x < y: R2, never a crown
    P = Poset.from_covers(["z1", "z2", "x", "y"], [("y", "z1"), ("y", "z2"), ("x", "y")])
    w = find_forbidden_peak_subposet(P)
    assert w.family == "R2"


def test_hosts_contain_templates():
    for family, m in [("R1", 0), ("R2", 0), ("R3", 0), ("R4n", 0), ("R4n", 1)]:
        for P in template_hosts(family, m, 10, seed=3):
            w = find_forbidden_peak_subposet(P)
            assert w is not None and witness_is_valid(P, w)


def test_neighbors_threepeak():
    got = {(frozenset((nb.z, nb.z2)), nb.witness) for nb in neighbors(THREEPEAK)}
    assert got == {(frozenset((2, 5)), 3), (frozenset((5, 7)), 6)}


def test_alien_sets_from_examples():
    assert validate_alien_set(A6_Q, [(5, 2)])
    assert validate_alien_set(E7_Q, [(3, 1), (6, 4)])


def test_alien_clause_a_outside_support():
    chk = validate_alien_set(E7_Q, [(1, 7)])
    assert not chk and chk.clause == "a" and chk.arrow == (1, 7)


def test_alien_clause_b_interior_source_target():
    # 3 is a source of E7_Q that is not extremal
    chk = validate_alien_set(E7_Q, [(4, 3)])
    assert not chk and chk.clause == "b"


def test_alien_clause_c_parallel_path():
    chk = validate_alien_set(A6_Q, [(1, 3)])
    assert not chk and chk.clause == "c"


def test_alien_clause_d_cycle():
    chk = validate_alien_set(A6_Q, [(5, 2), (3, 4)])
    assert not chk
    assert chk.clause in ("c", "d")


def test_empty_alien_set_valid():
    for Q in orientations(4):
        assert validate_alien_set(Q, ())


def test_z_subquivers_e7():
    assert z_subquiver(E7_Q, 2) == Quiver((1, 2, 3), ((1, 2), (3, 2)))
    assert z_subquiver(E7_Q, 5) == Quiver((3, 4, 5, 6), ((3, 4), (4, 5), (6, 5)))
    assert z_subquiver(E7_Q, 7) == Quiver((6, 7), ((6, 7),))
    with pytest.raises(NotSink):
        z_subquiver(E7_Q, 3)


def test_decompose_onepeak():
    Q, F = decompose_type_A(ONEPEAK)
    assert Q.is_type_a() and validate_alien_set(Q, F)
    assert poset_from_quiver(Q.add_arrows(F)) == ONEPEAK
    assert len(F) == 1


def test_decompose_threepeak():
    Q, F = decompose_type_A(THREEPEAK)
    assert poset_from_quiver(Q.add_arrows(F)) == THREEPEAK
    # the decomposition need not be the one drawn by hand; the poset decides
    assert sorted(Q.sinks()) == [2, 5, 7] and validate_alien_set(Q, F)


def test_decompose_rejects_forbidden():
    with pytest.raises(NotTypeA):
        decompose_type_A(forbidden_template("R1"))


@pytest.mark.parametrize("n", range(1, 6))
def test_decompose_round_trip_exhaustive(n):
    for Q in orientations(n):
        for F in all_alien_sets(Q):
            P = poset_from_quiver(Q.add_arrows(F))
            assert find_forbidden_peak_subposet(P) is None
            Q2, F2 = decompose_type_A(P)
            assert poset_from_quiver(Q2.add_arrows(F2)) == P


def test_quiver_json_round_trip():
    data = quiver_to_json(E7_Q, [(6, 4), (3, 1)])
    assert data["vertices"] == 7 and data["alien"] == [[3, 1], [6, 4]]
    Q, F = quiver_from_json(data)
    assert Q == E7_Q and set(F) == {(3, 1), (6, 4)}


def test_poset_json_round_trip():
    assert Poset.from_json(THREEPEAK.to_json()) == THREEPEAK


def test_sincere_two_chain():
    # the 2-chain is the r = 1 member of the family with one tail
    assert classify_sincere(Poset.from_covers(["x", "z"], [("x", "z")])) == ("S2", 1)


def test_sincere_self_match():
    for family in ("S1", "S2", "S3"):
        for r in range(1, 5):
            got = classify_sincere(sincere_template(family, r))
            assert got is not None and got[1] == r
    assert classify_sincere(sincere_template("S3", 2)) == ("S3", 2)


def test_sincere_onepeak_is_none():
    assert classify_sincere(ONEPEAK) is None


def test_sincere_templates_are_type_a():
    for family in ("S1", "S2", "S3"):
        for r in range(1, 5):
            assert is_type_A(sincere_template(family, r))
