import random
from fractions import Fraction

import pytest

from spdiag.cluster import (
    PRIME,
    Seed,
    all_cluster_variables,
    crossing_vector,
    knitting_identity_holds,
    leaf_identity_holds,
    leaf_sources,
    membership_check,
    mutate,
    projective_variables,
    rational_reconstruction,
    subalgebra_generators,
    verify_generation,
)
from spdiag.errors import InexactDivision
from spdiag.generate import orientations
from spdiag.laurent import LaurentPoly
from spdiag.polygon import Triangulation, all_diagonals, rotate
from spdiag.quiver import Quiver, path_quiver


def x(i, n):
    return LaurentPoly.var(i, n)


def test_laurent_arithmetic():
    a, b = x(0, 2), x(1, 2)
    f = (a + b) ** 2
    assert f == a * a + 2 * a * b + b * b
    assert (f - f) == LaurentPoly.const(0, 2)
    assert f.exact_div(a + b) == a + b
    assert (a * b).exact_div(b) == a


def test_laurent_negative_exponents():
    a, b = x(0, 2), x(1, 2)
    g = (1 + a).exact_div(b)
    assert g.d_vector() == (0, 1)
    assert g.min_exponents() == (0, -1)
    assert not g.is_polynomial()
    assert (g * b) == 1 + a


def test_inexact_division_raises():
    a, b = x(0, 2), x(1, 2)
    with pytest.raises(InexactDivision):
        (1 + a).exact_div(1 + b)


def test_a2_sink_mutation():
    s = Seed.initial(path_quiver(">"))
    t = mutate(s, 2)
    assert t.variables[1] == (1 + x(0, 2)).exact_div(x(1, 2))


def test_a2_has_five_variables():
    assert len(all_cluster_variables(path_quiver(">")).entries) == 5


def test_a3_has_nine_variables():
    for Q in orientations(3):
        assert len(all_cluster_variables(Q).entries) == 9


def test_mutation_is_involutive():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(1, 5)
        s = Seed.initial(path_quiver("".join(rng.choice("><") for _ in range(n - 1))))
        for _ in range(rng.randint(0, 6)):
            s = mutate(s, rng.randint(1, n))
        k = rng.randint(1, n)
        assert mutate(mutate(s, k), k) == s


def test_quiver_mutation_reverses_arrows_at_k():
    s = mutate(Seed.initial(path_quiver(">>")), 2)
    # 1 -> 2 -> 3 becomes 1 <- 2 <- 3 plus the composite 1 -> 3
    assert set(s.quiver().arrows) == {(2, 1), (3, 2), (1, 3)}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_d_vectors_match_crossing_vectors(n):
    for Q in orientations(n):
        table = all_cluster_variables(Q)
        T = table.triangulation
        seen = set()
        for e in table.entries:
            assert e.diagonal not in seen
            seen.add(e.diagonal)
            if e.diagonal in T:
                i = T.labels.index(T.label_of(e.diagonal))
                assert e.d_vector == tuple(-1 if j == i else 0 for j in range(n))
            else:
                assert e.d_vector == crossing_vector(e.diagonal, T)
        assert seen == set(all_diagonals(n))


def test_denominators_are_monomials():
    table = all_cluster_variables(path_quiver("><<"))
    for e in table.entries:
        num = e.poly.numerator()
        assert num.is_polynomial()
        # the numerator is not divisible by any initial variable
        for i in range(e.poly.n):
            assert any(exps[i] == 0 for exps in num.terms)


def test_projectives_by_sink_mutation_sequence():
    for n in range(1, 5):
        for Q in orientations(n):
            xp = projective_variables(Q)
            s = Seed.initial(Q)
            done = set()
            while len(done) < n:
                q = s.quiver()
                k = next(v for v in q.vertices if v not in done and not q.successors(v))
                s = mutate(s, k)
                done.add(k)
            assert all(s.variables[s.index(v)] == xp[v] for v in Q.vertices)


def test_projectives_sit_on_rotated_t():
    Q = path_quiver("><>")
    table = all_cluster_variables(Q)
    T = table.triangulation
    xp = projective_variables(Q, table)
    by_diag = table.by_diagonal()
    assert set(xp.values()) == {by_diag[rotate(T.tau(v), 1, T.n)] for v in Q.vertices}


def test_a2_knitting_and_leaf():
    Q = path_quiver(">")
    xp = projective_variables(Q)
    assert knitting_identity_holds(Q, xp, 1)
    assert leaf_sources(Q) == [1]
    assert leaf_identity_holds(Q, xp, 1)
    a, b = x(0, 2), x(1, 2)
    assert xp[2] == (1 + a).exact_div(b)


def test_sink_projective_is_mutated_variable():
    Q = Quiver(tuple(range(1, 8)), ((1, 2), (3, 2), (3, 4), (4, 5), (6, 5), (6, 7)))
    xp = projective_variables(Q)
    s = Seed.initial(Q)
    for z in Q.sinks():
        assert mutate(s, z).variables[s.index(z)] == xp[z]


def test_subalgebra_generators_a6():
    Q = path_quiver(">><<<")
    table = all_cluster_variables(Q)
    T = table.triangulation
    assert len(subalgebra_generators(T, [(5, 2)], table)) == 16


def test_generators_contain_projectives_without_aliens():
    Q = path_quiver("<>")
    table = all_cluster_variables(Q)
    gens = subalgebra_generators(table.triangulation, (), table)
    assert set(projective_variables(Q, table).values()) <= set(gens.values())


def test_rational_reconstruction():
    for fr in (Fraction(1, 2), Fraction(-3, 7), Fraction(5), Fraction(-1)):
        a = fr.numerator * pow(fr.denominator, -1, PRIME) % PRIME
        assert rational_reconstruction(a, PRIME) == fr


def test_membership_with_rational_coefficient():
    # n = 1: x1' = 2 / x1, so 1/x1 = (1/2) x1'
    Q = Quiver((1,), ())
    table = all_cluster_variables(Q)
    gens = subalgebra_generators(table.triangulation, (), table)
    f = LaurentPoly.monomial((-1,))
    cert = membership_check(f, gens, 2)
    assert cert is not None and cert.holds_for(f, gens)
    assert cert.denominator() == 2


def test_membership_inconclusive():
    gens = {"x1": x(0, 1)}
    assert membership_check(LaurentPoly.monomial((-1,)), gens, 3) is None


def test_verify_generation_small():
    report = verify_generation(path_quiver(">>"), (), degree_bound=3)
    assert report["all_certified"]
    assert all(report["identities"]["knitting"].values())
    assert all(report["identities"]["leaf"].values())


def test_single_vertex_cluster():
    table = all_cluster_variables(Quiver((1,), ()))
    assert len(table.entries) == 2
    assert isinstance(table.triangulation, Triangulation)
