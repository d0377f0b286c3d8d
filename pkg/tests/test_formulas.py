import random
from fractions import Fraction
from math import factorial

import pytest

from multicayley.algebra import Polynomial, x, z
from multicayley.enumeration import count_filtered, enumerate_forests, enumerate_trees
from multicayley.formulas import (
    count_by_complete_types,
    count_by_degree_classes,
    count_by_edge_types,
    count_by_indegree_vector,
    count_embedded,
    count_injective_by_edge_types,
    count_injective_embedded,
    count_plane_trees,
    count_unitype_degree,
    delta_explicit,
    delta_polynomial,
    delta_via_determinant,
    gf_forests,
    gf_multitype,
    multinomial,
)
from multicayley.limits import PreconditionError
from multicayley.trees import (
    CompleteTypeCounts,
    DegreeClassCounts,
    EdgeTypeMatrix,
    IndegreeVector,
    Profile,
    complete_type_counts,
    degree_class_counts,
    edge_type_counts,
    edge_type_set,
    indegree_vector,
    is_injective,
)

P3 = Profile.of(3)
P22 = Profile.of(2, 2)


def v(s, t, i):
    return Polynomial.variable(x(s, t, i))


def test_multinomial():
    assert multinomial([2, 1, 1]) == 12
    assert multinomial([]) == 1


def test_gf_two_vertices():
    assert gf_multitype(Profile.of(2), 1) == v(1, 1, 1) + v(1, 1, 2)


def test_gf_matches_tree_monomials():
    P = Profile.of(2, 1, 1)
    for rho in (1, 2, 3):
        brute = Polynomial()
        for T in enumerate_trees(P, rho):
            term = Polynomial.constant(1)
            for (s, t, i), k in indegree_vector(T).items():
                term = term * v(s, t, i) ** k
            brute = brute + term
        assert gf_multitype(P, rho) == brute


def test_gf_bipartite_specialisation():
    g = gf_multitype(P22, 1)
    zero = {x(1, 1, i): 0 for i in (1, 2)} | {x(2, 2, i): 0 for i in (1, 2)}
    ones = {x(1, 2, i): 1 for i in (1, 2)} | {x(2, 1, i): 1 for i in (1, 2)}
    assert g.evaluate(zero | ones) == 8


def test_delta_small():
    P = Profile.of(2, 3)
    assert delta_polynomial(P, 1) == v(2, 1, 1) + v(2, 1, 2)
    P3t = Profile.of(1, 1, 1)
    assert delta_polynomial(P3t, 1).evaluate({w: 0 for w in delta_polynomial(P3t, 1).variables()}) == 0


def test_determinant_equals_explicit_sum():
    rng = random.Random(11)
    for d in (2, 3, 4):
        P = Profile(tuple(rng.randint(1, 2) for _ in range(d)))
        for rho in P.types():
            subs = {x(s, t, i): rng.randint(-4, 4) for s in P.types() for t in P.types() for i in range(1, P[t] + 1)}
            assert delta_via_determinant(P, rho, subs) == delta_explicit(P, rho, subs)
            assert delta_polynomial(P, rho).evaluate(subs) == delta_explicit(P, rho, subs)


def test_forest_polynomial_small():
    assert gf_forests(Profile.of(1)) == Polynomial.variable(z(1))
    zz = Polynomial.variable(z(1))
    assert gf_forests(Profile.of(2)) == zz * (zz + v(1, 1, 1) + v(1, 1, 2))


@pytest.mark.parametrize("counts", [(3,), (2, 1), (1, 2, 1)])
def test_forest_polynomial_at_ones(counts):
    P = Profile(counts)
    g = gf_forests(P)
    assert g.evaluate({w: 1 for w in g.variables()}) == count_filtered(enumerate_forests(P))


def test_edge_type_examples():
    assert count_by_edge_types({(1, 1): 2}, P3, 1) == 9
    assert count_by_edge_types({(1, 2): 1, (2, 1): 2}, P22, 1) == 8
    assert count_by_edge_types({(1, 2): 2, (2, 1): 1}, P22, 1) == 0


def test_edge_types_against_brute_force():
    P = Profile.of(2, 2)
    for rho in (1, 2):
        seen = {}
        for T in enumerate_trees(P, rho):
            m = edge_type_counts(T)
            seen[m] = seen.get(m, 0) + 1
        for m, k in seen.items():
            assert count_by_edge_types(m, P, rho) == k


def test_embedded_examples():
    full = {(1, 1)}
    assert count_embedded(full, P3, 1) == 3 ** (3 - 1)
    assert count_embedded({(1, 2), (2, 1)}, Profile.of(1, 1), 1) == 1
    assert count_embedded({(1, 2), (2, 1)}, P22, 1) == 8


def test_injective_examples():
    assert count_injective_by_edge_types({(1, 1): 2}, P3, 1) == 6
    assert count_injective_by_edge_types({(1, 1): 1}, Profile.of(2), 1) == 2
    assert count_injective_by_edge_types({(1, 1): 1}, P3, 1) == 0
    assert count_injective_embedded({(1, 1)}, Profile.of(2), 1) == 2
    assert count_injective_embedded({(1, 1)}, P3, 1) == 6
    D = {(1, 2), (2, 1)}
    brute = count_filtered(enumerate_trees(P22, 1), lambda T: edge_type_set(T) <= D and is_injective(T))
    assert count_injective_embedded(D, P22, 1) == brute


def test_indegree_examples():
    assert count_by_indegree_vector(IndegreeVector({(1, 1, 1): 2}), P3, 1) == 1
    assert count_by_indegree_vector(IndegreeVector({(1, 1, 1): 1, (1, 1, 2): 1}), P3, 1) == 2


def test_degree_class_examples():
    assert count_by_degree_classes(DegreeClassCounts({(1, (2,)): 1, (1, (0,)): 2}), 1, 1) == 3
    assert count_by_degree_classes(DegreeClassCounts({(1, (1,)): 1, (1, (0,)): 1}), 1, 1) == 2
    for rho in (1, 2):
        seen = {}
        for T in enumerate_trees(P22, rho):
            N = degree_class_counts(T)
            seen[N] = seen.get(N, 0) + 1
        for N, k in seen.items():
            assert count_by_degree_classes(N, rho, 2) == k


def test_complete_type_unitype_illustration():
    # root degree l, N_c non-root vertices of indegree c
    def expected(n, l, Nc):
        den = factorial(l - 1)
        for c, k in Nc.items():
            den *= factorial(k) * factorial(c) ** k
        return Fraction(factorial(n) * factorial(n - 2), den)

    N = CompleteTypeCounts({(1, 2, (2,)): 1, (1, 1, (0,)): 2})
    assert count_by_complete_types(N, 1, 1) == 3 == expected(3, 2, {0: 2})
    N = CompleteTypeCounts({(1, 2, (1,)): 1, (1, 1, (1,)): 1, (1, 1, (0,)): 1})
    assert count_by_complete_types(N, 1, 1) == 6 == expected(3, 1, {0: 1, 1: 1})


def test_complete_types_against_brute_force():
    P = Profile.of(2, 1, 1)
    for rho in P.types():
        seen = {}
        for T in enumerate_trees(P, rho):
            N = complete_type_counts(T)
            seen[N] = seen.get(N, 0) + 1
        for N, k in seen.items():
            assert count_by_complete_types(N, rho, 3) == k


def test_unitype_degree():
    assert count_unitype_degree((2, 1, 1)) == 1
    assert count_unitype_degree((2, 2, 1, 1)) == 2
    assert count_unitype_degree((3, 1, 1, 1)) == 1
    assert count_unitype_degree((0,)) == 1
    assert count_unitype_degree((2, 2, 2)) == 0
    with pytest.raises(PreconditionError):
        count_unitype_degree((2, 0, 2))


def test_plane_tree_counts():
    assert count_plane_trees((1, 1)) == 1
    assert count_plane_trees((2, 0, 1)) == 1
    assert count_plane_trees((2, 1, 1)) == 3
    assert count_plane_trees((1, 1, 1)) == 0
