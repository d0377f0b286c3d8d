from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multicayley.algebra import (
    Monomial,
    Polynomial,
    PowerSeries,
    Var,
    matrix_determinant,
    x,
    xv,
)

X1, X2, X3 = xv(1), xv(2), xv(3)
p1, p2, p3 = (Polynomial.variable(v) for v in (X1, X2, X3))

coeffs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))
monomials = st.dictionaries(st.sampled_from([X1, X2, X3]), st.integers(1, 3), max_size=3).map(Monomial)
polys = st.dictionaries(monomials, coeffs, max_size=5).map(Polynomial)


def test_difference_of_squares():
    assert (p1 + p2) * (p1 - p2) == p1 * p1 - p2 * p2


def test_additive_identity():
    p = 3 * p1 * p2 + Fraction(1, 2)
    assert p + 0 == p
    assert p + Polynomial() == p


def test_coefficients():
    s = p1 + p2 + p3
    assert (s * s).coefficient({X1: 2}) == 1
    assert (s * s).coefficient({X1: 1, X2: 1}) == 2
    assert (s * s).coefficient({X3: 5}) == 0
    assert (p1 * p2 * p3 * s).coefficient({X1: 1, X2: 1}) == 0


def test_derivatives():
    assert (p1 * p1).derivative(X1) == 2 * p1
    assert Polynomial.constant(7).derivative(X1).is_zero()
    s = p1 + p2
    f = PowerSeries(s**3, 4)
    df = f.derivative(X1)
    assert df.body == 3 * s * s
    assert df.order == 3  # one degree of precision is lost


def test_zero_coefficients_are_dropped():
    assert (p1 - p1).is_zero()
    assert len(p1 + p2 - p2) == 1


def test_truncated_mul_matches_full_product():
    a = (1 + p1 + p2) ** 3
    b = (1 - p3 + p1 * p2) ** 2
    full = a * b
    for order in range(0, 9):
        assert a.truncated_mul(b, order) == full.truncate(order)


def test_records_round_trip():
    p = Fraction(3, 4) * p1 * p2 * p2 - 5 * Polynomial.variable(x(2, 1, 3)) + 2
    assert Polynomial.from_records(p.to_records()) == p
    recs = p.to_records()
    assert all(r["denominator"] > 0 for r in recs)


def test_var_parse_round_trip():
    for v in (x(1, 2, 3), xv(4), Var.parse(str(x(3, 1, 1)))):
        assert Var.parse(str(v)) == v


def test_series_composition():
    # 1/(1-y) at y = x, truncated, equals the geometric series
    geo = PowerSeries.geometric(Var.parse(str(X1)), 6)
    comp = PowerSeries(sum((p2**k for k in range(6)), Polynomial()), 6).compose({X2: PowerSeries(p1, 6)})
    assert comp == geo


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial()
    assert a * 1 == a


@settings(max_examples=40, deadline=None)
@given(polys, st.sampled_from([X1, X2, X3]))
def test_derivative_is_a_derivation(a, v):
    b = p1 * p2 + p3
    assert (a * b).derivative(v) == a.derivative(v) * b + a * b.derivative(v)


def _leibniz(M):
    n = len(M)
    total = Polynomial()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Polynomial.constant(-1 if inv % 2 else 1)
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + term
    return total


def test_determinant_small_cases():
    assert matrix_determinant([[p1 + 2]]) == p1 + 2
    I = [[p1, Polynomial()], [Polynomial(), p2]]
    assert matrix_determinant(I) == p1 * p2


small_entries = st.one_of(st.integers(-3, 3).map(Polynomial.constant), st.sampled_from([p1, p2, p3, p1 - p2]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(M):
    assert matrix_determinant(M) == _leibniz(M)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.lists(st.lists(small_entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_transpose_and_row_swap(M):
    T = [list(r) for r in zip(*M)]
    assert matrix_determinant(T) == matrix_determinant(M)
    swapped = [M[1], M[0]] + M[2:]
    assert matrix_determinant(swapped) == -matrix_determinant(M)
