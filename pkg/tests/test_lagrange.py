from fractions import Fraction

import pytest

from multicayley.algebra import Polynomial, PowerSeries, xv
from multicayley.lagrange import (
    FunctionalSystem,
    all_routes,
    direct_coefficient,
    geometric_system,
    lagrange_rhs_coefficient,
    residual,
    solve_functional_system,
    tree_sum_coefficient,
    treesum_route,
)
from multicayley.limits import PreconditionError

X1, X2 = Polynomial.variable(xv(1)), Polynomial.variable(xv(2))


def const_system(d, order=6, extra=True):
    one = PowerSeries(1, order)
    return FunctionalSystem((one,) * (d + (1 if extra else 0)), d)


def test_constant_system():
    f = solve_functional_system(const_system(1, extra=False))
    assert f[0].body == X1


def test_catalan():
    S = geometric_system(1, 8)
    (f,) = solve_functional_system(S, 7)
    assert [f.coefficient({xv(1): k}) for k in range(1, 7)] == [1, 1, 2, 5, 14, 42]
    assert tree_sum_coefficient(S, 1, (3,)) == 2
    assert all(r.body.is_zero() for r in residual(S, [f]))


def test_schedules_agree():
    S = geometric_system(2, 6)
    assert solve_functional_system(S, 6, "whole") == solve_functional_system(S, 6, "graded")
    with pytest.raises(ValueError):
        solve_functional_system(S, 6, "other")


def test_tree_sum_small():
    assert tree_sum_coefficient(const_system(1, extra=False), 1, (1,)) == 1
    order = 5
    S = FunctionalSystem((PowerSeries(1 + X2, order), PowerSeries(1, order)), 2)
    assert tree_sum_coefficient(S, 1, (1, 1)) == 1
    (f1, f2) = solve_functional_system(S, order)
    for n in [(1, 0), (1, 1), (2, 1), (1, 2), (0, 2)]:
        want = f1.coefficient({xv(1): n[0], xv(2): n[1]})
        assert tree_sum_coefficient(S, 1, n) == want


def test_right_hand_side_examples():
    S = geometric_system(1, 8)
    assert all_routes(S, (3,)) == {"solve": 5, "treesum": 5, "rhs": 5}
    # G_2 = 1 makes G_2(f) constant, so every route gives 0 at x^1
    assert all_routes(const_system(1), (1,)) == {"solve": 0, "treesum": 0, "rhs": 0}


def test_zero_constant_last_series():
    order = 7
    S = FunctionalSystem(
        (PowerSeries(1 + X2, order), PowerSeries(1, order), PowerSeries(X1, order)),
        2,
    )
    for n in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        routes = all_routes(S, n)
        assert len(set(routes.values())) == 1, routes


def test_rational_coefficients():
    order = 7
    G = PowerSeries(Fraction(1, 2) + Fraction(2, 3) * X1 - X1 * X1, order)
    S = FunctionalSystem((G, G), 1)
    for k in range(1, 5):
        routes = all_routes(S, (k,))
        assert len(set(routes.values())) == 1, routes


def test_preconditions():
    with pytest.raises(PreconditionError):
        FunctionalSystem((PowerSeries(X1, 4),), 1)
    with pytest.raises(PreconditionError):
        FunctionalSystem((PowerSeries(X2 + 1, 4),), 1)
    with pytest.raises(PreconditionError):
        lagrange_rhs_coefficient(const_system(1, extra=False), (1,))
    with pytest.raises(PreconditionError):
        lagrange_rhs_coefficient(geometric_system(1, 4), (0,))


def test_json_round_trip():
    S = geometric_system(2, 4)
    T = FunctionalSystem.from_json(S.to_json())
    assert T.G == S.G and T.d == S.d


def test_direct_and_treesum_routes():
    S = geometric_system(2, 7)
    for n in [(1, 1), (2, 1), (2, 3)]:
        assert direct_coefficient(S, n) == treesum_route(S, n) == lagrange_rhs_coefficient(S, n)
