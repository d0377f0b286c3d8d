from math import factorial

import pytest

from multicayley import cacti
from multicayley.limits import PreconditionError


def one_gon(d):
    return cacti.Cactus(d, cacti.Gon(tuple(cacti.Corner(t, 1) for t in range(1, d + 1))))


def test_single_gon():
    C = one_gon(3)
    assert C.size == 1
    assert cacti.cactus_degree_vector(C) == cacti.CactusDegreeVector({(1, 1): 1, (2, 1): 1, (3, 1): 1})


def test_shared_vertex_degree():
    child = cacti.Gon((cacti.Corner(1, 2), cacti.Corner(2, 1)))
    C = cacti.Cactus(2, cacti.Gon((cacti.Corner(1, 1), cacti.Corner(2, 1, (child,)))))
    assert cacti.cactus_degree_vector(C)[(2, 1)] == 2
    assert C.profile.counts == (2, 1)


def test_invalid_cactus():
    with pytest.raises(cacti.CactusError):
        cacti.Cactus(2, cacti.Gon((cacti.Corner(2, 1), cacti.Corner(1, 1))))


@pytest.mark.parametrize(
    "d,profile,expected",
    [(2, (1, 1), 1), (3, (1, 1, 1), 1), (2, (2, 1), 2), (2, (2, 2), 12), (2, (2, 3), 72)],
)
def test_totals(d, profile, expected):
    assert cacti.count_cacti_total(profile, d) == expected
    assert sum(1 for _ in cacti.enumerate_cacti(d, profile)) == expected


def test_degree_counts():
    assert cacti.count_cacti_by_degree({(1, 1): 1, (1, 2): 1, (2, 1): 2}, 2) == 2
    assert cacti.count_cacti_by_degree({(1, 1): 1, (2, 1): 1, (3, 1): 1}, 3) == 1
    assert cacti.count_cacti_by_degree({(1, 1): 1, (2, 1): 3}, 2) == 0


def test_degree_counts_against_enumeration():
    for d, n in ((2, 3), (3, 2)):
        for profile in cacti.cactus_profiles(d, n):
            seen = {}
            for C in cacti.enumerate_cacti(d, profile):
                g = cacti.cactus_degree_vector(C)
                seen[g] = seen.get(g, 0) + 1
            for g, k in seen.items():
                assert cacti.count_cacti_by_degree(g, d) == k


def test_json_round_trip():
    for C in cacti.enumerate_cacti(2, (2, 2)):
        assert cacti.Cactus.from_json(C.to_json()) == C


def test_phi_forced_case():
    # two gons at (1,1); moving one of them to (1,2) leaves a chain
    child = cacti.Gon((cacti.Corner(1, 1), cacti.Corner(2, 2)))
    C = cacti.Cactus(2, cacti.Gon((cacti.Corner(1, 1, (child,)), cacti.Corner(2, 1))))
    assert C.profile.counts == (1, 2)
    # (2,1) and (2,2) each have degree 1, so only type 1 has a movable gon, and only one label
    with pytest.raises(PreconditionError):
        cacti.cactus_phi(C, 2, 1, 2)


def test_phi_round_trip():
    for profile in cacti.cactus_profiles(2, 3):
        for C in cacti.enumerate_cacti(2, profile):
            gamma = cacti.cactus_degree_vector(C)
            for s in (1, 2):
                for j in range(1, profile[s - 1] + 1):
                    if gamma[(s, j)] < 2:
                        continue
                    for k in range(1, profile[s - 1] + 1):
                        if k == j:
                            continue
                        D = cacti.cactus_phi(C, s, j, k)
                        assert cacti.cactus_degree_vector(D) == cacti.shifted_degrees(gamma, s, j, k)
                        assert cacti.cactus_phi(D, s, k, j) == C


def test_terminal_class():
    d, n = 2, 3
    profile = (1, n)
    star = cacti.star_degree_vector(profile, d)
    count = sum(1 for C in cacti.enumerate_cacti(d, profile) if cacti.cactus_degree_vector(C) == star)
    assert count == cacti.count_cacti_by_degree(star, d) == factorial(n) ** (d - 1)


def test_psi_round_trip():
    for C in cacti.enumerate_cacti(2, (2, 2)):
        for r, s in ((1, 2), (2, 1)):
            if cacti.in_psi_class(C, s, r):
                D = cacti.cactus_psi(C, r, s)
                assert cacti.cactus_psi(D, s, r) == C
