from itertools import product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multicayley.enumeration import (
    _batch_reroot,
    _cached_unrooted,
    child_table,
    count_filtered,
    enumerate_forests,
    enumerate_plane_trees,
    enumerate_skeletons,
    enumerate_trees,
    indegree_census,
    plane_tree_degrees,
    prufer_decode,
    prufer_encode,
    reroot,
    rooted_batch,
    row_histogram,
)
from multicayley.limits import SizeError, set_limits
from multicayley.trees import Profile, edge_type_set, indegree_vector, is_injective, validate_tree


def _all_parent_maps(n):
    """Every rooted tree on 0..n-1 as a parent list, by brute force over all functions."""
    out = set()
    for par in product(range(-1, n), repeat=n):
        if par.count(-1) != 1 or any(par[v] == v for v in range(n)):
            continue
        ok = True
        for v in range(n):
            seen, u = set(), v
            while par[u] != -1:
                if u in seen:
                    ok = False
                    break
                seen.add(u)
                u = par[u]
            if not ok:
                break
        if ok:
            out.add(par)
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_rooted_trees_match_brute_force(n):
    P = Profile.of(n)
    verts = P.vertices()
    got = [
        tuple(verts.index(T.parent[v]) if v in T.parent else -1 for v in verts) for T in enumerate_trees(P, 1)
    ]
    assert len(got) == len(set(got))
    assert set(got) == _all_parent_maps(n)
    assert len(got) == n ** (n - 1)


def test_small_examples():
    assert count_filtered(enumerate_trees(Profile.of(3), 1)) == 9
    assert count_filtered(enumerate_trees(Profile.of(1, 1), 1)) == 1
    bip = {(1, 2), (2, 1)}
    assert count_filtered(enumerate_trees(Profile.of(2, 2), 1), lambda T: edge_type_set(T) <= bip) == 8


def test_trees_are_valid_and_distinct():
    P = Profile.of(2, 1, 2)
    for rho in (1, 2, 3):
        trees = list(enumerate_trees(P, rho))
        assert len(set(trees)) == len(trees)
        assert all(validate_tree(T) is None and T.root.type == rho for T in trees)
        # every tree on the 5 vertices, rooted at some type-rho vertex
        assert len(trees) == P[rho] * 5**3


def test_filtered_counts():
    P3 = Profile.of(3)
    assert count_filtered(enumerate_trees(Profile.of(1, 1), 1), lambda T: True) == 1
    assert count_filtered(enumerate_trees(P3, 1), lambda T: tuple(indegree_vector(T)[(1, 1, i)] for i in (1, 2, 3)) == (1, 1, 0)) == 2
    assert count_filtered(enumerate_trees(P3, 1), is_injective) == 6


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (3, 16), (4, 125)])
def test_forest_counts(n, expected):
    assert count_filtered(enumerate_forests(Profile.of(n))) == expected


def test_forests_two_types():
    # rooted forests on 3 labelled vertices, whatever the types
    assert count_filtered(enumerate_forests(Profile.of(2, 1))) == 16


@pytest.mark.parametrize("d,expected", [(1, 1), (2, 1), (3, 3), (4, 16), (5, 125)])
def test_skeleton_counts(d, expected):
    for rho in range(1, d + 1):
        sk = list(enumerate_skeletons(d, rho))
        assert len(sk) == expected
        assert all(A.root == rho and len(A.parent) == d - 1 for A in sk)


@pytest.mark.parametrize("n,catalan", [(1, 1), (2, 1), (3, 2), (4, 5), (5, 14), (8, 429)])
def test_plane_tree_counts(n, catalan):
    trees = list(enumerate_plane_trees(n))
    assert len(trees) == catalan == comb(2 * n - 2, n - 1) // n
    assert all(sum(plane_tree_degrees(T)) == n for T in trees)


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 9).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2)))
def test_prufer_round_trip(seq):
    n = len(seq) + 2
    parent = prufer_decode(seq, n)
    assert prufer_encode(parent) == list(seq)
    assert parent.count(-1) == 1


def test_reroot_keeps_edges():
    par = prufer_decode([3, 3, 0], 5)
    for r in range(5):
        q = reroot(par, r)
        assert q[r] == -1
        edges = {frozenset((v, p)) for v, p in enumerate(par) if p >= 0}
        assert edges == {frozenset((v, p)) for v, p in enumerate(q) if p >= 0}


def test_batch_matches_object_enumeration():
    P = Profile.of(2, 2)
    for rho in (1, 2):
        batch = rooted_batch(P, rho)
        verts = P.vertices()
        from_objects = sorted(
            tuple(-1 if v == T.root else verts.index(T.parent[v]) for v in verts) for T in enumerate_trees(P, rho)
        )
        assert sorted(map(tuple, batch.tolist())) == from_objects


def test_batch_reroot_matches_scalar():
    base = _cached_unrooted(6)
    for r in range(6):
        got = _batch_reroot(base, r)
        for row_in, row_out in zip(base[:50].tolist(), got[:50].tolist()):
            assert reroot(row_in, r) == row_out


def test_census_matches_objects():
    P = Profile.of(2, 1, 1)
    census = indegree_census(P, 2)
    table = row_histogram(child_table(rooted_batch(P, 2), P))
    assert sum(census.counts.values()) == sum(table.values()) == 4**2 * 1


def test_row_histogram_small():
    t = np.array([[0, 1], [1, 0], [0, 1], [3, 3]])
    assert row_histogram(t) == {(0, 1): 2, (1, 0): 1, (3, 3): 1}


def test_row_histogram_multiword_keys():
    rng = np.random.default_rng(3)
    t = rng.integers(0, 8, size=(2000, 40))
    t[1000:] = t[:1000]
    expected = {}
    for row in map(tuple, t.tolist()):
        expected[row] = expected.get(row, 0) + 1
    assert row_histogram(t) == expected


def test_size_bound():
    previous = set_limits(max_vertices=4)
    try:
        with pytest.raises(SizeError):
            list(enumerate_trees(Profile.of(3, 2), 1))
    finally:
        set_limits(**previous.__dict__)


def test_grouping_survives_hash_collisions():
    from multicayley.enumeration import _group

    c = 0x9E3779B97F4A7C15 - (1 << 64)
    # (1, 0) and (0, c) mix to the same value but are different rows
    k0 = np.array([1, 0, 1], dtype=np.int64)
    k1 = np.array([0, c, 0], dtype=np.int64)
    order, starts = _group([k0, k1])
    groups = np.split(order, starts[1:])
    assert sorted(sorted(g.tolist()) for g in groups) == [[0, 2], [1]]
