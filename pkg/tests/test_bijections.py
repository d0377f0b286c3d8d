import numpy as np
import pytest

from multicayley import bijections as bij
from multicayley.enumeration import enumerate_trees, rooted_batch
from multicayley.limits import PreconditionError
from multicayley.trees import IndegreeVector, Profile, RootedMultitypeTree, Vertex, indegree_vector


def star3():
    return RootedMultitypeTree(Profile.of(3), (1, 1), {(1, 2): (1, 1), (1, 3): (1, 1)})


def test_unitype_move_on_star():
    M = bij.MarkedTree(star3(), ((1, 3), (1, 1)))
    image = bij.phi_unitype(M, 1, 2)
    assert bij.unitype_degrees(image.tree) == (1, 2, 1)  # a path centred at 2
    assert set(image.marked_edge) == {Vertex(1, 3), Vertex(1, 2)}
    back = bij.phi_unitype(image, 2, 1)
    assert back == M


def test_unitype_move_rejects_mark_on_path():
    M = bij.MarkedTree(star3(), ((1, 2), (1, 1)))
    with pytest.raises(PreconditionError):
        bij.phi_unitype(M, 1, 2)


def test_marked_edge_must_exist():
    with pytest.raises(PreconditionError):
        bij.MarkedTree(star3(), ((1, 2), (1, 3)))


def test_unitype_round_trip_exhaustive():
    n = 5
    trees = list(enumerate_trees(Profile.of(n), 1))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for T in trees:
                for M in bij.unitype_marked_class([T], bij.unitype_degrees(T), i, j):
                    image = bij.phi_unitype(M, i, j)
                    g, h = bij.unitype_degrees(T), bij.unitype_degrees(image.tree)
                    assert h[i - 1] == g[i - 1] - 1 and h[j - 1] == g[j - 1] + 1
                    assert bij.phi_unitype(image, j, i) == M


def test_multitype_move_is_onto():
    # the only type-1 vertex, as a child of (2,1), moves under (2,2)
    P = Profile.of(1, 2)
    for rho in (1, 2):
        trees = list(enumerate_trees(P, rho))
        source = [M for T in trees for M in bij.marked_class([T], indegree_vector(T), 1, 2, 1)]
        target = {M for T in trees for M in bij.marked_class([T], indegree_vector(T), 1, 2, 2)}
        images = [bij.classify_and_apply(M, 1, 2, 1, 2) for M in source]
        assert len(set(images)) == len(images)
        assert set(images) == target


def test_multitype_round_trip_and_shift():
    P = Profile.of(2, 2)
    trees = list(enumerate_trees(P, 1))
    for s in (1, 2):
        for t in (1, 2):
            for i in (1, 2):
                j = 3 - i
                for T in trees:
                    gamma = indegree_vector(T)
                    for M in bij.marked_class([T], gamma, s, t, i):
                        image = bij.classify_and_apply(M, s, t, i, j)
                        assert indegree_vector(image.tree) == bij.shifted(gamma, s, t, i, j)
                        assert image.tree.root.type == 1
                        assert bij.classify_and_apply(image, s, t, j, i) == M


def test_batch_matches_objects():
    P = Profile.of(2, 1, 1)
    verts = P.vertices()
    idx = {v: k for k, v in enumerate(verts)}
    batch = rooted_batch(P, 1)
    a, b = idx[Vertex(1, 1)], idx[Vertex(1, 2)]
    w = idx[Vertex(2, 1)]
    rows = batch[batch[:, w] == a]
    out, new_w, tilde = bij.classify_and_apply_batch(rows, w, a, b)
    for row, img, til in zip(rows.tolist(), out.tolist(), tilde.tolist()):
        root = verts[row.index(-1)]
        T = RootedMultitypeTree(P, root, {verts[k]: verts[p] for k, p in enumerate(row) if p >= 0})
        M = bij.MarkedTree(T, (Vertex(2, 1), Vertex(1, 1)))
        assert bij.classify(M, 2, 1, 1, 2) == ("tilde" if til else "hat")
        image = bij.classify_and_apply(M, 2, 1, 1, 2)
        expected = [-1 if v == image.tree.root else idx[image.tree.parent[v]] for v in verts]
        assert img == expected
        assert image.marked_edge[0] == verts[new_w]


def test_star_helpers():
    T = RootedMultitypeTree(Profile.of(1), (1, 1), {})
    assert bij.star_core(T).parent == ()
    T2 = RootedMultitypeTree(Profile.of(1, 2), (1, 1), {(2, 1): (1, 1), (2, 2): (1, 1)})
    assert bij.star_core(T2).parent == ((2, 1),)
    gamma = IndegreeVector({(2, 1, 1): 1, (1, 2, 2): 1})
    assert bij.star_vector(gamma) == IndegreeVector({(2, 1, 1): 1, (1, 2, 1): 1})
    assert bij.star_schedule(gamma, Profile.of(1, 2)) == [(1, 2, 2, 1)]
