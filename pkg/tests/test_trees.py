import pytest

from multicayley.trees import (
    CompleteTypeCounts,
    EdgeTypeMatrix,
    IndegreeVector,
    Profile,
    RootedForest,
    RootedMultitypeTree,
    TreeError,
    Vertex,
    complete_type_counts,
    degree_class_counts,
    edge_type_counts,
    indegree_types,
    indegree_vector,
    is_injective,
    is_star,
)


def test_single_vertex_is_valid():
    T = RootedMultitypeTree(Profile.of(1), (1, 1), {})
    assert T.parent == {}
    assert indegree_vector(T) == IndegreeVector({})
    assert indegree_types(T) == {Vertex(1, 1): (0,)}


def test_two_cycle_rejected():
    with pytest.raises(TreeError):
        RootedMultitypeTree(Profile.of(3), (1, 1), {(1, 2): (1, 3), (1, 3): (1, 2)})


def test_label_out_of_range_rejected():
    with pytest.raises(TreeError):
        RootedMultitypeTree(Profile.of(2), (1, 1), {(1, 3): (1, 1)})


def test_root_with_parent_rejected():
    with pytest.raises(TreeError):
        RootedMultitypeTree(Profile.of(2), (1, 1), {(1, 1): (1, 2), (1, 2): (1, 1)})


def test_bad_profiles():
    with pytest.raises(TreeError):
        Profile(())
    with pytest.raises(TreeError):
        Profile.of(2, 0)


def test_chain_indegrees():
    T = RootedMultitypeTree(Profile.of(3), (1, 1), {(1, 2): (1, 1), (1, 3): (1, 2)})
    gamma = indegree_vector(T)
    assert gamma[(1, 1, 1)] == 1
    assert gamma[(1, 1, 2)] == 1
    assert gamma[(1, 1, 3)] == 0
    assert is_injective(T)
    assert not is_star(T)


def test_single_vertex_complete_type():
    T = RootedMultitypeTree(Profile.of(1, 1), (1, 1), {(2, 1): (1, 1)})
    N = complete_type_counts(T)
    assert N[(1, 3, (0, 1))] == 1
    assert N[(2, 1, (0, 0))] == 1
    alone = RootedMultitypeTree(Profile.of(1), (1, 1), {})
    assert complete_type_counts(alone) == CompleteTypeCounts({(1, 2, (0,)): 1})


def test_star_statistics():
    T = RootedMultitypeTree(Profile.of(3), (1, 1), {(1, 2): (1, 1), (1, 3): (1, 1)})
    assert edge_type_counts(T) == EdgeTypeMatrix({(1, 1): 2})
    assert degree_class_counts(T)[(1, (2,))] == 1
    assert degree_class_counts(T)[(1, (0,))] == 2
    assert is_star(T)
    assert not is_injective(T)


def test_edge_matrix_compatibility():
    P = Profile.of(2, 2)
    assert EdgeTypeMatrix({(1, 2): 1, (2, 1): 2}).compatible(P, 1)
    assert not EdgeTypeMatrix({(1, 2): 2, (2, 1): 1}).compatible(P, 1)


def test_tree_json_round_trip():
    T = RootedMultitypeTree(Profile.of(2, 1), (2, 1), {(1, 1): (2, 1), (1, 2): (1, 1)})
    assert RootedMultitypeTree.from_json(T.to_json()) == T


def test_forest_json_round_trip():
    F = RootedForest(Profile.of(3), [(1, 1), (1, 3)], {(1, 2): (1, 1)})
    assert RootedForest.from_json(F.to_json()) == F
    assert F.root_counts() == (2,)


def test_counts_reject_negative_entries():
    with pytest.raises(ValueError):
        IndegreeVector({(1, 1, 1): -1})
