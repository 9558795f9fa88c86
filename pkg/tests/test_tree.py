import numpy as np
import pytest

from spectree import DocumentError, build_bary, distance, dump_tree, load_tree, truncate, vertices_at_level
from spectree.tree import name_index


def degree(tree, v):
    return len(tree.children[v]) + (1 if tree.parent[v] >= 0 else 0)


def test_binary_depth_three_counts():
    t = build_bary(2, 3)
    assert len(t) == 15
    assert [len(lvl) for lvl in t.levels] == [1, 2, 4, 8]
    assert vertices_at_level(t, 3).size == 8


def test_unary_generator_is_a_path():
    t = build_bary(1, 5)
    assert len(t) == 6
    assert list(t.depth) == [0, 1, 2, 3, 4, 5]
    assert all(len(c) == 1 for c in t.children[:-1])


def test_ternary_depth_two_structure():
    t = build_bary(3, 2)
    assert len(t) == 13
    assert degree(t, 0) == 3
    for v in vertices_at_level(t, 1):
        assert degree(t, int(v)) == 4


def test_zero_branching_rejected():
    with pytest.raises(ValueError):
        build_bary(0, 2)
    with pytest.raises(ValueError):
        build_bary(2, -1)


def test_branch_until_tapers_the_frontier():
    t = build_bary(2, 6, branch_until=2)
    assert [len(lvl) for lvl in t.levels] == [1, 2, 4, 4, 4, 4, 4]
    assert t.terminal_gaps == ()
    # chains preserve the level-wise ancestry
    for v in vertices_at_level(t, 6):
        assert int(t.depth[int(t.parent[int(v)])]) == 5


def test_generated_trees_have_no_terminal_gaps():
    for b, d in ((1, 4), (2, 3), (3, 2)):
        assert build_bary(b, d).terminal_gaps == ()


def test_distance_examples():
    t = build_bary(2, 3)
    v = int(vertices_at_level(t, 3)[0])
    assert distance(t, v, v) == 0
    assert distance(t, 0, v) == 3
    a, b = (int(x) for x in vertices_at_level(t, 1))
    assert distance(t, a, b) == 2
    with pytest.raises(ValueError):
        distance(t, 0, len(t))


def test_distance_to_root_is_depth():
    t = build_bary(3, 3)
    for v in range(len(t)):
        assert distance(t, 0, v) == int(t.depth[v])


def test_levels_beyond_frontier_are_empty():
    t = build_bary(2, 2)
    assert vertices_at_level(t, 5).size == 0
    assert list(vertices_at_level(t, 0)) == [0]
    with pytest.raises(ValueError):
        vertices_at_level(t, -1)


def test_parent_is_one_level_up():
    rng = np.random.default_rng(12)
    for _ in range(5):
        t = build_bary(int(rng.integers(1, 4)), int(rng.integers(1, 5)))
        for v in range(1, len(t)):
            assert t.depth[v] == t.depth[int(t.parent[v])] + 1


def test_level_sizes_sum_to_vertex_count():
    for b, d in ((1, 6), (2, 4), (3, 3)):
        t = build_bary(b, d)
        assert sum(len(lvl) for lvl in t.levels) == len(t)


def test_load_three_vertex_path():
    t = load_tree({"vertices": [
        {"id": "r", "parent": None},
        {"id": "a", "parent": "r"},
        {"id": "b", "parent": "a"},
    ]})
    assert list(t.depth) == [0, 1, 2]
    assert t.name_of(0) == "r"


def test_load_self_parent_is_a_cycle():
    doc = {"vertices": [
        {"id": "r", "parent": None},
        {"id": "a", "parent": "a"},
    ]}
    with pytest.raises(DocumentError, match="cycle"):
        load_tree(doc)


def test_load_two_vertex_cycle():
    doc = {"vertices": [
        {"id": "r", "parent": None},
        {"id": "a", "parent": "b"},
        {"id": "b", "parent": "a"},
    ]}
    with pytest.raises(DocumentError, match="cycle"):
        load_tree(doc)


def test_load_depth_profile_example():
    t = load_tree({"vertices": [
        {"id": "r", "parent": None},
        {"id": "a", "parent": "r"},
        {"id": "b", "parent": "r"},
        {"id": "c", "parent": "a"},
    ]})
    assert len(t) == 4
    assert [len(lvl) for lvl in t.levels] == [1, 2, 1]
    # b is shallower than the frontier and childless: flagged, not rejected
    assert t.terminal_gaps == (2,)
    assert t.name_of(2) == "b"


def test_load_rejects_multiple_roots_and_unknown_parent():
    with pytest.raises(DocumentError, match="multiple roots"):
        load_tree({"vertices": [{"id": "r", "parent": None},
                                {"id": "s", "parent": None}]})
    with pytest.raises(DocumentError, match="unknown parent"):
        load_tree({"vertices": [{"id": "r", "parent": None},
                                {"id": "a", "parent": "zz"}]})
    with pytest.raises(DocumentError, match="no root"):
        load_tree({"vertices": [{"id": "a", "parent": "b"},
                                {"id": "b", "parent": "a"}]})
    with pytest.raises(DocumentError, match="duplicate"):
        load_tree({"vertices": [{"id": "r", "parent": None},
                                {"id": "r", "parent": "r"}]})


def test_root_is_reordered_first():
    t = load_tree({"vertices": [
        {"id": "a", "parent": "r"},
        {"id": "r", "parent": None},
        {"id": "b", "parent": "a"},
    ]})
    assert t.name_of(0) == "r"
    assert list(t.depth) == [0, 1, 2]
    assert t.names == ("r", "a", "b")


def test_serialization_round_trip_is_isomorphic():
    for b, d in ((1, 5), (2, 3), (3, 2)):
        t = build_bary(b, d)
        u = load_tree(dump_tree(t))
        assert np.array_equal(t.parent, u.parent)
        assert np.array_equal(t.depth, u.depth)
        assert t.children == u.children
        assert u.truncation_depth == t.truncation_depth


def test_level_order_is_lexicographic_by_path():
    # document order scrambles the ids; preorder rank restores path order
    t = load_tree({"vertices": [
        {"id": "r", "parent": None},
        {"id": "right", "parent": "r"},
        {"id": "left", "parent": "r"},
        {"id": "rl", "parent": "right"},
        {"id": "ll", "parent": "left"},
    ]})
    level1 = [t.name_of(int(v)) for v in vertices_at_level(t, 1)]
    assert level1 == ["right", "left"]  # sibling order = document order
    level2 = [t.name_of(int(v)) for v in vertices_at_level(t, 2)]
    assert level2 == ["rl", "ll"]


def test_truncate_binary_tree():
    t = build_bary(2, 3)
    u = truncate(t, 2)
    assert len(u) == 7
    assert u.truncation_depth == 2
    assert np.array_equal(u.parent, build_bary(2, 2).parent)
    assert truncate(t, 3) is t
    with pytest.raises(ValueError):
        truncate(t, 4)


def test_truncate_preserves_names():
    t = load_tree({"vertices": [
        {"id": "r", "parent": None},
        {"id": "a", "parent": "r"},
        {"id": "b", "parent": "a"},
    ]})
    u = truncate(t, 1)
    assert u.names == ("r", "a")
    assert name_index(u) == {"r": 0, "a": 1}


def test_generator_guards_against_huge_trees():
    with pytest.raises(ValueError, match="branch_until"):
        build_bary(2, 100)
