"""End-to-end checks on irregular loaded trees.

Random downward-closed prunes of b-ary trees go through the document loader
(usually picking up terminal gaps on the way) and must satisfy the same
analytic/oracle identities as the generated families.
"""

import numpy as np
import pytest

from spectree import (OperatorSpec, analyze, build_bary, compactness_profile,
                      custom_weight, frobenius_norm, hs_norm, isometry_check,
                      load_tree, matrix_of, operator_norm, ratio_sup,
                      singular_values_analytic, svd_values, tail_defect,
                      trace_diagonal)
from spectree.instances import random_permutation_map, random_weight


def random_pruned_tree(rng, branching=3, depth=5, keep=0.7):
    base = build_bary(branching, depth)
    kept = np.zeros(len(base), dtype=bool)
    kept[0] = True
    for v in range(1, len(base)):
        kept[v] = kept[int(base.parent[v])] and rng.uniform() < keep
    vertices = [{"id": "0", "parent": None}]
    vertices += [{"id": str(v), "parent": str(int(base.parent[v]))}
                 for v in range(1, len(base)) if kept[v]]
    return load_tree({"vertices": vertices})


def test_pruned_trees_usually_have_terminal_gaps():
    rng = np.random.default_rng(0)
    gappy = sum(bool(random_pruned_tree(rng).terminal_gaps) for _ in range(10))
    assert gappy >= 5  # prunes are ragged; gaps are the normal case


def test_analytic_identities_survive_irregular_shapes():
    rng = np.random.default_rng(1)
    for _ in range(10):
        tree = random_pruned_tree(rng)
        weight = random_weight(rng, tree)
        symbol = random_permutation_map(rng, tree)
        spec = OperatorSpec(tree, weight, symbol, 2.0)

        rs = ratio_sup(spec).value
        assert operator_norm(spec).value == pytest.approx(rs ** 0.5, rel=1e-12)

        matrix = matrix_of(spec)
        analytic = singular_values_analytic(spec)
        assert float(np.max(np.abs(analytic - svd_values(matrix)))) <= 1e-8
        assert hs_norm(spec) ** 2 == pytest.approx(frobenius_norm(matrix) ** 2, rel=1e-9)

        trace = trace_diagonal(spec)
        assert trace.value == float(trace.fixed_point_count)
        assert trace.fixed_point_count == len(analyze(symbol).fixed_points)

        gram_identity = bool(
            np.max(np.abs(matrix.T @ matrix - np.eye(len(tree)))) <= 1e-10)
        assert gram_identity == isometry_check(spec).is_isometry

        profile = compactness_profile(spec)
        assert profile.values[0] == pytest.approx(rs, rel=1e-14)
        assert (np.diff(profile.values) <= 1e-300).all()
        depth = tree.truncation_depth
        for n in range(1, depth + 1):
            assert tail_defect(spec, n, 0) ** 2 <= profile.values[0] + 1e-10


def test_constant_weight_bijection_is_isometry_on_irregular_trees():
    rng = np.random.default_rng(2)
    for _ in range(5):
        tree = random_pruned_tree(rng)
        weight = custom_weight(tree, np.full(len(tree), 0.7))
        symbol = random_permutation_map(rng, tree)
        for p in (1.0, 2.0, 3.0):
            assert isometry_check(OperatorSpec(tree, weight, symbol, p)).is_isometry
