"""When is the composition operator an isometry?

Exactly when the symbol is a bijection of the vertex set and every weight
ratio weight(v)/weight(symbol(v)) equals 1. The check returns a witness on
failure: a unit function whose image norm deviates from 1. At p = 2 the
verdict coincides with the operator matrix being orthogonal.
"""

import numpy as np

from spectree import (OperatorSpec, apply, build_bary, constant_weight,
                      custom_weight, isometry_check, matrix_of, norm_p,
                      parent_map)
from spectree.instances import (random_nonidentity_permutation_map,
                                random_unit_function)

rng = np.random.default_rng(11)
tree = build_bary(2, 3)
weight = constant_weight(tree, 2.5)
symbol = random_nonidentity_permutation_map(rng, tree)

print("== constant weight + a random bijection ==")
for p in (1.0, 2.0, 3.0):
    spec = OperatorSpec(tree, weight, symbol, p)
    verdict = isometry_check(spec)
    f = random_unit_function(rng, weight, p)
    moved = norm_p(apply(spec, f), weight, p)
    print(f"p={p}: isometry={verdict.is_isometry}, random unit function maps to norm {moved:.12f}")

print("\n== nudging one weight value by 1 percent ==")
moved_vertex = int(np.flatnonzero(symbol.image != np.arange(len(tree)))[0])
values = weight.values.copy()
values[moved_vertex] *= 1.01
spec = OperatorSpec(tree, custom_weight(tree, values), symbol, 2.0)
verdict = isometry_check(spec)
print(f"isometry: {verdict.is_isometry} (reason: {verdict.reason})")
v = verdict.ratio_vertex
print(f"witness vertex {v}: weight ratio = "
      f"{values[v] / values[int(symbol.image[v])]:.6f} (should be 1)")
print(f"the returned unit function maps to norm {verdict.witness_image_norm:.6f}")

print("\n== the oracle view at p = 2: orthogonality of the matrix ==")
for label, w in (("constant", weight), ("nudged", custom_weight(tree, values))):
    m = matrix_of(OperatorSpec(tree, w, symbol, 2.0))
    off = float(np.max(np.abs(m.T @ m - np.eye(len(tree)))))
    print(f"{label:9s} weight: max |M^T M - I| = {off:.3e}")

print("\n== a non-injective symbol can never be an isometry ==")
spec = OperatorSpec(tree, weight, parent_map(tree), 2.0)
verdict = isometry_check(spec)
print(f"parent map: isometry={verdict.is_isometry}, reason={verdict.reason}, "
      f"collision={verdict.collision}, witness image norm={verdict.witness_image_norm:.6f}")
