"""A symbol whose operator is unbounded in the infinite-tree limit.

With the weight 1/(1 + depth) and the depth-squaring symbol (i-th vertex at
level n goes to the i-th vertex at level n*n), the weight ratio at a domain
vertex of depth n is (1 + n^2)/(1 + n). Deeper truncations expose ever larger
ratios, so the ratio-supremum ladder grows without bound even though every
finite truncation yields a finite norm.

Full b-ary truncations of depth n^2 are impossibly large for n near 10, so
the generator tapers to single-child chains below the map's domain; the
analyzed sub-instance (domain plus image levels) is identical vertex for
vertex to the one inside the full binary tree.
"""

from fractions import Fraction

from spectree import (OperatorSpec, boundedness_trend, build_bary,
                      depth_square_map, operator_norm, ratio_sup,
                      reciprocal_depth_weight)

print(f"{'N':>3} {'depth':>6} {'vertices':>9} {'ratio_sup':>12} {'exact':>9} {'norm (p=2)':>11}")
sups = []
for n in range(2, 11):
    depth = n * n
    tree = build_bary(2, depth, branch_until=n)
    spec = OperatorSpec(tree, reciprocal_depth_weight(tree),
                        depth_square_map(tree), 2.0)
    rs = ratio_sup(spec)
    witness_depth = int(tree.depth[rs.witness])
    image_depth = int(tree.depth[spec.symbol.image[rs.witness]])
    exact = Fraction(1 + image_depth, 1 + witness_depth)
    sups.append(rs.value)
    print(f"{n:>3} {depth:>6} {len(tree):>9} {rs.value:>12.6f} "
          f"{str(exact):>9} {operator_norm(spec).value:>11.6f}")

print(f"\nladder verdict: {boundedness_trend(sups)}")
print("every row is exact: the witness sits at the domain frontier, where the")
print("ratio (1 + N^2)/(1 + N) is largest; it tends to infinity with N.")
