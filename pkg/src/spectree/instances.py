"""Seeded generators for random and structured operator instances.

Shared by the verification suites, the test suite and the demo scripts;
everything is a pure function of the supplied generator, so runs reproduce
bit for bit from a seed.
"""

from __future__ import annotations

import numpy as np

from .compop import OperatorSpec
from .lpspace import norm_p
from .selfmap import SelfMap, depth_square_map, identity_map, level_shift_map, parent_map
from .tree import Tree, build_bary
from .weight import (Weight, constant_weight, custom_weight, geometric_weight,
                     reciprocal_depth_weight)

_P_CHOICES = (1.0, 1.5, 2.0, 3.0)


def bary_vertex_count(branching: int, depth: int) -> int:
    if branching == 1:
        return depth + 1
    return (branching ** (depth + 1) - 1) // (branching - 1)


def random_bary_tree(rng: np.random.Generator, max_branching: int = 3,
                     max_depth: int = 6, max_vertices: int = 600,
                     min_vertices: int = 1) -> Tree:
    combos = [(b, d)
              for b in range(1, max_branching + 1)
              for d in range(2, max_depth + 1)
              if min_vertices <= bary_vertex_count(b, d) <= max_vertices]
    if not combos:
        raise ValueError(f"no b-ary tree fits [{min_vertices}, {max_vertices}] vertices")
    b, d = combos[int(rng.integers(len(combos)))]
    return build_bary(b, d)


def random_weight(rng: np.random.Generator, tree: Tree,
                  low: float = 0.01, high: float = 100.0) -> Weight:
    return custom_weight(tree, rng.uniform(low, high, len(tree)))


def random_permutation_map(rng: np.random.Generator, tree: Tree) -> SelfMap:
    return SelfMap(tree, rng.permutation(len(tree)).astype(np.int64), label="custom")


def random_nonidentity_permutation_map(rng: np.random.Generator, tree: Tree) -> SelfMap:
    image = rng.permutation(len(tree)).astype(np.int64)
    if (image == np.arange(len(tree))).all():
        image = np.roll(image, 1)
    return SelfMap(tree, image, label="custom")


def random_bounded_multiplicity_map(rng: np.random.Generator, tree: Tree,
                                    multiplicity: int) -> SelfMap:
    """Total symbol whose largest preimage has exactly ``multiplicity``
    elements and no preimage exceeds it."""
    n = len(tree)
    if not 1 <= multiplicity < n:
        raise ValueError(f"multiplicity must be in [1, {n - 1}], got {multiplicity}")
    sources = rng.permutation(n)
    targets = rng.permutation(n)
    capacity = np.full(n, multiplicity, dtype=np.int64)
    image = np.empty(n, dtype=np.int64)
    image[sources[:multiplicity]] = targets[0]
    capacity[targets[0]] = 0
    ti = 1
    for s in sources[multiplicity:]:
        while capacity[targets[ti % n]] == 0:
            ti += 1
        t = targets[ti % n]
        image[s] = t
        capacity[t] -= 1
        ti += 1
    return SelfMap(tree, image, label="custom")


def random_injective_spec(rng: np.random.Generator, p: float | None = None,
                          max_vertices: int = 600) -> OperatorSpec:
    tree = random_bary_tree(rng, max_vertices=max_vertices)
    weight = random_weight(rng, tree)
    symbol = random_permutation_map(rng, tree)
    if p is None:
        p = _P_CHOICES[int(rng.integers(len(_P_CHOICES)))]
    return OperatorSpec(tree, weight, symbol, p)


def random_multiplicity_spec(rng: np.random.Generator, multiplicity: int,
                             p: float | None = None,
                             max_vertices: int = 600) -> OperatorSpec:
    tree = random_bary_tree(rng, max_vertices=max_vertices,
                            min_vertices=multiplicity + 2)
    weight = random_weight(rng, tree)
    symbol = random_bounded_multiplicity_map(rng, tree, multiplicity)
    if p is None:
        p = _P_CHOICES[int(rng.integers(len(_P_CHOICES)))]
    return OperatorSpec(tree, weight, symbol, p)


def random_function(rng: np.random.Generator, tree: Tree) -> np.ndarray:
    return rng.standard_normal(len(tree)) + 1j * rng.standard_normal(len(tree))


def random_unit_function(rng: np.random.Generator, weight: Weight, p: float) -> np.ndarray:
    f = random_function(rng, weight.tree)
    nrm = norm_p(f, weight, p)
    if nrm == 0.0:
        f = np.zeros(len(weight.tree), dtype=np.complex128)
        f[0] = 1.0
        nrm = norm_p(f, weight, p)
    return f / nrm


def structured_specs(p: float = 2.0) -> list[tuple[str, OperatorSpec]]:
    """Named, deterministic instances that exercise each builtin family."""
    out: list[tuple[str, OperatorSpec]] = []

    def add(name, tree, weight, symbol):
        out.append((name, OperatorSpec(tree, weight, symbol, p)))

    t_small = build_bary(2, 2)
    add("identity/constant", t_small, constant_weight(t_small, 1.0), identity_map(t_small))
    add("parent/constant", t_small, constant_weight(t_small, 1.0), parent_map(t_small))

    t_bin = build_bary(2, 8)
    add("identity/reciprocal", t_bin, reciprocal_depth_weight(t_bin), identity_map(t_bin))
    add("parent/geometric(0.5)", t_bin, geometric_weight(t_bin, 0.5), parent_map(t_bin))
    add("level_shift(2)/geometric(2)", t_bin, geometric_weight(t_bin, 2.0), level_shift_map(t_bin, 2))
    add("depth_square/reciprocal", t_bin, reciprocal_depth_weight(t_bin), depth_square_map(t_bin))
    add("depth_square/geometric(2)", t_bin, geometric_weight(t_bin, 2.0), depth_square_map(t_bin))

    t_path = build_bary(1, 40)
    add("parent/reciprocal path", t_path, reciprocal_depth_weight(t_path), parent_map(t_path))
    add("level_shift(3)/geometric(0.5) path", t_path, geometric_weight(t_path, 0.5),
        level_shift_map(t_path, 3))

    t_tern = build_bary(3, 5)
    add("parent/constant ternary", t_tern, constant_weight(t_tern, 2.5), parent_map(t_tern))
    return out
