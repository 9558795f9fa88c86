"""Functions on the tree and the weighted p-norm machinery.

Tree functions are plain complex arrays indexed by vertex id. The inner
product conjugates its second argument (the usual Hilbert convention), so
``inner(f, f)`` is the squared 2-norm for complex f; reports carry this
convention note.
"""

from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from .errors import DocumentError
from .tree import Tree, _check_vertex, name_index
from .weight import Weight

TreeFunction = np.ndarray


def validate_exponent(p: float) -> float:
    p = float(p)
    if math.isnan(p) or math.isinf(p) or p < 1.0:
        raise ValueError(f"exponent p must satisfy 1 <= p < infinity, got {p!r}")
    return p


def _as_function(weight: Weight, f) -> np.ndarray:
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != weight.values.shape:
        raise ValueError(f"function needs one value per vertex ({weight.values.shape[0]}), got shape {f.shape}")
    return f


def norm_p(f: TreeFunction, weight: Weight, p: float) -> float:
    """[sum over v of |f(v)|^p * weight(v)] ** (1/p)."""
    p = validate_exponent(p)
    f = _as_function(weight, f)
    return float(np.sum(np.abs(f) ** p * weight.values) ** (1.0 / p))


def inner(f: TreeFunction, g: TreeFunction, weight: Weight) -> complex:
    """sum over v of f(v) * conj(g(v)) * weight(v)."""
    f = _as_function(weight, f)
    g = _as_function(weight, g)
    return complex(np.sum(f * np.conj(g) * weight.values))


def basis_vector(weight: Weight, v: int, p: float) -> TreeFunction:
    """The normalized indicator of ``v``: value weight(v)**(-1/p) at v, zero
    elsewhere. A unit vector for every exponent and every positive weight."""
    p = validate_exponent(p)
    v = _check_vertex(weight.tree, v)
    f = np.zeros(len(weight.tree), dtype=np.complex128)
    f[v] = weight.values[v] ** (-1.0 / p)
    return f


def point_eval_norm(weight: Weight, v: int, p: float) -> float:
    """Norm of the evaluation functional f -> f(v): weight(v)**(-1/p).

    The bound |f(v)| <= weight(v)**(-1/p) * norm_p(f) is attained by the
    normalized indicator of v, so at truncation scale this is exact.
    """
    p = validate_exponent(p)
    v = _check_vertex(weight.tree, v)
    return float(weight.values[v] ** (-1.0 / p))


def project(tree: Tree, f: TreeFunction, n: int) -> TreeFunction:
    """Truncation projection: keep values at depth <= n, zero beyond.

    Idempotent, and both the projection and its complement are p-norm
    contractions for every weight.
    """
    n = int(n)
    if n < 0:
        raise ValueError("projection level must be >= 0")
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (len(tree),):
        raise ValueError(f"function needs one value per vertex ({len(tree)}), got shape {f.shape}")
    return np.where(tree.depth <= n, f, 0.0 + 0.0j)


def load_function(tree: Tree, document: Mapping) -> TreeFunction:
    """Build a tree function from a ``{"values": {vertex-id: [re, im]}}``
    document covering every vertex."""
    if not isinstance(document, Mapping) or "values" not in document:
        raise DocumentError('function document must be an object with a "values" field')
    table = document["values"]
    if not isinstance(table, Mapping):
        raise DocumentError('function document field "values" must be an object')
    idx = name_index(tree)
    unknown = [k for k in table if k not in idx]
    if unknown:
        raise DocumentError(f"function document names unknown vertex '{unknown[0]}'")
    f = np.empty(len(tree), dtype=np.complex128)
    for name, v in idx.items():
        if name not in table:
            raise DocumentError(f"function document is missing vertex '{name}'")
        pair = table[name]
        try:
            re, im = pair
            f[v] = complex(float(re), float(im))
        except (TypeError, ValueError):
            raise DocumentError(
                f"function value at vertex '{name}' must be a [re, im] pair, got {pair!r}") from None
    if not np.isfinite(f.view(np.float64)).all():
        bad = int(np.flatnonzero(~np.isfinite(f))[0])
        raise DocumentError(f"function value at vertex '{tree.name_of(bad)}' is not finite")
    return f


def dump_function(tree: Tree, f: TreeFunction) -> dict:
    f = np.asarray(f, dtype=np.complex128)
    return {"values": {tree.name_of(v): [float(f[v].real), float(f[v].imag)]
                       for v in range(len(tree))}}
