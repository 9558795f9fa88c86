"""Finite-depth truncations of rooted trees.

A stored tree is the depth-``D`` truncation of an idealized infinite rooted
tree: vertex 0 is the root, every other vertex records its parent, and in the
idealized object no vertex is terminal, so leaves are expected only at the
truncation frontier. Vertices are dense integer ids. Within a level the
canonical order is lexicographic by root path, which makes "the i-th vertex
at level n" well defined and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DocumentError

VertexId = int

# children lists are plain python objects; beyond this the tree alone costs
# multiple GB, so deep truncations must taper (see build_bary's branch_until)
_MAX_GENERATED_VERTICES = 5_000_000


@dataclass(frozen=True, eq=False)
class Tree:
    """Immutable rooted tree truncation.

    Attributes
    ----------
    parent:
        ``parent[v]`` is the parent id of ``v``, ``-1`` for the root.
    depth:
        Edge distance to the root; ``depth[0] == 0``.
    children:
        Per-vertex child ids in sibling order (construction or document
        order). Sibling order defines the lexicographic root-path order.
    truncation_depth:
        Depth ``D`` of the stored frontier.
    names:
        Original document ids, or ``None`` for generated trees.
    terminal_gaps:
        Vertices shallower than ``D`` with no children. They violate the
        terminal-free model and can only come from ad hoc documents; they
        are accepted but marked.
    preorder_rank:
        Position of each vertex in the depth-first traversal that follows
        sibling order. Sorting a level by this rank yields the canonical
        lexicographic order.
    levels:
        ``levels[n]`` holds the vertices at depth ``n`` in canonical order.
    """

    parent: np.ndarray
    depth: np.ndarray
    children: tuple[tuple[VertexId, ...], ...]
    truncation_depth: int
    names: tuple[str, ...] | None
    terminal_gaps: tuple[VertexId, ...]
    preorder_rank: np.ndarray
    levels: tuple[np.ndarray, ...]

    @property
    def n_vertices(self) -> int:
        return int(self.parent.shape[0])

    def __len__(self) -> int:
        return self.n_vertices

    def name_of(self, v: VertexId) -> str:
        return self.names[v] if self.names is not None else str(v)


def _check_vertex(tree: Tree, v: int) -> int:
    v = int(v)
    if not 0 <= v < len(tree):
        raise ValueError(f"vertex id {v} outside the stored vertex set (size {len(tree)})")
    return v


def _assemble(parent: np.ndarray, names: tuple[str, ...] | None,
              truncation_depth: int | None = None) -> Tree:
    parent = np.asarray(parent, dtype=np.int64)
    n = int(parent.shape[0])
    if n == 0:
        raise DocumentError("tree has no vertices")
    if parent[0] != -1:
        raise ValueError("internal error: vertex 0 must be the root")
    if n > 1 and (((parent[1:] < 0) | (parent[1:] >= n)).any()):
        bad = 1 + int(np.flatnonzero((parent[1:] < 0) | (parent[1:] >= n))[0])
        raise ValueError(f"vertex {bad} has parent id outside the vertex set")

    children_lists: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        children_lists[int(parent[v])].append(v)

    # BFS from the root; a vertex left unreached sits on a parent cycle
    depth = np.full(n, -1, dtype=np.int64)
    depth[0] = 0
    queue = [0]
    for v in queue:
        dv = depth[v] + 1
        for c in children_lists[v]:
            depth[c] = dv
            queue.append(c)
    if (depth < 0).any():
        v = int(np.flatnonzero(depth < 0)[0])
        name = names[v] if names is not None else str(v)
        raise DocumentError(f"cycle detected: vertex '{name}' is not reachable from the root")

    d_max = int(depth.max())
    if truncation_depth is None:
        truncation_depth = d_max
    elif truncation_depth < d_max:
        raise ValueError(f"stored vertices reach depth {d_max} > truncation depth {truncation_depth}")

    rank = np.empty(n, dtype=np.int64)
    stack = [0]
    r = 0
    while stack:
        v = stack.pop()
        rank[v] = r
        r += 1
        stack.extend(reversed(children_lists[v]))

    order = np.lexsort((rank, depth))
    cuts = np.searchsorted(depth[order], np.arange(truncation_depth + 2))
    levels = tuple(order[cuts[k]:cuts[k + 1]] for k in range(truncation_depth + 1))

    gaps = tuple(v for v in range(n)
                 if depth[v] < truncation_depth and not children_lists[v])

    for arr in (parent, depth, rank, *levels):
        arr.setflags(write=False)
    return Tree(parent=parent, depth=depth,
                children=tuple(tuple(c) for c in children_lists),
                truncation_depth=int(truncation_depth), names=names,
                terminal_gaps=gaps, preorder_rank=rank, levels=levels)


def build_bary(branching: int, depth: int, branch_until: int | None = None,
               max_vertices: int = _MAX_GENERATED_VERTICES) -> Tree:
    """Uniform b-ary truncation: every vertex above the frontier has
    ``branching`` children and all leaves sit at ``depth``.

    ``branch_until=m`` stops the branching at depth ``m`` and continues with
    single-child chains down to the frontier. The result is still a valid
    terminal-free truncation, and it keeps deep trees at a tractable vertex
    count (a uniform binary tree of depth 100 would need ~2**101 vertices).
    """
    branching = int(branching)
    depth = int(depth)
    if branching < 1:
        raise ValueError("branching must be >= 1; branching 0 would make the root terminal")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if branch_until is None:
        bu = depth
    else:
        bu = int(branch_until)
        if bu < 0:
            raise ValueError("branch_until must be >= 0")
        bu = min(bu, depth)

    widths = [branching ** min(k, bu) for k in range(depth + 1)]  # exact ints
    total = sum(widths)
    if total > max_vertices:
        raise ValueError(
            f"refusing to materialize {total} vertices (limit {max_vertices}); "
            "taper deep truncations with branch_until")

    parts = [np.array([-1], dtype=np.int64)]
    off = 0
    for k in range(1, depth + 1):
        idx = np.arange(widths[k], dtype=np.int64)
        parts.append(off + (idx // branching if k <= bu else idx))
        off += widths[k - 1]
    return _assemble(np.concatenate(parts), names=None, truncation_depth=depth)


def load_tree(document: Mapping) -> Tree:
    """Build a tree from a ``{"vertices": [{"id", "parent"}, ...]}`` document.

    The root is the unique entry with a null parent. Vertex ids are assigned
    in document order with the root first. Internal vertices without children
    are accepted but recorded in ``terminal_gaps``.
    """
    if not isinstance(document, Mapping) or "vertices" not in document:
        raise DocumentError('tree document must be an object with a "vertices" array')
    entries = document["vertices"]
    if not isinstance(entries, Sequence) or isinstance(entries, (str, bytes)) or not entries:
        raise DocumentError('tree document field "vertices" must be a non-empty array')

    ids: list[str] = []
    parents: list[str | None] = []
    seen: dict[str, int] = {}
    for i, entry in enumerate(entries):
        if not isinstance(entry, Mapping) or "id" not in entry or "parent" not in entry:
            raise DocumentError(f'tree document vertex #{i} must carry "id" and "parent" fields')
        vid, par = entry["id"], entry["parent"]
        if not isinstance(vid, str):
            raise DocumentError(f'tree document vertex #{i}: "id" must be a string')
        if par is not None and not isinstance(par, str):
            raise DocumentError(f"tree document vertex '{vid}': \"parent\" must be a string or null")
        if vid in seen:
            raise DocumentError(f"duplicate vertex id '{vid}'")
        seen[vid] = i
        ids.append(vid)
        parents.append(par)

    roots = [i for i, p in enumerate(parents) if p is None]
    if not roots:
        raise DocumentError("no root: every vertex names a parent")
    if len(roots) > 1:
        raise DocumentError(f"multiple roots: '{ids[roots[0]]}' and '{ids[roots[1]]}'")
    root = roots[0]

    order = [root] + [i for i in range(len(ids)) if i != root]
    pos = {orig: new for new, orig in enumerate(order)}
    names = tuple(ids[i] for i in order)
    parent_arr = np.empty(len(order), dtype=np.int64)
    parent_arr[0] = -1
    for orig, new in pos.items():
        if orig == root:
            continue
        par = parents[orig]
        if par not in seen:
            raise DocumentError(f"vertex '{ids[orig]}' references unknown parent '{par}'")
        parent_arr[new] = pos[seen[par]]
    return _assemble(parent_arr, names=names)


def dump_tree(tree: Tree) -> dict:
    """Serialize to the document format accepted by :func:`load_tree`."""
    vertices = []
    for v in range(len(tree)):
        par = int(tree.parent[v])
        vertices.append({"id": tree.name_of(v),
                         "parent": None if par < 0 else tree.name_of(par)})
    return {"vertices": vertices}


def name_index(tree: Tree) -> dict[str, int]:
    """Map document vertex ids to dense indices."""
    return {tree.name_of(v): v for v in range(len(tree))}


def distance(tree: Tree, u: VertexId, v: VertexId) -> int:
    """Edge count of the unique path between two vertices."""
    u = _check_vertex(tree, u)
    v = _check_vertex(tree, v)
    parent, depth = tree.parent, tree.depth
    du, dv = int(depth[u]), int(depth[v])
    d = 0
    while du > dv:
        u = int(parent[u])
        du -= 1
        d += 1
    while dv > du:
        v = int(parent[v])
        dv -= 1
        d += 1
    while u != v:
        u = int(parent[u])
        v = int(parent[v])
        d += 2
    return d


def vertices_at_level(tree: Tree, n: int) -> np.ndarray:
    """Vertices at depth exactly ``n`` in canonical (lexicographic) order.

    Levels beyond the truncation depth are empty, not an error.
    """
    n = int(n)
    if n < 0:
        raise ValueError("level must be >= 0")
    if n > tree.truncation_depth:
        return np.empty(0, dtype=np.int64)
    return tree.levels[n]


def truncate(tree: Tree, new_depth: int) -> Tree:
    """Restrict the stored truncation to depth ``new_depth``."""
    new_depth = int(new_depth)
    if not 0 <= new_depth <= tree.truncation_depth:
        raise ValueError(
            f"truncation depth {new_depth} outside [0, {tree.truncation_depth}]")
    if new_depth == tree.truncation_depth:
        return tree
    keep = np.flatnonzero(tree.depth <= new_depth)
    remap = np.full(len(tree), -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size, dtype=np.int64)
    parent = np.concatenate((np.array([-1], dtype=np.int64),
                             remap[tree.parent[keep[1:]]]))
    names = None if tree.names is None else tuple(tree.names[int(v)] for v in keep)
    return _assemble(parent, names=names, truncation_depth=new_depth)
