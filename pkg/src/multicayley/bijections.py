"""Edge-moving bijections between marked trees with shifted degree statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import prod

import numpy as np

from .enumeration import CayleySkeleton
from .formulas import multinomial
from .limits import PreconditionError
from .trees import IndegreeVector, RootedMultitypeTree, Vertex, is_star


@dataclass(frozen=True)
class MarkedTree:
    """A tree with one distinguished edge, given as (child, parent)."""

    tree: RootedMultitypeTree
    marked_edge: tuple[Vertex, Vertex]

    def __post_init__(self):
        c, p = Vertex(*self.marked_edge[0]), Vertex(*self.marked_edge[1])
        object.__setattr__(self, "marked_edge", (c, p))
        if self.tree.parent.get(c) != p:
            raise PreconditionError(f"marked edge {tuple(c)}->{tuple(p)} is not an edge of the tree")

    def to_json(self) -> dict:
        data = self.tree.to_json()
        data["marked"] = [list(self.marked_edge[0]), list(self.marked_edge[1])]
        return data

    @classmethod
    def from_json(cls, data) -> "MarkedTree":
        tree = RootedMultitypeTree.from_json(data)
        c, p = data["marked"]
        return cls(tree, (Vertex(*c), Vertex(*p)))


# -- unitype move ------------------------------------------------------------


def _adjacency(T: RootedMultitypeTree) -> dict[Vertex, set[Vertex]]:
    adj: dict[Vertex, set[Vertex]] = {v: set() for v in T.profile.vertices()}
    for c, p in T.parent.items():
        adj[c].add(p)
        adj[p].add(c)
    return adj


def _orient(profile, root: Vertex, adj: dict[Vertex, set[Vertex]]) -> RootedMultitypeTree:
    parent = {}
    stack = [root]
    seen = {root}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                stack.append(w)
    return RootedMultitypeTree(profile, root, parent)


def _path(adj, a: Vertex, b: Vertex) -> list[Vertex]:
    prev = {a: None}
    stack = [a]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                stack.append(w)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def unitype_degrees(T: RootedMultitypeTree) -> tuple[int, ...]:
    """Degree of each vertex (1, i) of a one-type tree, in label order."""
    deg = Counter()
    for c, p in T.parent.items():
        deg[c] += 1
        deg[p] += 1
    return tuple(deg[v] for v in T.profile.vertices())


def phi_unitype(M: MarkedTree, i: int, j: int) -> MarkedTree:
    """Move the marked edge at vertex i over to vertex j.

    The tree is read as unrooted: the marked edge must touch vertex i and
    must not lie on the path from i to j.  The result keeps the input's root
    vertex and marks the moved edge, which now touches j.
    """
    T = M.tree
    if T.d != 1:
        raise PreconditionError("the unitype move needs a one-type tree")
    vi, vj = Vertex(1, i), Vertex(1, j)
    if i == j or vi not in T.profile or vj not in T.profile:
        raise PreconditionError(f"need two distinct labels in [1, {T.profile[1]}]")
    a, b = M.marked_edge
    if vi not in (a, b):
        raise PreconditionError("the marked edge does not touch vertex i")
    w = b if a == vi else a
    adj = _adjacency(T)
    path = _path(adj, vi, vj)
    if path[1] == w:
        raise PreconditionError("the marked edge lies on the path from i to j")
    adj[vi].discard(w)
    adj[w].discard(vi)
    adj[vj].add(w)
    adj[w].add(vj)
    out = _orient(T.profile, T.root, adj)
    edge = (w, vj) if out.parent.get(w) == vj else (vj, w)
    return MarkedTree(out, edge)


def unitype_marked_class(trees, gamma, i: int, j: int):
    """Marked trees with degree sequence gamma whose mark touches i off the i-j path."""
    vi, vj = Vertex(1, i), Vertex(1, j)
    for T in trees:
        if unitype_degrees(T) != tuple(gamma):
            continue
        adj = _adjacency(T)
        on_path = _path(adj, vi, vj)[1]
        for w in sorted(adj[vi]):
            if w == on_path:
                continue
            edge = (w, vi) if T.parent.get(w) == vi else (vi, w)
            yield MarkedTree(T, edge)


# -- multitype moves ---------------------------------------------------------


def _check_mark(M: MarkedTree, s: int, t: int, i: int, j: int) -> tuple[Vertex, Vertex, Vertex]:
    T = M.tree
    a, b = Vertex(t, i), Vertex(t, j)
    if i == j or a not in T.profile or b not in T.profile:
        raise PreconditionError(f"need two distinct labels of type {t}")
    w, p = M.marked_edge
    if p != a or w.type != s:
        raise PreconditionError(
            f"the marked edge must join ({t},{i}) to one of its type-{s} children"
        )
    return w, a, b


def classify(M: MarkedTree, s: int, t: int, i: int, j: int) -> str:
    """'hat' if the mark is off the path from (t, j) to the root, else 'tilde'."""
    w, _a, b = _check_mark(M, s, t, i, j)
    return "tilde" if w in M.tree.ancestors(b) else "hat"


def classify_and_apply(M: MarkedTree, s: int, t: int, i: int, j: int) -> MarkedTree:
    """Send a tree marked at a type-s child of (t, i) to one marked at a type-s child of (t, j).

    The image has one fewer type-s child at (t, i) and one more at (t, j);
    ``classify_and_apply(image, s, t, j, i)`` recovers the input.
    """
    w, a, b = _check_mark(M, s, t, i, j)
    T = M.tree
    if w not in T.ancestors(b):
        parent = dict(T.parent)
        parent[w] = b
        return MarkedTree(RootedMultitypeTree(T.profile, T.root, parent), (w, b))
    swap = {a: b, b: a}
    moved = {}
    for c, p in T.parent.items():
        if p == a and c != w:
            p = b
        elif p == b:
            p = a
        moved[c] = p
    parent = {swap.get(c, c): swap.get(p, p) for c, p in moved.items()}
    root = swap.get(T.root, T.root)
    new_w = swap.get(w, w)
    return MarkedTree(RootedMultitypeTree(T.profile, root, parent), (new_w, b))


def shifted(gamma: IndegreeVector, s: int, t: int, i: int, j: int) -> IndegreeVector:
    g = dict(gamma.items())
    g[(s, t, i)] = g.get((s, t, i), 0) - 1
    g[(s, t, j)] = g.get((s, t, j), 0) + 1
    return IndegreeVector(g)


def marked_class(trees, gamma: IndegreeVector, s: int, t: int, i: int):
    """Trees with indegree vector gamma, marked at each type-s child of (t, i) in turn."""
    from .trees import indegree_vector

    a = Vertex(t, i)
    for T in trees:
        if indegree_vector(T) != gamma:
            continue
        for c, p in sorted(T.parent.items()):
            if p == a and c.type == s:
                yield MarkedTree(T, (c, p))


# -- star trees ---------------------------------------------------------------


def star_core(T: RootedMultitypeTree) -> CayleySkeleton:
    """The skeleton on the label-1 vertices of a star tree."""
    if not is_star(T):
        raise PreconditionError("not a star tree: some vertex labeled above 1 has a child")
    if T.root.label != 1:
        raise PreconditionError("a star tree is rooted at a label-1 vertex")
    edges = tuple(sorted((c.type, p.type) for c, p in T.parent.items() if c.label == 1))
    return CayleySkeleton(T.d, T.root.type, edges)


def star_vector(gamma: IndegreeVector) -> IndegreeVector:
    """Collapse every type-s child count at (t, i) onto (t, 1)."""
    out = Counter()
    for (s, t, _i), k in gamma.items():
        out[(s, t, 1)] += k
    return IndegreeVector(out)


def star_multiplier(gamma: IndegreeVector, profile) -> int:
    """prod over (s, t) of the multinomial choosing which (t, i) get the children."""
    return prod(
        multinomial([gamma[(s, t, i)] for i in range(1, profile[t] + 1)])
        for s in profile.types()
        for t in profile.types()
    )


def star_schedule(gamma: IndegreeVector, profile) -> list[tuple[int, int, int, int]]:
    """Elementary moves (s, t, i, 1) carrying gamma to its star vector, one child at a time."""
    moves = []
    for (s, t, i), k in sorted(gamma.items()):
        if i != 1:
            moves.extend([(s, t, i, 1)] * k)
    return moves


# -- batch forms over parent arrays ---------------------------------------------
#
# Each row of ``parent`` is a tree on vertex indices 0..n-1 with -1 at the root.
# These mirror the moves above on many trees at once; the verification suite
# checks them against the object-level versions.


def ancestor_or_self(parent: np.ndarray, w: int, b: int) -> np.ndarray:
    """Per row: is ``w`` on the path from ``b`` up to the root (``b`` included)?"""
    m, n = parent.shape
    rows = np.arange(m)
    cur = np.full(m, b, dtype=parent.dtype)
    hit = np.zeros(m, dtype=bool)
    for _ in range(n):
        hit |= cur == w
        cur = np.where(cur >= 0, parent[rows, np.maximum(cur, 0)], -1)
    return hit


def classify_and_apply_batch(parent: np.ndarray, w: int, a: int, b: int) -> tuple[np.ndarray, int, np.ndarray]:
    """The multitype move on every row, each marked at the edge w -> a.

    Rows must have ``parent[:, w] == a``.  Returns the images, the marked
    child's index in the images (the mark always points at ``b``), and the
    boolean 'tilde' mask.
    """
    if not (parent[:, w] == a).all():
        raise PreconditionError("every row must contain the marked edge w -> a")
    tilde = ancestor_or_self(parent, w, b)
    out = parent.copy()
    out[~tilde, w] = b
    if tilde.any():
        T = parent[tilde]
        moved = T.copy()
        cols = np.arange(T.shape[1])
        moved[(T == a) & (cols != w)] = b
        moved[T == b] = a
        relabeled = np.where(moved == a, b, np.where(moved == b, a, moved))
        relabeled[:, [a, b]] = relabeled[:, [b, a]]
        out[tilde] = relabeled
    if w == b:
        # then b is always its own ancestor, every row is 'tilde', and the labels swap
        return out, a, tilde
    return out, w, tilde


def unitype_move_batch(parent: np.ndarray, i: int, w: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """The unitype move on trees stored rooted at vertex n - 1.

    Returns the images (again rooted at n - 1) and the mask of rows where
    the edge {i, w} exists and w is off the path from i to j; other rows are
    returned unchanged.
    """
    from .enumeration import _batch_reroot

    n = parent.shape[1]
    at_i = _batch_reroot(parent, i)
    ok = (at_i[:, w] == i) & ~ancestor_or_self(at_i, w, j)
    at_i[ok, w] = j
    back = _batch_reroot(at_i, n - 1)
    return np.where(ok[:, None], back, parent), ok
