"""Exhaustive generators used as brute-force oracles.

Unrooted labeled trees come from Prüfer sequences, so every tree is produced
exactly once with no rejection step; a rooted copy is emitted per admissible
root.  :func:`indegree_census` runs the same decoding vectorised with numpy
for the few checks that need every tree on eight or nine vertices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator

import numpy as np

from .limits import check, limits
from .trees import Profile, RootedForest, RootedMultitypeTree, TreeError, Vertex


def prufer_decode(seq: Iterable[int], n: int) -> list[int]:
    """Parent array (root ``n - 1``, which gets -1) of the tree with this Prüfer code."""
    seq = list(seq)
    if n == 1:
        return [-1]
    if len(seq) != n - 2:
        raise ValueError(f"a Prüfer code for {n} vertices has length {n - 2}")
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    parent = [-1] * n
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for a in seq:
        parent[leaf] = a
        degree[a] -= 1
        degree[leaf] = 0
        if a < ptr and degree[a] == 1:
            leaf = a
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    parent[leaf] = n - 1
    return parent


def prufer_encode(parent: list[int]) -> list[int]:
    """Prüfer code of the unrooted tree underlying a parent array."""
    n = len(parent)
    if n <= 2:
        return []
    adj: list[set[int]] = [set() for _ in range(n)]
    for v, p in enumerate(parent):
        if p >= 0:
            adj[v].add(p)
            adj[p].add(v)
    degree = [len(a) for a in adj]
    seq = []
    removed = [False] * n
    for _ in range(n - 2):
        leaf = min(v for v in range(n) if degree[v] == 1 and not removed[v])
        (nb,) = [w for w in adj[leaf] if not removed[w]]
        seq.append(nb)
        removed[leaf] = True
        degree[nb] -= 1
    return seq


def reroot(parent: list[int], r: int) -> list[int]:
    """The same unrooted tree as a parent array rooted at ``r``."""
    out = list(parent)
    prev, cur = -1, r
    while cur != -1:
        nxt = parent[cur]
        out[cur] = prev
        prev, cur = cur, nxt
    return out


def _unrooted_parent_arrays(n: int) -> Iterator[list[int]]:
    if n == 1:
        yield [-1]
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_decode(seq, n)


def enumerate_trees(profile: Profile, root_type: int) -> Iterator[RootedMultitypeTree]:
    """Every tree of ``T_rho(profile)`` exactly once, in a fixed order."""
    if not 1 <= root_type <= profile.d:
        raise TreeError(f"root type {root_type} outside [1, {profile.d}]")
    check(profile.size, limits().max_vertices, "vertex count")
    verts = profile.vertices()
    roots = [k for k, v in enumerate(verts) if v.type == root_type]
    for par in _unrooted_parent_arrays(len(verts)):
        for r in roots:
            rp = reroot(par, r)
            parent = {verts[k]: verts[p] for k, p in enumerate(rp) if p >= 0}
            yield RootedMultitypeTree(profile, verts[r], parent, validate=False)


def enumerate_forests(profile: Profile) -> Iterator[RootedForest]:
    """Every rooted forest on the profile's vertex set exactly once.

    Forests are read off trees on one extra vertex rooted at that vertex:
    its children become the roots.
    """
    check(profile.size, limits().max_vertices, "vertex count")
    verts = profile.vertices()
    n = len(verts) + 1
    top = n - 1
    for par in _unrooted_parent_arrays(n):
        roots = [verts[k] for k, p in enumerate(par[:-1]) if p == top]
        parent = {verts[k]: verts[p] for k, p in enumerate(par[:-1]) if p != top}
        yield RootedForest(profile, roots, parent, validate=False)


@dataclass(frozen=True)
class CayleySkeleton:
    """A Cayley tree on the types [d], oriented toward ``root``."""

    d: int
    root: int
    parent: tuple[tuple[int, int], ...]  # sorted (child, parent) pairs

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.parent

    def parent_of(self, s: int) -> int | None:
        for c, p in self.parent:
            if c == s:
                return p
        return None


@lru_cache(maxsize=None)
def _skeletons(d: int, root: int) -> tuple[CayleySkeleton, ...]:
    out = []
    for par in _unrooted_parent_arrays(d):
        rp = reroot(par, root - 1)
        edges = tuple(sorted((k + 1, p + 1) for k, p in enumerate(rp) if p >= 0))
        out.append(CayleySkeleton(d, root, edges))
    return tuple(out)


def enumerate_skeletons(d: int, root: int) -> Iterator[CayleySkeleton]:
    """The d^(d-2) Cayley trees on [d] rooted at ``root``."""
    if not 1 <= root <= d:
        raise TreeError(f"root {root} outside [1, {d}]")
    check(d, limits().max_skeleton_d, "skeleton size d")
    return iter(_skeletons(d, root))


def skeleton_sum(d: int, root: int, weight: Callable[[int, int], object], within=None):
    """Sum over skeletons A (optionally with every edge in ``within``) of prod weight(s, t)."""
    total = 0
    for A in enumerate_skeletons(d, root):
        if within is not None and not all(e in within for e in A.parent):
            continue
        term = 1
        for s, t in A.parent:
            term = term * weight(s, t)
            if term == 0:
                break
        total = total + term
    return total


# -- plane trees -------------------------------------------------------------

PlaneTree = tuple  # a plane tree is the tuple of its root's subtrees, left to right


@lru_cache(maxsize=None)
def _plane_forests(k: int) -> tuple[tuple[PlaneTree, ...], ...]:
    if k == 0:
        return ((),)
    out = []
    for j in range(1, k + 1):
        for first in _plane_trees(j):
            for rest in _plane_forests(k - j):
                out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _plane_trees(n: int) -> tuple[PlaneTree, ...]:
    return tuple(_plane_forests(n - 1))


def enumerate_plane_trees(n: int) -> Iterator[PlaneTree]:
    """Unlabeled rooted plane trees with ``n`` vertices."""
    if n < 1:
        raise ValueError("a plane tree has at least one vertex")
    check(n, limits().max_plane_tree, "plane tree size")
    return iter(_plane_trees(n))


def plane_tree_degrees(T: PlaneTree) -> tuple[int, ...]:
    """(N_0, N_1, ...): number of vertices with i children, trailing zeros dropped."""
    counts: Counter = Counter()
    stack = [T]
    while stack:
        v = stack.pop()
        counts[len(v)] += 1
        stack.extend(v)
    top = max(counts)
    return tuple(counts[i] for i in range(top + 1))


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        return ((),) if total == 0 else ()
    return tuple((k,) + rest for k in range(total + 1) for rest in compositions(total - k, parts - 1))


def count_filtered(stream: Iterable, predicate: Callable[[object], bool] | None = None) -> int:
    if predicate is None:
        return sum(1 for _ in stream)
    return sum(1 for item in stream if predicate(item))


# -- vectorised census -------------------------------------------------------


def _batch_unrooted(n: int) -> np.ndarray:
    """Parent arrays (rooted at n - 1) of all n^(n-2) labeled trees, one per row."""
    if n == 1:
        return np.full((1, 1), -1, dtype=np.int16)
    if n == 2:
        return np.array([[1, -1]], dtype=np.int16)
    m = n ** (n - 2)
    seqs = np.indices((n,) * (n - 2), dtype=np.int16).reshape(n - 2, m).T
    rows = np.arange(m)
    degree = np.ones((m, n), dtype=np.int16)
    for k in range(n - 2):
        np.add.at(degree, (rows, seqs[:, k]), 1)
    parent = np.full((m, n), -1, dtype=np.int16)
    for k in range(n - 2):
        leaf = np.argmax(degree == 1, axis=1)
        a = seqs[:, k]
        parent[rows, leaf] = a
        degree[rows, leaf] = 0
        degree[rows, a] -= 1
    leaf = np.argmax(degree == 1, axis=1)
    parent[rows, leaf] = n - 1
    return parent


def _batch_reroot(parent: np.ndarray, r: int) -> np.ndarray:
    m, n = parent.shape
    rows = np.arange(m)
    out = parent.copy()
    prev = np.full(m, -1, dtype=parent.dtype)
    cur = np.full(m, r, dtype=parent.dtype)
    for _ in range(n):
        live = cur >= 0
        if not live.any():
            break
        nxt = np.where(live, parent[rows, np.maximum(cur, 0)], -1)
        out[rows[live], cur[live]] = prev[live]
        prev = np.where(live, cur, prev)
        cur = nxt
    return out


@lru_cache(maxsize=64)
def _cached_rooted_batch(n: int, r: int) -> np.ndarray:
    out = _batch_reroot(_cached_unrooted(n), r)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=2)
def _cached_unrooted(n: int) -> np.ndarray:
    out = _batch_unrooted(n)
    out.flags.writeable = False
    return out


def _rooted_batch(n: int, r: int) -> np.ndarray:
    # beyond 8 vertices the cached arrays would take hundreds of megabytes
    if n <= 8:
        return _cached_rooted_batch(n, r)
    return _batch_reroot(_batch_unrooted(n), r)


@dataclass
class IndegreeCensus:
    """Number of trees per indegree monomial.

    ``gens[k]`` names the variable whose exponent sits in column ``k`` of each
    exponent tuple in ``counts``.
    """

    gens: tuple
    counts: dict[tuple[int, ...], int]


def rooted_batch(profile: Profile, root_type: int) -> np.ndarray:
    """Parent arrays (-1 at the root) of every tree in T_rho(profile), one per row.

    Column k is vertex ``profile.vertices()[k]``; rows are grouped by root
    vertex in label order, matching :func:`enumerate_trees`.
    """
    if not 1 <= root_type <= profile.d:
        raise TreeError(f"root type {root_type} outside [1, {profile.d}]")
    check(profile.size, limits().max_vertices, "vertex count")
    verts = profile.vertices()
    n = len(verts)
    blocks = [_rooted_batch(n, r) for r, v in enumerate(verts) if v.type == root_type]
    return np.concatenate(blocks).astype(np.int64)


def child_table(parent: np.ndarray, profile: Profile) -> np.ndarray:
    """Row-wise ch_s(v): column (s - 1) * n + k counts type-s children of vertex k."""
    m, n = parent.shape
    width = profile.d * n
    # one spare column per row absorbs the root's missing parent
    table = np.zeros((m, width + 1), dtype=np.int16)
    flat = table.reshape(-1)
    base = np.arange(m, dtype=np.int64) * (width + 1)
    for k, v in enumerate(profile.vertices()):
        p = parent[:, k]
        # each row gains exactly one count per child, so plain fancy increments are safe
        flat[base + np.where(p >= 0, (v.type - 1) * n + p, width)] += 1
    return table[:, :width]


def row_histogram(table: np.ndarray) -> dict[tuple[int, ...], int]:
    """Distinct rows of a non-negative integer table with their multiplicities.

    Rows are packed into as few int64 keys as the entry range allows and
    grouped by sorting.
    """
    m, width = table.shape
    if m == 0:
        return {}
    if width == 0:
        return {(): m}
    radix = int(table.max()) + 1
    bits = max(int(radix - 1).bit_length(), 1)
    per_key = max(62 // bits, 1)
    keys = []
    for lo in range(0, width, per_key):
        key = np.zeros(m, dtype=np.int64)
        for c in range(lo, min(lo + per_key, width)):
            key |= table[:, c].astype(np.int64) << (bits * (c - lo))
        keys.append(key)
    order, starts = _group(keys)
    counts = np.diff(np.append(starts, m)).tolist()
    rows = table[order[starts]].tolist()
    return dict(zip(map(tuple, rows), counts))


def _group(keys: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """A sort order and the start of each run of equal key tuples in it."""
    if len(keys) == 1:
        order = np.argsort(keys[0], kind="stable")
    else:
        # sort on a mixed hash; equal tuples stay adjacent unless two tuples collide
        mixed = keys[0].copy()
        for key in keys[1:]:
            mixed = mixed * np.int64(0x9E3779B97F4A7C15 - (1 << 64)) + key
        order = np.argsort(mixed, kind="stable")
        ms = mixed[order]
        same_hash = ms[1:] == ms[:-1]
        same_tuple = np.ones(len(ms) - 1, dtype=bool)
        for key in keys:
            ks = key[order]
            same_tuple &= ks[1:] == ks[:-1]
        if (same_hash & ~same_tuple).any():
            order = np.lexsort(keys[::-1])
    change = np.zeros(len(order), dtype=bool)
    change[0] = True
    for key in keys:
        ks = key[order]
        change[1:] |= ks[1:] != ks[:-1]
    return order, np.flatnonzero(change)


def increment_histogram(m: int, width: int, contributions, max_entry: int) -> dict[tuple[int, ...], int]:
    """Histogram of the rows of an m x width table given only as increments.

    ``contributions`` yields pairs (column, value): arrays of length m (or a
    scalar value) adding ``value`` at ``column`` in each row, with column -1
    meaning no change.  Entries must stay within [0, max_entry].  Rows are
    packed into int64 keys as they are built, so the table itself is never
    materialised.
    """
    if m == 0:
        return {}
    if width == 0:
        return {(): m}
    bits = max(int(max_entry).bit_length(), 1)
    per_key = max(62 // bits, 1)
    nkeys = -(-width // per_key)
    keys = [np.zeros(m, dtype=np.int64) for _ in range(nkeys)]
    for col, val in contributions:
        col = np.asarray(col, dtype=np.int64)
        live = col >= 0
        c = np.where(live, col, 0)
        inc = np.where(live, np.left_shift(np.asarray(val, dtype=np.int64), (c % per_key) * bits), 0)
        if nkeys == 1:
            keys[0] += inc
        else:
            block = c // per_key
            for b in range(nkeys):
                keys[b] += np.where(block == b, inc, 0)
    order, starts = _group(keys)
    counts = np.diff(np.append(starts, m)).tolist()
    picked = [key[order[starts]] for key in keys]
    mask = (1 << bits) - 1
    rows = np.empty((len(starts), width), dtype=np.int64)
    for c in range(width):
        rows[:, c] = (picked[c // per_key] >> ((c % per_key) * bits)) & mask
    return dict(zip(map(tuple, rows.tolist()), counts))


def indegree_census(profile: Profile, root_type: int) -> IndegreeCensus:
    """Tally prod x_{s,t,i}^{ch_s(t,i)} over all trees of ``T_rho(profile)``."""
    from .algebra import x

    verts = profile.vertices()
    n = len(verts)
    parent = rooted_batch(profile, root_type)
    contributions = (
        (np.where(parent[:, k] >= 0, (v.type - 1) * n + parent[:, k], -1), 1) for k, v in enumerate(verts)
    )
    counts = increment_histogram(parent.shape[0], profile.d * n, contributions, n - 1)
    gens = tuple(x(s, v.type, v.label) for s in range(1, profile.d + 1) for v in verts)
    return IndegreeCensus(gens, counts)
