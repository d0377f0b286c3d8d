"""Rooted vertex-labeled planar d-cacti.

A cactus is stored as a plane tree of gons.  Each gon lists its d corners
in clockwise type order 1..d; each corner carries the vertex label and the
gons glued at that vertex after this one, in clockwise order.  For a
non-root gon the corner it hangs from repeats the parent's label and has no
children of its own.  Rooting cuts every vertex's cyclic order of gons at
the gon nearest the root, so this encoding is one-to-one.

The moves that re-glue gons work on an unrooted view (:class:`CactusMap`):
gons as d-tuples of vertices and, for each vertex, its gons in clockwise
cyclic order.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial, prod
from typing import Iterator, Mapping, Sequence

from .enumeration import compositions
from .limits import PreconditionError, check, limits
from .trees import Profile, TreeError, Vertex


class CactusError(TreeError):
    """A cactus violates a structural invariant."""


@dataclass(frozen=True)
class Corner:
    type: int
    label: int
    children: tuple["Gon", ...] = ()


@dataclass(frozen=True)
class Gon:
    corners: tuple[Corner, ...]

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"type": c.type, "label": c.label, "children": [g.to_json() for g in c.children]}
                for c in self.corners
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Gon":
        return cls(
            tuple(
                Corner(int(v["type"]), int(v["label"]), tuple(cls.from_json(g) for g in v["children"]))
                for v in data["vertices"]
            )
        )


@dataclass(frozen=True)
class Cactus:
    d: int
    root: Gon

    def __post_init__(self):
        problem = _first_problem(self)
        if problem:
            raise CactusError(problem)

    def gons(self) -> Iterator[tuple[Gon, int | None]]:
        """Every gon with the type of the corner it hangs from (None for the root), preorder."""
        stack: list[tuple[Gon, int | None]] = [(self.root, None)]
        while stack:
            g, via = stack.pop()
            yield g, via
            for c in reversed(g.corners):
                for h in reversed(c.children):
                    stack.append((h, c.type))

    @property
    def size(self) -> int:
        return sum(1 for _ in self.gons())

    @property
    def profile(self) -> Profile:
        labels: dict[int, set[int]] = {t: set() for t in range(1, self.d + 1)}
        for g, _via in self.gons():
            for c in g.corners:
                labels[c.type].add(c.label)
        return Profile(tuple(len(labels[t]) for t in range(1, self.d + 1)))

    def to_json(self) -> dict:
        return {"d": self.d, "root": self.root.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "Cactus":
        if "root" in data:
            return cls(int(data["d"]), Gon.from_json(data["root"]))
        return cls(len(data["vertices"]), Gon.from_json(data))


def _first_problem(C: Cactus) -> str | None:
    d = C.d
    if d < 2:
        return "a cactus needs d >= 2"
    seen: Counter = Counter()
    stack: list[tuple[Gon, int | None, int | None]] = [(C.root, None, None)]
    gons = 0
    while stack:
        g, via, via_label = stack.pop()
        gons += 1
        if len(g.corners) != d:
            return f"a gon has {len(g.corners)} corners, expected {d}"
        for t, c in enumerate(g.corners, 1):
            if c.type != t:
                return f"corner types must run 1..{d} clockwise, found {c.type} in position {t}"
            if t == via:
                if c.label != via_label:
                    return f"a gon hangs from ({t},{via_label}) but lists label {c.label} there"
                if c.children:
                    return "the corner a gon hangs from cannot carry children"
                continue
            seen[(t, c.label)] += 1
            for h in c.children:
                stack.append((h, t, c.label))
    for (t, i), k in seen.items():
        if k > 1:
            return f"vertex ({t},{i}) occurs in two places"
    for t in range(1, d + 1):
        labels = sorted(i for (u, i) in seen if u == t)
        if labels != list(range(1, len(labels) + 1)):
            return f"type-{t} labels must be 1..n_{t}, got {labels}"
    if sum(1 for _ in seen) != (d - 1) * gons + 1:
        return "vertex count does not satisfy the Euler relation"
    return None


# -- degrees -------------------------------------------------------------------


class CactusDegreeVector(Mapping):
    """Degree (number of incident gons) of each labeled vertex (t, i)."""

    def __init__(self, data: Mapping[tuple[int, int], int]):
        self._data = {Vertex(*k): int(v) for k, v in sorted(data.items())}

    def __getitem__(self, k) -> int:
        return self._data[Vertex(*k)]

    def __iter__(self):
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, CactusDegreeVector):
            return self._data == other._data
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._data.items()))

    def __repr__(self) -> str:
        return f"CactusDegreeVector({dict(self._data)})"

    def profile(self) -> tuple[int, ...]:
        d = max((t for t, _ in self._data), default=0)
        return tuple(sum(1 for u, _ in self._data if u == t) for t in range(1, d + 1))

    def type_sums(self) -> tuple[int, ...]:
        d = max((t for t, _ in self._data), default=0)
        return tuple(sum(k for (u, _), k in self._data.items() if u == t) for t in range(1, d + 1))

    def to_json(self) -> list:
        return [[t, i, k] for (t, i), k in self._data.items()]


def cactus_degree_vector(C: Cactus) -> CactusDegreeVector:
    deg: Counter = Counter()
    for g, via in C.gons():
        for c in g.corners:
            if c.type != via:
                deg[(c.type, c.label)] += 1 + len(c.children)
    return CactusDegreeVector(deg)


def star_degree_vector(profile: Sequence[int], d: int | None = None) -> CactusDegreeVector:
    """gamma*(n): vertex (t, 1) has degree n - n_t + 1, every other vertex degree 1."""
    n = cactus_size(profile, d)
    if n is None:
        raise PreconditionError(f"profile {tuple(profile)} has no integral size")
    return CactusDegreeVector(
        {(t, i): (n - k + 1 if i == 1 else 1) for t, k in enumerate(profile, 1) for i in range(1, k + 1)}
    )


def cactus_size(profile: Sequence[int], d: int | None = None) -> int | None:
    """(sum n_t - 1) / (d - 1) when integral, else None."""
    d = len(profile) if d is None else d
    if d < 2 or len(profile) != d:
        raise PreconditionError(f"need d >= 2 and a profile of length d, got d={d}, {tuple(profile)}")
    q, r = divmod(sum(profile) - 1, d - 1)
    return q if r == 0 else None


# -- counting formulas -----------------------------------------------------------


def count_cacti_by_degree(gamma: Mapping[tuple[int, int], int], d: int) -> int:
    """n^(d-1) prod (n_t - 1)! when gamma is admissible, otherwise 0."""
    gamma = gamma if isinstance(gamma, CactusDegreeVector) else CactusDegreeVector(gamma)
    profile = gamma.profile()
    if len(profile) != d or any(k == 0 for k in profile):
        return 0
    for t, k in enumerate(profile, 1):
        if any((t, i) not in gamma for i in range(1, k + 1)):
            return 0
    if any(v <= 0 for v in gamma.values()):
        return 0
    n = cactus_size(profile, d)
    if n is None or any(s != n for s in gamma.type_sums()):
        return 0
    return n ** (d - 1) * prod(factorial(k - 1) for k in profile)


def count_cacti_total(profile: Sequence[int], d: int | None = None) -> int:
    d = len(profile) if d is None else d
    n = cactus_size(profile, d)
    if n is None or any(k < 1 for k in profile):
        return 0
    return n ** (d - 1) * prod(comb(n - 1, k - 1) * factorial(k - 1) for k in profile)


# -- generation ------------------------------------------------------------------

# A shape is an unlabeled gon: a d-tuple of child-shape sequences, one per corner.


@lru_cache(maxsize=None)
def _child_shapes(d: int, via: int, m: int) -> tuple:
    """Gons of m gons in total hanging from a type-``via`` corner."""
    others = [t for t in range(1, d + 1) if t != via]
    out = []
    for split in compositions(m - 1, len(others)):
        for parts in product(*(_sequences(d, t, k) for t, k in zip(others, split))):
            corners = [()] * d
            for t, seq in zip(others, parts):
                corners[t - 1] = seq
            out.append(tuple(corners))
    return tuple(out)


@lru_cache(maxsize=None)
def _sequences(d: int, t: int, m: int) -> tuple:
    """Ordered sequences of gons glued at a type-t vertex, m gons in total."""
    if m == 0:
        return ((),)
    out = []
    for first in range(1, m + 1):
        for g in _child_shapes(d, t, first):
            for rest in _sequences(d, t, m - first):
                out.append((g,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _root_shapes(d: int, n: int) -> tuple:
    out = []
    for split in compositions(n - 1, d):
        for parts in product(*(_sequences(d, t, k) for t, k in zip(range(1, d + 1), split))):
            out.append(tuple(parts))
    return tuple(out)


def _slot_types(shape, via: int | None, out: list[int]) -> None:
    for t, seq in enumerate(shape, 1):
        if t == via:
            continue
        out.append(t)
        for h in seq:
            _slot_types(h, t, out)


def _label(shape, via, via_label, labels: dict[int, Iterator[int]]) -> Gon:
    corners = []
    for t, seq in enumerate(shape, 1):
        if t == via:
            corners.append(Corner(t, via_label))
            continue
        lab = next(labels[t])
        corners.append(Corner(t, lab, tuple(_label(h, t, lab, labels) for h in seq)))
    return Gon(tuple(corners))


def enumerate_cacti(d: int, profile: Sequence[int]) -> Iterator[Cactus]:
    """Every rooted vertex-labeled planar d-cactus with the given profile, once each."""
    profile = tuple(int(k) for k in profile)
    n = cactus_size(profile, d)
    if n is None:
        raise PreconditionError(f"(sum n_t - 1)/(d - 1) is not an integer for {profile}")
    if any(k < 1 or k > n for k in profile):
        raise PreconditionError(f"need 1 <= n_t <= n = {n}, got {profile}")
    check(d, limits().max_cactus_d, "cactus d")
    check(n, limits().max_cactus_size, "cactus size")
    for shape in _root_shapes(d, n):
        slots: list[int] = []
        _slot_types(shape, None, slots)
        if tuple(Counter(slots)[t] for t in range(1, d + 1)) != profile:
            continue
        for perms in product(*(permutations(range(1, k + 1)) for k in profile)):
            labels = {t: iter(p) for t, p in enumerate(perms, 1)}
            yield Cactus(d, _label(shape, None, None, labels))


def enumerate_cacti_of_size(d: int, n: int) -> Iterator[Cactus]:
    for profile in cactus_profiles(d, n):
        yield from enumerate_cacti(d, profile)


def cactus_profiles(d: int, n: int) -> list[tuple[int, ...]]:
    """Profiles with 1 <= n_t <= n and sum n_t = (d - 1) n + 1."""
    total = (d - 1) * n + 1
    return [p for p in product(range(1, n + 1), repeat=d) if sum(p) == total]


# -- unrooted view and the re-gluing moves --------------------------------------------


@dataclass
class CactusMap:
    d: int
    gons: list[list[Vertex]]
    rotation: dict[Vertex, list[int]]
    root: int

    @classmethod
    def of(cls, C: Cactus) -> "CactusMap":
        gons: list[list[Vertex]] = []
        rotation: dict[Vertex, list[int]] = {}

        def visit(g: Gon, via: int | None, via_vertex: Vertex | None) -> int:
            gid = len(gons)
            gons.append([])
            vs = []
            for c in g.corners:
                v = Vertex(c.type, c.label)
                vs.append(v)
                if c.type == via:
                    continue
                rotation[v] = [gid]
                for h in c.children:
                    rotation[v].append(visit(h, c.type, v))
            gons[gid] = vs
            return gid

        root = visit(C.root, None, None)
        return cls(C.d, gons, rotation, root)

    def degree(self, v: Vertex) -> int:
        return len(self.rotation[v])

    def chain(self, a: Vertex, b: Vertex) -> list[int]:
        """Gons on the path from vertex a to vertex b, in order."""
        prev: dict = {("v", a): None}
        queue = deque([("v", a)])
        while queue:
            node = queue.popleft()
            if node == ("v", b):
                break
            kind, x = node
            nbrs = [("g", g) for g in self.rotation[x]] if kind == "v" else [("v", w) for w in self.gons[x]]
            for m in nbrs:
                if m not in prev:
                    prev[m] = node
                    queue.append(m)
        path = []
        node = ("v", b)
        while node is not None:
            if node[0] == "g":
                path.append(node[1])
            node = prev[node]
        return path[::-1]

    def next_after(self, v: Vertex, g: int) -> int:
        rot = self.rotation[v]
        return rot[(rot.index(g) + 1) % len(rot)]

    def detach(self, v: Vertex, g: int) -> None:
        self.rotation[v].remove(g)

    def attach_after(self, v: Vertex, g: int, after: int) -> None:
        rot = self.rotation[v]
        rot.insert(rot.index(after) + 1, g)

    def to_cactus(self) -> Cactus:
        def build(gid: int, via: int | None) -> Gon:
            corners = []
            for v in self.gons[gid]:
                if v.type == via:
                    corners.append(Corner(v.type, v.label))
                    continue
                rot = self.rotation[v]
                k = rot.index(gid)
                order = rot[k + 1 :] + rot[:k]
                corners.append(Corner(v.type, v.label, tuple(build(h, v.type) for h in order)))
            return Gon(tuple(corners))

        return Cactus(self.d, build(self.root, None))


def _vertex(C: Cactus, M: CactusMap, t: int, i: int) -> Vertex:
    v = Vertex(t, i)
    if v not in M.rotation:
        raise PreconditionError(f"the cactus has no vertex ({t},{i})")
    return v


def cactus_phi(C: Cactus, s: int, j: int, k: int) -> Cactus:
    """Re-glue one gon from vertex (s, j) to vertex (s, k).

    With g_j and g_k the ends of the chain of gons from (s, j) to (s, k),
    the gon following g_j clockwise around (s, j) moves to the corner
    following g_k clockwise around (s, k).  ``cactus_phi(., s, k, j)`` undoes it.
    """
    M = CactusMap.of(C)
    a, b = _vertex(C, M, s, j), _vertex(C, M, s, k)
    if j == k:
        raise PreconditionError("j and k must differ")
    if M.degree(a) < 2:
        raise PreconditionError(f"vertex ({s},{j}) has degree 1")
    path = M.chain(a, b)
    gj, gk = path[0], path[-1]
    moved = M.next_after(a, gj)
    M.detach(a, moved)
    M.gons[moved][s - 1] = b
    M.attach_after(b, moved, gk)
    return M.to_cactus()


def in_psi_class(C: Cactus, s: int, r: int) -> bool:
    """Whether C has degree vector gamma*(n) and the type-r vertex on g'_s is labeled n_r."""
    try:
        _psi_setup(C, r, s)
    except PreconditionError:
        return False
    return True


def _psi_setup(C: Cactus, r: int, s: int):
    d = C.d
    if r == s or not (1 <= r <= d and 1 <= s <= d):
        raise PreconditionError(f"need two distinct types in [1, {d}], got {r}, {s}")
    profile = C.profile.counts
    n = C.size
    if cactus_degree_vector(C) != star_degree_vector(profile, d):
        raise PreconditionError("the cactus does not have the star degree vector")
    if profile[r - 1] < 2 or profile[s - 1] >= n:
        raise PreconditionError(f"need n_{r} > 1 and n_{s} < n")
    M = CactusMap.of(C)
    a, b = Vertex(r, 1), Vertex(s, 1)
    path = M.chain(a, b)
    gr, gs = path[0], path[-1]
    moved = M.next_after(b, gs)
    v = M.gons[moved][r - 1]
    if v.label != profile[r - 1]:
        raise PreconditionError(f"the type-{r} vertex of g'_{s} is not labeled n_{r} = {profile[r - 1]}")
    return M, a, b, gr, moved, v, profile


def cactus_psi(C: Cactus, r: int, s: int) -> Cactus:
    """Move g'_s from (s, 1) to (r, 1), trading a type-r vertex for a type-s one.

    g'_s follows the chain gon g_s clockwise around (s, 1).  It is re-glued
    at (r, 1) in the corner following the chain gon g_r clockwise; its
    type-r vertex (labeled n_r) merges into (r, 1) and its type-s corner
    becomes a new vertex labeled n_s + 1.  ``cactus_psi(., s, r)`` undoes it.
    """
    M, a, b, gr, moved, v, profile = _psi_setup(C, r, s)
    fresh = Vertex(s, profile[s - 1] + 1)
    M.detach(b, moved)
    M.gons[moved][s - 1] = fresh
    M.rotation[fresh] = [moved]
    del M.rotation[v]
    M.gons[moved][r - 1] = a
    M.attach_after(a, moved, gr)
    return M.to_cactus()


def shifted_degrees(gamma: CactusDegreeVector, s: int, j: int, k: int) -> CactusDegreeVector:
    g = dict(gamma.items())
    g[(s, j)] -= 1
    g[(s, k)] += 1
    return CactusDegreeVector(g)
