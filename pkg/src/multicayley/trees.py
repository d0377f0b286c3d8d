"""Multitype Cayley trees and forests, and the statistics they are counted by.

Types and labels are 1-based throughout, as in the JSON wire format.  A
vertex is a ``Vertex(type, label)`` pair; trees are stored as a parent map
with edges oriented toward the root.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple


class TreeError(ValueError):
    """A tree, forest or profile violates a structural invariant."""


class Vertex(NamedTuple):
    type: int
    label: int


@dataclass(frozen=True)
class Profile:
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if not counts:
            raise TreeError("a profile needs at least one type")
        if any(c < 1 for c in counts):
            raise TreeError(f"profile entries must be positive, got {counts}")

    @classmethod
    def of(cls, *counts: int) -> "Profile":
        return cls(tuple(counts))

    @property
    def d(self) -> int:
        return len(self.counts)

    def __getitem__(self, t: int) -> int:
        """Number of vertices of type ``t`` (1-based)."""
        return self.counts[t - 1]

    @property
    def size(self) -> int:
        return sum(self.counts)

    def types(self) -> range:
        return range(1, self.d + 1)

    def vertices(self) -> list[Vertex]:
        return [Vertex(t, i) for t in self.types() for i in range(1, self[t] + 1)]

    def __contains__(self, v) -> bool:
        t, i = v
        return 1 <= t <= self.d and 1 <= i <= self[t]


def _first_violation(profile: Profile, roots: Iterable[Vertex], parent: Mapping) -> str | None:
    roots = list(roots)
    for v in list(roots) + list(parent) + list(parent.values()):
        if v not in profile:
            return f"vertex {tuple(v)} is outside the profile {profile.counts}"
    for r in roots:
        if r in parent:
            return f"root {tuple(r)} has a parent"
    expected = set(profile.vertices()) - set(roots)
    if set(parent) != expected:
        missing = sorted(expected - set(parent))
        if missing:
            return f"vertex {tuple(missing[0])} has no parent and is not a root"
        return "parent map has keys outside the vertex set"
    rootset = set(roots)
    settled: set = set(roots)
    for v in parent:
        path = []
        seen = set()
        w = v
        while w not in settled:
            if w in seen:
                return f"parent map has a cycle through {tuple(w)}"
            seen.add(w)
            path.append(w)
            w = parent.get(w)
            if w is None:
                return "parent map does not reach a root"
        settled.update(path)
    if not rootset:
        return "no root"
    return None


class RootedMultitypeTree:
    """A rooted multitype Cayley tree of a given profile."""

    __slots__ = ("profile", "root", "parent", "_key")

    def __init__(self, profile: Profile, root, parent: Mapping, validate: bool = True):
        self.profile = profile
        self.root = Vertex(*root)
        self.parent = {Vertex(*c): Vertex(*p) for c, p in parent.items()}
        self._key = None
        if validate:
            report = validate_tree(self)
            if report is not None:
                raise TreeError(report)

    @property
    def d(self) -> int:
        return self.profile.d

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.profile.counts, self.root, tuple(sorted(self.parent.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, RootedMultitypeTree) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        edges = ", ".join(f"{tuple(c)}->{tuple(p)}" for c, p in sorted(self.parent.items()))
        return f"Tree(profile={self.profile.counts}, root={tuple(self.root)}, {edges})"

    def children(self) -> dict[Vertex, list[Vertex]]:
        out: dict[Vertex, list[Vertex]] = {v: [] for v in self.profile.vertices()}
        for c, p in sorted(self.parent.items()):
            out[p].append(c)
        return out

    def ancestors(self, v: Vertex) -> Iterator[Vertex]:
        """``v`` itself, then its parent, and so on up to the root."""
        while True:
            yield v
            if v == self.root:
                return
            v = self.parent[v]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "profile": list(self.profile.counts),
            "root": list(self.root),
            "parents": [[list(c), list(p)] for c, p in sorted(self.parent.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RootedMultitypeTree":
        profile = Profile(tuple(data["profile"]))
        if "d" in data and int(data["d"]) != profile.d:
            raise TreeError("field d disagrees with the profile length")
        parent = {tuple(c): tuple(p) for c, p in data["parents"]}
        return cls(profile, tuple(data["root"]), parent)


class RootedForest:
    """A rooted multitype forest: every component has one root."""

    __slots__ = ("profile", "roots", "parent")

    def __init__(self, profile: Profile, roots: Iterable, parent: Mapping, validate: bool = True):
        self.profile = profile
        self.roots = frozenset(Vertex(*r) for r in roots)
        self.parent = {Vertex(*c): Vertex(*p) for c, p in parent.items()}
        if validate:
            if not self.roots:
                raise TreeError("a forest needs at least one root")
            report = _first_violation(profile, self.roots, self.parent)
            if report is not None:
                raise TreeError(report)

    @property
    def d(self) -> int:
        return self.profile.d

    def key(self) -> tuple:
        return (self.profile.counts, tuple(sorted(self.roots)), tuple(sorted(self.parent.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, RootedForest) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def root_counts(self) -> tuple[int, ...]:
        c = Counter(r.type for r in self.roots)
        return tuple(c[s] for s in self.profile.types())

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "profile": list(self.profile.counts),
            "roots": [list(r) for r in sorted(self.roots)],
            "parents": [[list(c), list(p)] for c, p in sorted(self.parent.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RootedForest":
        profile = Profile(tuple(data["profile"]))
        return cls(profile, [tuple(r) for r in data["roots"]],
                   {tuple(c): tuple(p) for c, p in data["parents"]})


def validate_tree(T: RootedMultitypeTree) -> str | None:
    """Return ``None`` for a valid tree, else a description of the first problem."""
    return _first_violation(T.profile, [T.root], T.parent)


class _Counts(Mapping):
    """Sparse non-negative integer table; absent keys read as zero."""

    __slots__ = ("_data", "_hash")

    def __init__(self, data: Mapping | Iterable = ()):
        items = data.items() if isinstance(data, Mapping) else data
        clean = {}
        for k, v in items:
            if v < 0:
                raise ValueError(f"negative count {v} at {k}")
            if v:
                clean[self._norm_key(k)] = clean.get(self._norm_key(k), 0) + int(v)
        self._data = clean
        self._hash = None

    @staticmethod
    def _norm_key(k):
        return tuple(k)

    def __getitem__(self, k) -> int:
        return self._data.get(self._norm_key(k), 0)

    def __iter__(self):
        return iter(sorted(self._data))

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, k) -> bool:
        return self._norm_key(k) in self._data

    def __eq__(self, other) -> bool:
        if isinstance(other, _Counts):
            return type(self) is type(other) and self._data == other._data
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._data.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(sorted(self._data.items()))})"


class IndegreeVector(_Counts):
    """gamma[(s, t, i)]: number of type-s children of vertex (t, i)."""

    def marginals(self) -> "EdgeTypeMatrix":
        m: Counter = Counter()
        for (s, t, _i), k in self._data.items():
            m[(s, t)] += k
        return EdgeTypeMatrix(m)

    def consistent(self, profile: Profile, root_type: int) -> bool:
        """Whether n_s = [s == root] + sum_{t,i} gamma[s,t,i] for every type s."""
        for (s, t, i) in self._data:
            if not (1 <= s <= profile.d and (t, i) in profile):
                return False
        return self.marginals().compatible(profile, root_type)


class EdgeTypeMatrix(_Counts):
    """m[(s, t)]: number of edges from a type-s child to a type-t parent."""

    def compatible(self, profile: Profile, root_type: int) -> bool:
        d = profile.d
        if any(not (1 <= s <= d and 1 <= t <= d) for s, t in self._data):
            return False
        return all(
            profile[s] == (s == root_type) + sum(self[(s, t)] for t in profile.types())
            for s in profile.types()
        )


class DegreeClassCounts(_Counts):
    """N[(t, c)]: number of type-t vertices whose indegree type is c."""

    @staticmethod
    def _norm_key(k):
        t, c = k
        return (t, tuple(c))


class CompleteTypeCounts(_Counts):
    """N[(t, u, c)]: type-t vertices with parent type u (d+1 at the root) and indegree type c."""

    @staticmethod
    def _norm_key(k):
        t, u, c = k
        return (t, u, tuple(c))


def indegree_vector(T: RootedMultitypeTree) -> IndegreeVector:
    g: Counter = Counter()
    for c, p in T.parent.items():
        g[(c.type, p.type, p.label)] += 1
    return IndegreeVector(g)


def edge_type_counts(T: RootedMultitypeTree) -> EdgeTypeMatrix:
    m: Counter = Counter()
    for c, p in T.parent.items():
        m[(c.type, p.type)] += 1
    return EdgeTypeMatrix(m)


def indegree_types(T: RootedMultitypeTree) -> dict[Vertex, tuple[int, ...]]:
    d = T.d
    table = {v: [0] * d for v in T.profile.vertices()}
    for c, p in T.parent.items():
        table[p][c.type - 1] += 1
    return {v: tuple(c) for v, c in table.items()}


def degree_class_counts(T: RootedMultitypeTree) -> DegreeClassCounts:
    return DegreeClassCounts(Counter((v.type, c) for v, c in indegree_types(T).items()))


def complete_type_counts(T: RootedMultitypeTree) -> CompleteTypeCounts:
    top = T.d + 1
    out: Counter = Counter()
    for v, c in indegree_types(T).items():
        u = top if v == T.root else T.parent[v].type
        out[(v.type, u, c)] += 1
    return CompleteTypeCounts(out)


def is_injective(T: RootedMultitypeTree) -> bool:
    """Every vertex has at most one child of each type."""
    return max(indegree_vector(T).values(), default=0) <= 1


def is_star(T: RootedMultitypeTree) -> bool:
    """Every vertex whose label is not 1 is a leaf."""
    return all(p.label == 1 for p in T.parent.values())


def edge_type_set(T: RootedMultitypeTree) -> frozenset[tuple[int, int]]:
    return frozenset((c.type, p.type) for c, p in T.parent.items())
