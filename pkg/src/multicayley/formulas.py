"""Closed-form counts and generating functions for multitype Cayley trees.

Counting functions follow a vanishing convention: a statistic that no tree
can have (incompatible marginals, wrong totals) gives 0 rather than an
error.  Only inputs that make no structural sense raise.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

from .algebra import Polynomial, Rational, Var, matrix_determinant, total, x, z
from .enumeration import enumerate_skeletons, skeleton_sum
from .limits import PreconditionError, SizeError, check, limits
from .trees import (
    CompleteTypeCounts,
    DegreeClassCounts,
    EdgeTypeMatrix,
    IndegreeVector,
    Profile,
    TreeError,
)


def multinomial(parts: Sequence[int]) -> int:
    out, running = 1, 0
    for k in parts:
        if k < 0:
            return 0
        running += k
        out *= comb(running, k)
    return out


def _integral(value: Rational, what: str) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to the non-integer {value}")
    return value.numerator


def _check_root(profile: Profile, root_type: int) -> None:
    if not 1 <= root_type <= profile.d:
        raise TreeError(f"root type {root_type} outside [1, {profile.d}]")


# -- generating functions ----------------------------------------------------


def _row_sum(profile: Profile, s: int, t: int) -> Polynomial:
    return Polynomial.linear({x(s, t, i): 1 for i in range(1, profile[t] + 1)})


def _child_sum(profile: Profile, s: int) -> Polynomial:
    """sum over all vertices (t, i) of x_{s,t,i}."""
    return Polynomial.linear({x(s, v.type, v.label): 1 for v in profile.vertices()})


def delta_polynomial(profile: Profile, root_type: int) -> Polynomial:
    """Skeleton sum over Cay_rho(d) of prod_{(s,t) in A} sum_i x_{s,t,i}."""
    _check_root(profile, root_type)
    parts = []
    for A in enumerate_skeletons(profile.d, root_type):
        term = Polynomial.constant(1)
        for s, t in A.parent:
            term = term * _row_sum(profile, s, t)
        parts.append(term)
    return total(parts)


def _guard_terms(profile: Profile, extra: int, factor_terms: int) -> None:
    k = profile.size + extra
    estimate = factor_terms
    for s in profile.types():
        estimate *= comb(k + profile[s] - 2, profile[s] - 1)
    if estimate > limits().max_gf_terms:
        raise SizeError(
            f"expansion would have up to {estimate} terms, above the limit {limits().max_gf_terms}"
        )


@lru_cache(maxsize=4)
def _child_power_product(profile: Profile) -> Polynomial:
    result = Polynomial.constant(1)
    for s in profile.types():
        result = result * (_child_sum(profile, s) ** (profile[s] - 1))
    return result


def gf_multitype(profile: Profile, root_type: int) -> Polynomial:
    """Indegree generating function of T_rho(profile), fully expanded."""
    check(profile.d, limits().max_gf_d, "number of types d")
    delta = delta_polynomial(profile, root_type)
    _guard_terms(profile, 0, max(len(delta), 1))
    return _child_power_product(profile) * delta


def gamma_polynomial(profile: Profile) -> Polynomial:
    """Forest skeleton sum: rooted forests B on [d], roots marked by z_s."""
    d = profile.d
    parts = []
    for A in enumerate_skeletons(d + 1, d + 1):
        term = Polynomial.constant(1)
        for s, t in A.parent:
            term = term * (Polynomial.variable(z(s)) if t == d + 1 else _row_sum(profile, s, t))
        parts.append(term)
    return total(parts)


def gf_forests(profile: Profile) -> Polynomial:
    """Generating function of rooted forests by indegree and root types."""
    check(profile.d, limits().max_gf_d, "number of types d")
    gamma = gamma_polynomial(profile)
    _guard_terms(profile, 1, max(len(gamma), 1))
    result = gamma
    for s in profile.types():
        base = _child_sum(profile, s) + Polynomial.variable(z(s))
        result = result * (base ** (profile[s] - 1))
    return result


def laplacian(profile: Profile, forest: bool = False) -> list[list[Polynomial]]:
    """The d x d matrix whose rho-minor (or, with z_s on the diagonal, determinant) gives the skeleton sum."""
    d = profile.d
    L = [[Polynomial() for _ in range(d)] for _ in range(d)]
    for s in profile.types():
        diag = Polynomial.variable(z(s)) if forest else Polynomial()
        for t in profile.types():
            if t != s:
                L[s - 1][t - 1] = -_row_sum(profile, s, t)
                diag = diag + _row_sum(profile, s, t)
        L[s - 1][s - 1] = diag
    return L


def laplacian_minor(profile: Profile, root_type: int) -> Polynomial:
    _check_root(profile, root_type)
    L = laplacian(profile)
    keep = [k for k in range(profile.d) if k != root_type - 1]
    return matrix_determinant([[L[a][b] for b in keep] for a in keep])


def delta_via_determinant(
    profile: Profile, root_type: int, substitution: Mapping[Var, Rational]
) -> Rational:
    """Skeleton sum at a numeric point, computed as a Laplacian minor."""
    _check_root(profile, root_type)
    check(profile.d, limits().max_determinant, "number of types d")

    def weight(s: int, t: int) -> Rational:
        return sum(Fraction(substitution[x(s, t, i)]) for i in range(1, profile[t] + 1))

    d = profile.d
    L = [[Fraction(0)] * d for _ in range(d)]
    for s in profile.types():
        for t in profile.types():
            if t != s:
                w = weight(s, t)
                L[s - 1][t - 1] = -w
                L[s - 1][s - 1] += w
    keep = [k for k in range(d) if k != root_type - 1]
    M = [[Polynomial.constant(L[a][b]) for b in keep] for a in keep]
    return matrix_determinant(M).constant_term()


def delta_explicit(profile: Profile, root_type: int, substitution: Mapping[Var, Rational]) -> Rational:
    """Skeleton sum at a numeric point, summed over skeletons directly."""
    _check_root(profile, root_type)
    return skeleton_sum(
        profile.d,
        root_type,
        lambda s, t: sum(Fraction(substitution[x(s, t, i)]) for i in range(1, profile[t] + 1)),
    )


# -- counts by edge types and embeddings ------------------------------------


def _edge_skeleton_sum(m: Mapping, d: int, root_type: int) -> int:
    return skeleton_sum(d, root_type, lambda s, t: m[(s, t)])


def count_by_edge_types(m: EdgeTypeMatrix | Mapping, profile: Profile, root_type: int) -> int:
    """Trees in T_rho(profile) with m[s,t] edges of each type (s, t)."""
    _check_root(profile, root_type)
    m = m if isinstance(m, EdgeTypeMatrix) else EdgeTypeMatrix(m)
    if not m.compatible(profile, root_type):
        return 0
    d = profile.d
    pairs = [(s, t) for s in profile.types() for t in profile.types()]
    value = Fraction(
        prod(profile[t] ** m[(s, t)] for s, t in pairs) * prod(factorial(profile[s] - 1) for s in profile.types()),
        prod(factorial(m[(s, t)]) for s, t in pairs),
    ) * _edge_skeleton_sum(m, d, root_type)
    return _integral(value, "edge-type count")


def _as_pairs(D: Iterable) -> frozenset[tuple[int, int]]:
    return frozenset((int(s), int(t)) for s, t in D)


def count_embedded(D: Iterable, profile: Profile, root_type: int) -> int:
    """Trees in T_rho(profile) all of whose edge types lie in D."""
    _check_root(profile, root_type)
    D = _as_pairs(D)
    head = prod(
        sum(profile[t] for t in profile.types() if (s, t) in D) ** (profile[s] - 1)
        for s in profile.types()
    )
    return head * skeleton_sum(profile.d, root_type, lambda s, t: profile[t], within=D)


def count_injective_by_edge_types(m: EdgeTypeMatrix | Mapping, profile: Profile, root_type: int) -> int:
    """Injective trees (at most one child of each type per vertex) with edge-type counts m."""
    _check_root(profile, root_type)
    m = m if isinstance(m, EdgeTypeMatrix) else EdgeTypeMatrix(m)
    if not m.compatible(profile, root_type):
        return 0
    head = prod(comb(profile[t], m[(s, t)]) for s in profile.types() for t in profile.types())
    head *= prod(factorial(profile[s] - 1) for s in profile.types())
    return head * _edge_skeleton_sum(m, profile.d, root_type)


def _comb_or_zero(a: int, b: int) -> int:
    return comb(a, b) if a >= 0 and b >= 0 else 0


def count_injective_embedded(D: Iterable, profile: Profile, root_type: int) -> int:
    """Injective trees in T_rho(profile) embedded in D."""
    _check_root(profile, root_type)
    D = _as_pairs(D)
    head = 1
    for s in profile.types():
        room = (s == root_type) - 1 + sum(profile[t] for t in profile.types() if (s, t) in D)
        head *= _comb_or_zero(room, profile[s] - 1) * factorial(profile[s] - 1)
    if head == 0:
        return 0
    return head * skeleton_sum(profile.d, root_type, lambda s, t: profile[t], within=D)


def count_by_indegree_vector(gamma: IndegreeVector | Mapping, profile: Profile, root_type: int) -> int:
    """Trees with a prescribed number of type-s children at every vertex."""
    _check_root(profile, root_type)
    gamma = gamma if isinstance(gamma, IndegreeVector) else IndegreeVector(gamma)
    if not gamma.consistent(profile, root_type):
        return 0
    m = gamma.marginals()
    value = Fraction(
        prod(factorial(profile[t] - 1) for t in profile.types()),
        prod(factorial(k) for k in gamma.values()),
    ) * _edge_skeleton_sum(m, profile.d, root_type)
    return _integral(value, "indegree-vector count")


def _class_dimension(keys, position: int) -> int:
    dims = {len(k[position]) for k in keys}
    if len(dims) != 1:
        raise TreeError("indegree types must all have the same length d")
    return dims.pop()


def count_by_degree_classes(N: DegreeClassCounts | Mapping, root_type: int, d: int | None = None) -> int:
    """Trees with N[t, c] vertices of type t and indegree type c."""
    N = N if isinstance(N, DegreeClassCounts) else DegreeClassCounts(N)
    if not N:
        return 0
    d = d if d is not None else _class_dimension(list(N), 1)
    n = Counter()
    m = Counter()
    for (t, c), k in N.items():
        if not 1 <= t <= d or len(c) != d:
            raise TreeError(f"degree class {(t, c)} does not fit d = {d}")
        n[t] += k
        for s in range(1, d + 1):
            m[(s, t)] += c[s - 1] * k
    if any(n[t] == 0 for t in range(1, d + 1)):
        raise TreeError("every type needs at least one vertex")
    profile = Profile(tuple(n[t] for t in range(1, d + 1)))
    _check_root(profile, root_type)
    if not EdgeTypeMatrix(m).compatible(profile, root_type):
        return 0
    num = prod(factorial(n[t]) * factorial(n[t] - 1) for t in profile.types())
    den = 1
    for (t, c), k in N.items():
        den *= factorial(k) * prod(factorial(cs) for cs in c) ** k
    value = Fraction(num, den) * _edge_skeleton_sum(m, d, root_type)
    return _integral(value, "degree-class count")


# -- complete degree types ----------------------------------------------------


class _CompleteAggregates:
    def __init__(self, N: CompleteTypeCounts, d: int):
        self.d = d
        self.m2: Counter = Counter()  # m[t, u]
        self.m3: Counter = Counter()  # m[s, t, u]
        self.n: Counter = Counter()
        for (t, u, c), k in N.items():
            if not (1 <= t <= d and 1 <= u <= d + 1 and len(c) == d):
                raise TreeError(f"complete type {(t, u, c)} does not fit d = {d}")
            self.m2[(t, u)] += k
            self.n[t] += k
            for s in range(1, d + 1):
                self.m3[(s, t, u)] += c[s - 1] * k
        if any(self.n[t] == 0 for t in range(1, d + 1)):
            raise TreeError("every type needs at least one vertex")

    def admissible(self, root_type: int) -> bool:
        d = self.d
        if any(self.m2[(s, d + 1)] != (s == root_type) for s in range(1, d + 1)):
            return False
        return all(
            self.m2[(s, t)] == sum(self.m3[(s, t, u)] for u in range(1, d + 2))
            for s in range(1, d + 1)
            for t in range(1, d + 1)
        )

    def prefactor(self, N: CompleteTypeCounts) -> Fraction:
        d = self.d
        num = prod(factorial(self.n[t]) for t in range(1, d + 1))
        for s in range(1, d + 1):
            for t in range(1, d + 1):
                if self.m2[(s, t)] > 0:
                    num *= factorial(self.m2[(s, t)] - 1)
        den = 1
        for (t, u, c), k in N.items():
            if u <= d:
                den *= factorial(k)
            den *= prod(factorial(cs) for cs in c) ** k
        return Fraction(num, den)


def arborescence_sum(N: CompleteTypeCounts | Mapping, root_type: int, d: int | None = None) -> int:
    """Weighted spanning arborescences of G(N) toward (rho, d + 1), by explicit enumeration."""
    N = N if isinstance(N, CompleteTypeCounts) else CompleteTypeCounts(N)
    d = d if d is not None else _class_dimension(list(N), 2)
    agg = _CompleteAggregates(N, d)
    return _arborescence_sum(agg, root_type)


def _arborescence_sum(agg: _CompleteAggregates, root_type: int) -> int:
    d = agg.d
    V = sorted(k for k, v in agg.m2.items() if v > 0)
    root = (root_type, d + 1)
    others = [v for v in V if v != root]
    Vset = set(V)
    options = []
    for (s, t) in others:
        opts = []
        for (a, u) in V:
            if a != t or (s == t == u):
                continue
            w = agg.m3[(s, t, u)]
            if w:
                opts.append(((t, u), w))
        if not opts:
            return 0
        options.append(opts)
    total_weight = 0
    for choice in product(*options):
        succ = {v: c[0] for v, c in zip(others, choice)}
        if _reaches_root(succ, root, Vset):
            total_weight += prod(c[1] for c in choice)
    return total_weight


def _reaches_root(succ: dict, root, V) -> bool:
    good = {root}
    for v in succ:
        path = []
        w = v
        while w not in good:
            if w in path:
                return False
            path.append(w)
            w = succ[w]
        good.update(path)
    return True


def count_by_complete_types(N: CompleteTypeCounts | Mapping, root_type: int, d: int | None = None) -> int:
    """Trees with N[t, u, c] vertices of type t, parent type u and indegree type c."""
    N = N if isinstance(N, CompleteTypeCounts) else CompleteTypeCounts(N)
    if not N:
        return 0
    d = d if d is not None else _class_dimension(list(N), 2)
    if not 1 <= root_type <= d:
        raise TreeError(f"root type {root_type} outside [1, {d}]")
    agg = _CompleteAggregates(N, d)
    if not agg.admissible(root_type):
        return 0
    value = agg.prefactor(N) * _arborescence_sum(agg, root_type)
    return _integral(value, "complete-type count")


def count_complete_special(N: CompleteTypeCounts | Mapping, d: int | None = None) -> int:
    """Complete-type count in the regime rho = d, all parent types at most one above the child type."""
    N = N if isinstance(N, CompleteTypeCounts) else CompleteTypeCounts(N)
    if not N:
        return 0
    d = d if d is not None else _class_dimension(list(N), 2)
    agg = _CompleteAggregates(N, d)
    bad = sorted((s, t) for (s, t), k in agg.m2.items() if k > 0 and t > s + 1)
    if bad:
        raise PreconditionError(f"pairs {bad} violate the support condition t <= s + 1")
    if not agg.admissible(d):
        return 0
    m2, m3 = agg.m2, agg.m3

    def mu(s: int) -> int:
        return m2[(s, s)] - m3[(s, s, s)] if m2[(s, s)] > 0 else 1

    factor = prod(m2[(s, t)] for s in range(1, d + 1) for t in range(1, s) if m2[(s, t)] > 0)
    factor *= mu(1)
    for s in range(2, d + 1):
        factor *= m3[(s - 1, s, s + 1)] * mu(s) + m3[(s - 1, s, s)] * m3[(s, s, s + 1)]
    return _integral(agg.prefactor(N) * factor, "special complete-type count")


def claim_spanning(A: Iterable[tuple[tuple[int, int], tuple[int, int]]], d: int) -> tuple[bool, bool]:
    """(is a spanning tree toward (d, d+1), satisfies the chain characterisation).

    ``A`` picks one out-edge ((s, t), (t, u)) for each (s, t) in [d]^2 with
    t <= s + 1, never a loop.  Both booleans agree whenever the
    characterisation applies.
    """
    succ = {}
    for a, b in A:
        succ[a] = b
    V = {(s, t) for s in range(1, d + 1) for t in range(1, d + 2) if t <= s + 1}
    root = (d, d + 1)
    spanning = set(succ) == V - {root} and _reaches_root(succ, root, V)
    edges = {(a[0], a[1], b[1]) for a, b in succ.items()}
    chain = all(
        (s - 1, s, s + 1) in edges or ((s - 1, s, s) in edges and (s, s, s + 1) in edges)
        for s in range(2, d + 1)
    )
    return spanning, chain


# -- unitype and plane trees --------------------------------------------------


def count_unitype_degree(gamma: Sequence[int]) -> int:
    """Unrooted Cayley trees on [n] where vertex i has degree gamma[i]."""
    gamma = list(gamma)
    n = len(gamma)
    if n == 1:
        return 1 if gamma == [0] else 0
    if any(g < 1 for g in gamma):
        raise PreconditionError("every degree of a tree on two or more vertices is positive")
    if sum(gamma) != 2 * n - 2:
        return 0
    return multinomial([g - 1 for g in gamma])


def count_plane_trees(N: Sequence[int]) -> int:
    """Unlabeled rooted plane trees with N[i] vertices having i children."""
    N = list(N)
    if any(k < 0 for k in N):
        raise PreconditionError("vertex counts must be non-negative")
    n = sum(N)
    if n == 0 or n != 1 + sum(i * k for i, k in enumerate(N)):
        return 0
    return _integral(Fraction(multinomial(N), n), "plane-tree count")


def contributing_skeletons(D: Iterable, d: int, root_type: int) -> list:
    """Skeletons of Cay_rho(d) whose edges all lie in D."""
    D = _as_pairs(D)
    return [A for A in enumerate_skeletons(d, root_type) if all(e in D for e in A.parent)]


def single_skeleton_support(D: Iterable, d: int, root_type: int) -> bool:
    """Whether exactly one skeleton contributes, so the skeleton sum is a single product."""
    return len(contributing_skeletons(D, d, root_type)) == 1
