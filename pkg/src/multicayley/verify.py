"""Oracle suites: closed forms and bijections checked against exhaustive enumeration.

Each suite returns a :class:`VerificationReport`.  Scale parameters bound the
instances swept; every suite is deterministic (the determinant suite draws
its substitutions from a seeded generator).
"""

from __future__ import annotations

import random
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, combinations, product
from math import factorial
from typing import Callable, Iterator

import numpy as np

from . import bijections as bij
from . import cacti, formulas, lagrange
from .algebra import Monomial, Polynomial, PowerSeries, x, xv, z
from .enumeration import (
    _cached_unrooted,
    _unrooted_parent_arrays,
    child_table,
    compositions,
    enumerate_forests,
    enumerate_plane_trees,
    enumerate_skeletons,
    indegree_census,
    plane_tree_degrees,
    rooted_batch,
    row_histogram,
)
from .trees import (
    CompleteTypeCounts,
    DegreeClassCounts,
    EdgeTypeMatrix,
    IndegreeVector,
    Profile,
    RootedMultitypeTree,
    Vertex,
)

MAX_STORED_FAILURES = 50


@dataclass
class VerificationReport:
    suite: str
    cases: int = 0
    failure_count: int = 0
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def check(self, what, expected, actual) -> bool:
        self.cases += 1
        if expected == actual:
            return True
        self.failure_count += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append({"input": _jsonable(what), "expected": _jsonable(expected), "actual": _jsonable(actual)})
        return False

    def merge(self, other: "VerificationReport") -> None:
        self.cases += other.cases
        self.failure_count += other.failure_count
        room = MAX_STORED_FAILURES - len(self.failures)
        self.failures.extend(other.failures[:room])

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "cases": self.cases,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "wall_time": round(self.wall_time, 3),
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(w) for k, w in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(w) for w in v]
    return repr(v)


def _timed(name: str, body: Callable[[VerificationReport], None]) -> VerificationReport:
    report = VerificationReport(name)
    start = time.perf_counter()
    body(report)
    report.wall_time = time.perf_counter() - start
    return report


def profiles(max_vertices: int, max_d: int, min_d: int = 1) -> Iterator[Profile]:
    """Positive profiles with d in [min_d, max_d] and at most max_vertices vertices, in a fixed order."""
    for d in range(min_d, max_d + 1):
        for total in range(d, max_vertices + 1):
            for p in compositions(total - d, d):
                yield Profile(tuple(k + 1 for k in p))


# -- unitype baseline --------------------------------------------------------------


def suite_unitype(max_vertices: int = 7) -> VerificationReport:
    def body(r: VerificationReport):
        for n in range(1, max_vertices + 1):
            degrees: Counter = Counter()
            total = 0
            for par in _unrooted_parent_arrays(n):
                total += 1
                deg = [0] * n
                for v, p in enumerate(par):
                    if p >= 0:
                        deg[v] += 1
                        deg[p] += 1
                degrees[tuple(deg)] += 1
            r.check({"n": n, "what": "tree count"}, n ** (n - 2) if n > 1 else 1, total)
            if n == 1:
                r.check({"n": 1, "gamma": [0]}, formulas.count_unitype_degree([0]), degrees[(0,)])
                continue
            for c in compositions(n - 2, n):
                gamma = tuple(k + 1 for k in c)
                r.check({"n": n, "gamma": gamma}, formulas.count_unitype_degree(gamma), degrees.get(gamma, 0))

    return _timed("unitype", body)


# -- generating functions -------------------------------------------------------------


def suite_gf(max_vertices: int = 8, max_d: int = 3) -> VerificationReport:
    def body(r: VerificationReport):
        for profile in profiles(max_vertices, max_d):
            for rho in profile.types():
                census = indegree_census(profile, rho)
                gf = formulas.gf_multitype(profile, rho).exponents_in(census.gens)
                same = gf == census.counts
                detail = None
                if not same:
                    diff = {k for k in set(gf) | set(census.counts) if gf.get(k) != census.counts.get(k)}
                    detail = sorted(diff)[:5]
                r.check({"profile": profile.counts, "root": rho, "differing": detail}, True, same)

    return _timed("gf", body)


def suite_determinant(max_d: int = 5, samples: int = 20, seed: int = 0) -> VerificationReport:
    def body(r: VerificationReport):
        rng = random.Random(seed)
        for d in range(2, max_d + 1):
            for k in range(samples):
                profile = Profile(tuple(rng.randint(1, 2) for _ in range(d)))
                rho = rng.randint(1, d)
                sub = {
                    x(s, v.type, v.label): rng.randint(-9, 9)
                    for s in profile.types()
                    for v in profile.vertices()
                }
                r.check(
                    {"d": d, "sample": k, "profile": profile.counts, "root": rho},
                    formulas.delta_explicit(profile, rho, sub),
                    formulas.delta_via_determinant(profile, rho, sub),
                )

    return _timed("determinant", body)


def suite_forests(max_vertices: int = 6, max_d: int = 2, full_polynomial_upto: int = 5) -> VerificationReport:
    """Forest GF at all ones against the forest count; term by term on smaller profiles."""

    def body(r: VerificationReport):
        for profile in profiles(max_vertices, max_d):
            gf = formulas.gf_forests(profile)
            ones = {v: 1 for v in gf.variables()}
            if profile.size > full_polynomial_upto:
                count = sum(1 for _ in enumerate_forests(profile))
                r.check({"profile": profile.counts, "what": "forest count"}, count, gf.evaluate(ones))
                continue
            tally: Counter = Counter()
            for F in enumerate_forests(profile):
                mono: Counter = Counter()
                for c, p in F.parent.items():
                    mono[x(c.type, p.type, p.label)] += 1
                for root in F.roots:
                    mono[z(root.type)] += 1
                tally[Monomial(mono)] += 1
            r.check({"profile": profile.counts, "what": "forest count"}, sum(tally.values()), gf.evaluate(ones))
            r.check({"profile": profile.counts, "what": "forest polynomial"}, dict(tally), gf.as_dict())

    return _timed("forests", body)


# -- refined counts ------------------------------------------------------------------------


class _Census:
    """Histograms of every refined statistic over T_rho(profile)."""

    def __init__(self, profile: Profile, rho: int):
        self.profile, self.rho = profile, rho
        d, verts = profile.d, profile.vertices()
        n = len(verts)
        self.verts = verts
        P = rooted_batch(profile, rho)
        types = np.array([v.type for v in verts], dtype=np.int64)
        ptype = np.where(P >= 0, types[np.maximum(P, 0)], d + 1)
        rows = row_histogram(np.concatenate([child_table(P, profile), ptype], axis=1))
        self.gamma: Counter = Counter()
        self.m: Counter = Counter()
        self.m_inj: Counter = Counter()
        self.N6: Counter = Counter()
        self.N7: Counter = Counter()
        for row, cnt in rows.items():
            g, par = row[: d * n], row[d * n :]
            self.gamma[g] += cnt
            m = self.marginals(g)
            self.m[m] += cnt
            if max(g, default=0) <= 1:
                self.m_inj[m] += cnt
            classes = [(verts[k].type, tuple(g[(s - 1) * n + k] for s in range(1, d + 1))) for k in range(n)]
            self.N6[_freeze(Counter(classes))] += cnt
            self.N7[_freeze(Counter((t, par[k], c) for k, (t, c) in enumerate(classes)))] += cnt

    def marginals(self, g: tuple[int, ...]) -> tuple[int, ...]:
        d, n = self.profile.d, len(self.verts)
        m = [0] * (d * d)
        for s in range(1, d + 1):
            for k, v in enumerate(self.verts):
                m[(s - 1) * d + v.type - 1] += g[(s - 1) * n + k]
        return tuple(m)

    def gamma_map(self, g: tuple[int, ...]) -> dict:
        n = len(self.verts)
        return {
            (s, v.type, v.label): g[(s - 1) * n + k]
            for s in self.profile.types()
            for k, v in enumerate(self.verts)
            if g[(s - 1) * n + k]
        }

    def classes_of(self, g: tuple[int, ...]):
        d, n = self.profile.d, len(self.verts)
        return _freeze(Counter((v.type, tuple(g[(s - 1) * n + k] for s in range(1, d + 1))) for k, v in enumerate(self.verts)))


def _freeze(c: Counter) -> tuple:
    return tuple(sorted(c.items()))


def _m_map(m: tuple[int, ...], d: int) -> dict:
    return {(s, t): m[(s - 1) * d + t - 1] for s in range(1, d + 1) for t in range(1, d + 1) if m[(s - 1) * d + t - 1]}


def _tables(rows: list[tuple[object, int]], capacity: dict) -> Iterator[dict]:
    """Ways to split each row's multiplicity across columns, exhausting every column."""
    if not rows:
        if all(v == 0 for v in capacity.values()):
            yield {}
        return
    (key, k), rest = rows[0], rows[1:]
    cols = sorted(capacity)
    for split in compositions(k, len(cols)):
        if any(a > capacity[u] for a, u in zip(split, cols)):
            continue
        left = {u: capacity[u] - a for a, u in zip(split, cols)}
        for tail in _tables(rest, left):
            out = dict(tail)
            for a, u in zip(split, cols):
                if a:
                    out[(key, u)] = a
            yield out


def _complete_sweep(N6: tuple, profile: Profile, rho: int) -> Iterator[tuple]:
    """Complete-type vectors refining the degree classes N6 with consistent parent types."""
    d = profile.d
    by_type: dict[int, list] = defaultdict(list)
    for (t, c), k in N6:
        by_type[t].append((c, k))
    M = Counter()
    for (u, c), k in N6:
        for t in range(1, d + 1):
            M[(t, u)] += c[t - 1] * k
    for t in range(1, d + 1):
        M[(t, d + 1)] = int(t == rho)
    per_type = []
    for t in range(1, d + 1):
        cap = {u: M[(t, u)] for u in range(1, d + 2) if M[(t, u)]}
        if sum(cap.values()) != profile[t]:
            return
        per_type.append([{(t, u, c): a for (c, u), a in tab.items()} for tab in _tables(by_type[t], cap)])
    for combo in product(*per_type):
        merged: dict = {}
        for part in combo:
            merged.update(part)
        yield tuple(sorted(merged.items()))


def _support_ok(N7: tuple, d: int) -> bool:
    return all(u > d or u <= t + 1 for (t, u, _c), k in N7 if k)


def suite_counts(max_vertices: int = 7, max_d: int = 3) -> VerificationReport:
    """Every refined count against histograms of all trees, over full sweeps of admissible values."""

    def body(r: VerificationReport):
        for profile in profiles(max_vertices, max_d):
            d = profile.d
            pairs = [(s, t) for s in profile.types() for t in profile.types()]
            all_D = list(chain.from_iterable(combinations(pairs, k) for k in range(len(pairs) + 1)))
            for rho in profile.types():
                C = _Census(profile, rho)
                tag = {"profile": profile.counts, "root": rho}
                # edge types, plain and injective
                rows = [compositions(profile[s] - (s == rho), d) for s in profile.types()]
                for parts in product(*rows):
                    m = tuple(chain.from_iterable(parts))
                    mm = _m_map(m, d)
                    r.check({**tag, "m": mm}, C.m.get(m, 0), formulas.count_by_edge_types(mm, profile, rho))
                    r.check(
                        {**tag, "m": mm, "injective": True},
                        C.m_inj.get(m, 0),
                        formulas.count_injective_by_edge_types(mm, profile, rho),
                    )
                # embeddings, plain and injective
                for D in all_D:
                    Ds = set(D)
                    inside = lambda m: all(m[(s - 1) * d + t - 1] == 0 or (s, t) in Ds for s, t in pairs)
                    r.check({**tag, "D": D}, sum(k for m, k in C.m.items() if inside(m)), formulas.count_embedded(D, profile, rho))
                    r.check(
                        {**tag, "D": D, "injective": True},
                        sum(k for m, k in C.m_inj.items() if inside(m)),
                        formulas.count_injective_embedded(D, profile, rho),
                    )
                # indegree vectors, with the marginal identity and the degree-class sweep
                n = profile.size
                by_marginal: Counter = Counter()
                class_sweep = set(C.N6)
                g_rows = [compositions(profile[s] - (s == rho), n) for s in profile.types()]
                for parts in product(*g_rows):
                    g = tuple(chain.from_iterable(parts))
                    value = formulas.count_by_indegree_vector(C.gamma_map(g), profile, rho)
                    r.check({**tag, "gamma": C.gamma_map(g)}, C.gamma.get(g, 0), value)
                    by_marginal[C.marginals(g)] += value
                    class_sweep.add(C.classes_of(g))
                for m, total in by_marginal.items():
                    r.check({**tag, "m": _m_map(m, d), "what": "marginal sum"}, formulas.count_by_edge_types(_m_map(m, d), profile, rho), total)
                complete_sweep = set()
                for N6 in sorted(class_sweep):
                    r.check({**tag, "N": N6}, C.N6.get(N6, 0), formulas.count_by_degree_classes(dict(N6), rho, d))
                    complete_sweep.update(_complete_sweep(N6, profile, rho))
                missing = sorted(set(C.N7) - complete_sweep)
                r.check({**tag, "what": "realised complete types inside the sweep"}, [], missing[:3])
                for N7 in sorted(complete_sweep):
                    value = formulas.count_by_complete_types(dict(N7), rho, d)
                    r.check({**tag, "N": N7}, C.N7.get(N7, 0), value)
                    if rho == d and _support_ok(N7, d):
                        r.check({**tag, "N": N7, "special": True}, value, formulas.count_complete_special(dict(N7), d))

    return _timed("counts", body)


# -- bijections ---------------------------------------------------------------------------


def _encode(table: np.ndarray, radix: int) -> np.ndarray:
    width = table.shape[1]
    if radix ** width >= 2**63:
        raise OverflowError("row encoding would overflow 64 bits")
    weights = np.array([radix**k for k in range(width)], dtype=np.int64)
    return table.astype(np.int64) @ weights


def _histogram_identity(r, tag, keys: np.ndarray, radix: int, moves) -> None:
    """Check a * H[key] == (b + 1) * H[key'] for every realised key and move (ca, cb).

    Here a, b are the digits of key at positions ca, cb and key' moves one
    unit from ca to cb.  ``moves`` yields (label, ca, cb, offset) where the
    identity is a - offset versus b + 1 - offset.
    """
    uniq, counts = np.unique(keys, return_counts=True)
    for label, ca, cb, offset in moves:
        a = (uniq // radix**ca) % radix
        b = (uniq // radix**cb) % radix
        live = a >= 1
        shifted = uniq[live] - radix**ca + radix**cb
        pos = np.searchsorted(uniq, shifted)
        pos_c = np.minimum(pos, len(uniq) - 1)
        found = (pos < len(uniq)) & (uniq[pos_c] == shifted)
        target = np.where(found, counts[pos_c], 0)
        lhs = (a[live] - offset) * counts[live]
        rhs = (b[live] + 1 - offset) * target
        bad = np.flatnonzero(lhs != rhs)
        r.check({**tag, "move": label, "what": "cardinality identity"}, 0, int(bad.size))


def _valid_trees(P: np.ndarray) -> np.ndarray:
    m, n = P.shape
    rows = np.arange(m)
    cur = np.tile(np.arange(n), (m, 1))
    for _ in range(n):
        cur = np.where(cur >= 0, P[rows[:, None], np.maximum(cur, 0)], -1)
    return (cur == -1).all(axis=1) & ((P == -1).sum(axis=1) == 1)


def _unrooted_degrees(P: np.ndarray) -> np.ndarray:
    return np.stack([(P == v).sum(axis=1) + (P[:, v] >= 0) for v in range(P.shape[1])], axis=1)


def _unitype_bijection(r: VerificationReport, n: int, object_upto: int) -> None:
    U = _cached_unrooted(n).astype(np.int64)
    deg = _unrooted_degrees(U)
    tag = {"d": 1, "n": n}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for w in range(n):
                if w in (i, j):
                    continue
                img, ok = bij.unitype_move_batch(U, i, w, j)
                if not ok.any():
                    continue
                img = img[ok]
                back, ok2 = bij.unitype_move_batch(img, j, w, i)
                r.check({**tag, "i": i + 1, "j": j + 1, "w": w + 1, "what": "round trip"}, True, bool(ok2.all() and (back == U[ok]).all()))
                img_deg = _unrooted_degrees(img)
                expect = deg[ok].copy()
                expect[:, i] -= 1
                expect[:, j] += 1
                r.check({**tag, "i": i + 1, "j": j + 1, "w": w + 1, "what": "degree shift"}, True, bool((img_deg == expect).all()))
                if n <= object_upto:
                    _unitype_against_objects(r, U[ok], img, i, w, j)
    keys = _encode(deg, n)
    moves = [((i + 1, j + 1), i, j, 1) for i in range(n) for j in range(n) if i != j]
    _histogram_identity(r, tag, keys, n, moves)


def _unitype_against_objects(r, src: np.ndarray, img: np.ndarray, i: int, w: int, j: int) -> None:
    n = src.shape[1]
    profile = Profile((n,))
    for a, b in zip(src.tolist(), img.tolist()):
        T = RootedMultitypeTree(profile, Vertex(1, n), {Vertex(1, k + 1): Vertex(1, p + 1) for k, p in enumerate(a) if p >= 0})
        vi, vw = Vertex(1, i + 1), Vertex(1, w + 1)
        edge = (vw, vi) if T.parent.get(vw) == vi else (vi, vw)
        out = bij.phi_unitype(bij.MarkedTree(T, edge), i + 1, j + 1).tree
        want = {Vertex(1, k + 1): Vertex(1, p + 1) for k, p in enumerate(b) if p >= 0}
        r.check({"d": 1, "tree": a, "i": i + 1, "j": j + 1, "w": w + 1, "what": "object agrees with batch"}, want, out.parent)


def _multitype_bijection(r: VerificationReport, profile: Profile, rho: int, object_upto: int) -> None:
    verts = profile.vertices()
    n, d = len(verts), profile.d
    P = rooted_batch(profile, rho)
    ch = child_table(P, profile)
    tag = {"profile": profile.counts, "root": rho}
    types = np.array([v.type for v in verts])
    moves = []
    for s in profile.types():
        for a in range(n):
            for b in range(n):
                if a == b or verts[a].type != verts[b].type:
                    continue
                moves.append((((s,) + tuple(verts[a]) + (verts[b].label,)), (s - 1) * n + a, (s - 1) * n + b, 0))
                for w in range(n):
                    if verts[w].type != s:
                        continue
                    rows = P[:, w] == a
                    if not rows.any():
                        continue
                    src = P[rows]
                    img, w2, _tilde = bij.classify_and_apply_batch(src, w, a, b)
                    label = {"s": s, "t": verts[a].type, "i": verts[a].label, "j": verts[b].label, "w": list(verts[w])}
                    ok = _valid_trees(img) & (types[np.argmax(img == -1, axis=1)] == rho) & (img[:, w2] == b)
                    r.check({**tag, **label, "what": "image is a marked tree"}, True, bool(ok.all()))
                    shift = child_table(img, profile) - ch[rows]
                    want = np.zeros(d * n, dtype=shift.dtype)
                    want[(s - 1) * n + a] -= 1
                    want[(s - 1) * n + b] += 1
                    r.check({**tag, **label, "what": "indegree shift"}, True, bool((shift == want).all()))
                    back, w3, _ = bij.classify_and_apply_batch(img, w2, b, a)
                    r.check({**tag, **label, "what": "round trip"}, True, bool(w3 == w and (back == src).all()))
                    if profile.size <= object_upto:
                        _multitype_against_objects(r, profile, src, img, w, w2, a, b, s)
    _histogram_identity(r, tag, _encode(ch, n), n, moves)


def _multitype_against_objects(r, profile, src, img, w, w2, a, b, s) -> None:
    verts = profile.vertices()
    for row, out in zip(src.tolist(), img.tolist()):
        parent = {verts[k]: verts[p] for k, p in enumerate(row) if p >= 0}
        root = verts[row.index(-1)]
        T = RootedMultitypeTree(profile, root, parent)
        M = bij.MarkedTree(T, (verts[w], verts[a]))
        image = bij.classify_and_apply(M, s, verts[a].type, verts[a].label, verts[b].label)
        want_parent = {verts[k]: verts[p] for k, p in enumerate(out) if p >= 0}
        got = (image.tree.parent, image.marked_edge)
        r.check({"profile": profile.counts, "tree": row, "what": "object agrees with batch"}, (want_parent, (verts[w2], verts[b])), got)


def suite_bijections(max_vertices: int = 7, max_d: int = 3, object_upto: int = 4) -> VerificationReport:
    def body(r: VerificationReport):
        for n in range(2, max_vertices + 1):
            _unitype_bijection(r, n, object_upto + 1)
        for profile in profiles(max_vertices, max_d):
            for rho in profile.types():
                _multitype_bijection(r, profile, rho, object_upto)

    return _timed("bijections", body)


# -- Lagrange inversion ------------------------------------------------------------------------


def _series(d: int, order: int, coeffs: dict) -> PowerSeries:
    body = Polynomial({Monomial({xv(s): e for s, e in enumerate(exps, 1) if e}): c for exps, c in coeffs.items()})
    return PowerSeries(body, order)


def lagrange_battery(order: int = 8) -> list[tuple[str, lagrange.FunctionalSystem]]:
    """A fixed list of systems with d = 1, 2, 3 used for the three-way check."""
    out = []
    out.append(("geometric d=1", lagrange.geometric_system(1, order)))
    out.append(("constant d=1", lagrange.FunctionalSystem((_series(1, order, {(0,): 1}),) * 2, 1)))
    motz = _series(1, order, {(0,): 1, (1,): 1, (2,): 1})
    out.append(("1+y+y^2 d=1", lagrange.FunctionalSystem((motz, _series(1, order, {(0,): 2, (1,): -3, (3,): Fraction(1, 2)})), 1)))
    out.append(("geometric d=2", lagrange.geometric_system(2, order)))
    out.append(
        (
            "sparse d=2",
            lagrange.FunctionalSystem(
                (
                    _series(2, order, {(0, 0): 1, (0, 1): 1}),
                    _series(2, order, {(0, 0): 1}),
                    _series(2, order, {(1, 0): 1}),
                ),
                2,
            ),
        )
    )
    out.append(
        (
            "mixed d=2",
            lagrange.FunctionalSystem(
                (
                    _series(2, order, {(0, 0): 2, (1, 1): -1, (0, 2): 3}),
                    _series(2, order, {(0, 0): 1, (1, 0): 1, (2, 0): Fraction(1, 3)}),
                    _series(2, order, {(0, 0): 1, (1, 0): 1, (0, 1): 2}),
                ),
                2,
            ),
        )
    )
    out.append(("geometric d=3", lagrange.geometric_system(3, order)))
    out.append(
        (
            "sparse d=3",
            lagrange.FunctionalSystem(
                (
                    _series(3, order, {(0, 0, 0): 1, (0, 1, 0): 1, (0, 0, 2): 1}),
                    _series(3, order, {(0, 0, 0): 2, (1, 0, 0): -1, (0, 0, 1): 1}),
                    _series(3, order, {(0, 0, 0): 1, (1, 1, 0): 1}),
                    _series(3, order, {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}),
                ),
                3,
            ),
        )
    )
    return out


def suite_lagrange(max_degree: int = 6, max_d: int = 3) -> VerificationReport:
    def body(r: VerificationReport):
        order = max_degree + 2
        catalan = lagrange.solve_functional_system(lagrange.FunctionalSystem(lagrange.geometric_system(1, order).G[:1], 1))[0]
        r.check({"what": "Catalan numbers"}, [1, 1, 2, 5, 14], [catalan.coefficient({xv(1): k}) for k in range(1, 6)])
        for name, S in lagrange_battery(order):
            if S.d > max_d:
                continue
            core = lagrange.FunctionalSystem(S.G[: S.d], S.d)
            whole = lagrange.solve_functional_system(core, max_degree + 1, "whole")
            graded = lagrange.solve_functional_system(core, max_degree + 1, "graded")
            r.check({"system": name, "what": "schedules agree"}, whole, graded)
            res = lagrange.residual(core, whole)
            r.check({"system": name, "what": "residual"}, True, all(p.body.is_zero() for p in res))
            for total in range(1, max_degree + 1):
                for c in compositions(total, S.d):
                    mono = Monomial({xv(s): e for s, e in enumerate(c, 1) if e})
                    for rho in range(1, S.d + 1):
                        r.check(
                            {"system": name, "root": rho, "n": c},
                            whole[rho - 1].coefficient(mono),
                            lagrange.tree_sum_coefficient(core, rho, c),
                        )
            for total in range(S.d, max_degree + 1):
                for c in compositions(total - S.d, S.d):
                    n = tuple(k + 1 for k in c)
                    routes = lagrange.all_routes(S, n)
                    r.check({"system": name, "n": n, "what": "three routes"}, [routes["solve"]] * 3, [routes["solve"], routes["treesum"], routes["rhs"]])

    return _timed("lagrange", body)


# -- cacti -------------------------------------------------------------------------------------


def suite_cacti(scales=((2, 3), (3, 2)), max_d: int | None = None) -> VerificationReport:
    def body(r: VerificationReport):
        for d, top in scales:
            if max_d is not None and d > max_d:
                continue
            for n in range(1, top + 1):
                for profile in cacti.cactus_profiles(d, n):
                    _cacti_profile(r, d, n, profile)

    return _timed("cacti", body)


def _cacti_profile(r: VerificationReport, d: int, n: int, profile: tuple[int, ...]) -> None:
    tag = {"d": d, "profile": profile}
    cs = list(cacti.enumerate_cacti(d, profile))
    r.check({**tag, "what": "distinct"}, len(cs), len(set(cs)))
    r.check({**tag, "what": "Euler relation"}, True, all(sum(profile) == (d - 1) * c.size + 1 and c.size == n for c in cs))
    r.check({**tag, "what": "total"}, cacti.count_cacti_total(profile, d), len(cs))
    classes: dict = defaultdict(list)
    for c in cs:
        classes[cacti.cactus_degree_vector(c)].append(c)
    sweep = product(*(compositions(n - k, k) for k in profile))
    for parts in sweep:
        gamma = cacti.CactusDegreeVector(
            {(t, i + 1): e + 1 for t, part in enumerate(parts, 1) for i, e in enumerate(part)}
        )
        r.check({**tag, "gamma": gamma.to_json()}, len(classes.get(gamma, [])), cacti.count_cacti_by_degree(gamma, d))
    r.check({**tag, "what": "gamma sum"}, cacti.count_cacti_total(profile, d), sum(len(v) for v in classes.values()))
    members = set(cs)
    for c in cs:
        g = cacti.cactus_degree_vector(c)
        for (s, j), deg in g.items():
            if deg < 2:
                continue
            for k in range(1, profile[s - 1] + 1):
                if k == j:
                    continue
                img = cacti.cactus_phi(c, s, j, k)
                ok = img in members and cacti.cactus_degree_vector(img) == cacti.shifted_degrees(g, s, j, k)
                r.check({**tag, "s": s, "j": j, "k": k, "what": "phi image"}, True, ok)
                r.check({**tag, "s": s, "j": j, "k": k, "what": "phi round trip"}, c.to_json(), cacti.cactus_phi(img, s, k, j).to_json())
    star = cacti.star_degree_vector(profile, d)
    star_class = classes.get(star, [])
    for rr in range(1, d + 1):
        for s in range(1, d + 1):
            if rr == s or profile[rr - 1] < 2 or profile[s - 1] >= n:
                continue
            marked = [c for c in star_class if cacti.in_psi_class(c, s, rr)]
            r.check({**tag, "r": rr, "s": s, "what": "marked class size"}, len(star_class), len(marked) * (profile[rr - 1] - 1))
            target_profile = list(profile)
            target_profile[rr - 1] -= 1
            target_profile[s - 1] += 1
            target = [c for c in cacti.enumerate_cacti(d, target_profile) if cacti.in_psi_class(c, rr, s)]
            images = set()
            for c in marked:
                img = cacti.cactus_psi(c, rr, s)
                images.add(img)
                r.check({**tag, "r": rr, "s": s, "what": "psi round trip"}, c.to_json(), cacti.cactus_psi(img, s, rr).to_json())
            r.check({**tag, "r": rr, "s": s, "what": "psi onto target class"}, set(target), images)
            target_star = cacti.star_degree_vector(target_profile, d)
            target_size = sum(1 for c in cacti.enumerate_cacti(d, target_profile) if cacti.cactus_degree_vector(c) == target_star)
            r.check(
                {**tag, "r": rr, "s": s, "what": "star class ratio"},
                Fraction(len(star_class), profile[rr - 1] - 1),
                Fraction(target_size, target_profile[s - 1] - 1),
            )
    if profile == (1,) + (n,) * (d - 1):
        r.check({**tag, "what": "terminal class"}, factorial(n) ** (d - 1), len(star_class))


# -- plane trees -------------------------------------------------------------------------------


def suite_plane(max_vertices: int = 8) -> VerificationReport:
    def body(r: VerificationReport):
        for n in range(1, max_vertices + 1):
            hist = Counter(plane_tree_degrees(T) for T in enumerate_plane_trees(n))
            for N in _degree_distributions(n):
                r.check({"N": N}, hist.get(N, 0), formulas.count_plane_trees(N))

    return _timed("plane", body)


def _degree_distributions(n: int) -> Iterator[tuple[int, ...]]:
    """(N_0, ..., N_k) with sum N_i = n, sum i N_i = n - 1 and N_k > 0."""

    def rec(i: int, left_vertices: int, left_children: int, acc: list[int]):
        if left_children == 0:
            if left_vertices >= 0:
                out = [left_vertices] + acc[1:]
                while len(out) > 1 and out[-1] == 0:
                    out.pop()
                yield tuple(out)
            return
        if i > left_children:
            return
        for k in range(left_children // i + 1):
            yield from rec(i + 1, left_vertices - k, left_children - i * k, acc + [k])

    yield from sorted(set(rec(1, n, n - 1, [0])))


# -- registry ----------------------------------------------------------------------------------

SUITES = ("unitype", "gf", "determinant", "forests", "counts", "bijections", "lagrange", "cacti", "plane")


def run_suite(name: str, max_vertices: int = 7, max_d: int = 3, seed: int = 0) -> VerificationReport:
    """Run one suite with the vertex and type bounds mapped onto its own scale."""
    if name == "unitype":
        return suite_unitype(max_vertices)
    if name == "gf":
        return suite_gf(max_vertices, max_d)
    if name == "determinant":
        return suite_determinant(max(max_d, 2), seed=seed)
    if name == "forests":
        return suite_forests(min(max_vertices, 6), min(max_d, 2))
    if name == "counts":
        return suite_counts(max_vertices, max_d)
    if name == "bijections":
        return suite_bijections(max_vertices, max_d)
    if name == "lagrange":
        return suite_lagrange(max(max_vertices - 1, 1), max_d)
    if name == "cacti":
        return suite_cacti(max_d=max_d)
    if name == "plane":
        return suite_plane(max_vertices)
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
