"""Multivariate Lagrange inversion computed three ways.

For series G_1, ..., G_d (and optionally G_{d+1}) in x_1, ..., x_d with
non-zero constant terms, the system f_t = x_t G_t(f_1, ..., f_d) has a
unique power-series solution.  Its coefficients can be read off

* by fixed-point iteration (:func:`solve_functional_system`),
* as weighted sums over multitype Cayley trees (:func:`tree_sum_coefficient`),
* from the derivative-operator formula (:func:`lagrange_rhs_coefficient`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Mapping, Sequence

from .algebra import Monomial, Polynomial, PowerSeries, Rational, Var, xv
from .enumeration import enumerate_skeletons, enumerate_trees
from .limits import PreconditionError, check, limits
from .trees import Profile, indegree_types


@dataclass(frozen=True)
class FunctionalSystem:
    """Series G_t in the variables x_1..x_d; ``len(G)`` is d or d + 1.

    G_1..G_d need non-zero constant terms.  An optional G_{d+1} is only
    evaluated at the solution, so it may be any series.
    """

    G: tuple[PowerSeries, ...]
    d: int
    free_last: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "G", tuple(self.G))
        if len(self.G) not in (self.d, self.d + 1):
            raise PreconditionError(f"need {self.d} or {self.d + 1} series, got {len(self.G)}")
        allowed = {xv(s) for s in range(1, self.d + 1)}
        for t, g in enumerate(self.G, 1):
            constrained = t <= self.d and not (self.free_last and t == self.d)
            if constrained and g.constant_term() == 0:
                raise PreconditionError(f"G_{t} has zero constant term")
            stray = g.body.variables() - allowed
            if stray:
                raise PreconditionError(f"G_{t} uses variables {sorted(stray)} outside x_1..x_{self.d}")

    @property
    def order(self) -> int:
        return min(g.order for g in self.G)

    def to_json(self) -> dict:
        return {"d": self.d, "series": [g.to_records() for g in self.G]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FunctionalSystem":
        return cls(tuple(PowerSeries.from_records(g) for g in data["series"]), int(data["d"]))


def _step(S: FunctionalSystem, f: Sequence[PowerSeries], order: int) -> list[PowerSeries]:
    subs = {xv(s): f[s - 1] for s in range(1, S.d + 1)}
    out = []
    for t in range(1, S.d + 1):
        g = PowerSeries(S.G[t - 1].body, order).compose(subs)
        out.append(PowerSeries(g.body.truncated_mul(Polynomial.variable(xv(t)), order), order))
    return out


def solve_functional_system(
    S: FunctionalSystem, order: int | None = None, schedule: str = "whole"
) -> list[PowerSeries]:
    """The solution f_1..f_d modulo total degree ``order``.

    ``schedule="whole"`` iterates f <- x G(f) at the full order, starting
    from zero; ``"graded"`` raises the truncation one degree per pass.  Each
    pass settles one more degree, so ``order`` passes suffice either way.
    """
    order = S.order if order is None else order
    if order < 1:
        raise PreconditionError("order must be at least 1")
    if order > S.order + 1:
        raise PreconditionError(f"the G_t are only known below degree {S.order}")
    if schedule == "whole":
        f = [PowerSeries(0, order) for _ in range(S.d)]
        for _ in range(order):
            f = _step(S, f, order)
        return f
    if schedule == "graded":
        f = [PowerSeries(0, 1) for _ in range(S.d)]
        for k in range(2, order + 1):
            f = _step(S, [PowerSeries(g.body, k) for g in f], k)
        return [PowerSeries(g.body, order) for g in f]
    raise ValueError(f"unknown schedule {schedule!r}")


def residual(S: FunctionalSystem, f: Sequence[PowerSeries]) -> list[PowerSeries]:
    """f_t - x_t G_t(f); identically zero up to the order when f solves the system."""
    order = min(g.order for g in f)
    again = _step(S, f, order)
    return [a - b for a, b in zip(f, again)]


def _monomial(c: Sequence[int]) -> Monomial:
    return Monomial({xv(s): k for s, k in enumerate(c, 1) if k})


def tree_sum_coefficient(S: FunctionalSystem, root_type: int, n: Sequence[int]) -> Rational:
    """[x^n] f_rho as a weighted sum over the trees of T_rho(n).

    Each tree contributes prod over vertices (t, i) of the coefficient of
    y^{ch(t,i)} in G_t, times prod ch_s(t,i)!, and the total is divided by
    prod n_t!.  Types with n_t = 0 simply do not occur in the trees.
    """
    d = S.d
    n = tuple(int(k) for k in n)
    if len(n) != d or any(k < 0 for k in n):
        raise PreconditionError(f"need {d} non-negative exponents")
    if not 1 <= root_type <= d:
        raise PreconditionError(f"root type {root_type} outside [1, {d}]")
    if n[root_type - 1] == 0:
        return 0
    if sum(n) > S.order:
        raise PreconditionError(f"coefficients of degree {sum(n) - 1} of G are beyond order {S.order}")
    active = [t for t in range(1, d + 1) if n[t - 1] > 0]
    check(sum(n), limits().max_vertices, "vertex count")
    profile = Profile(tuple(n[t - 1] for t in active))
    local_root = active.index(root_type) + 1

    @lru_cache(maxsize=None)
    def weight(t: int, c: tuple[int, ...]) -> Rational:
        full = [0] * d
        for k, s in enumerate(active):
            full[s - 1] = c[k]
        coeff = S.G[t - 1].coefficient(_monomial(full))
        return coeff * prod(factorial(k) for k in c)

    acc: Rational = 0
    for T in enumerate_trees(profile, local_root):
        term: Rational = 1
        for v, c in indegree_types(T).items():
            term *= weight(active[v.type - 1], c)
            if term == 0:
                break
        acc += term
    return _normalize(Fraction(acc, prod(factorial(k) for k in n)))


def _normalize(v: Fraction) -> Rational:
    return v.numerator if v.denominator == 1 else v


def lagrange_rhs_coefficient(S: FunctionalSystem, n: Sequence[int]) -> Rational:
    """[x^n] G_{d+1}(f) from the derivative-operator formula.

    Sums, over Cayley trees A on [d+1] rooted at d+1, the coefficient of
    x^n in prod_t (x_t / n_t) times prod over t in [d+1] of
    (prod over children s of t in A of d/dx_s) G_t^{n_t}, with n_{d+1} = 1.
    """
    d = S.d
    if len(S.G) != d + 1:
        raise PreconditionError("the right-hand side needs G_1..G_{d+1}")
    n = tuple(int(k) for k in n)
    if len(n) != d or any(k <= 0 for k in n):
        raise PreconditionError(f"need {d} positive exponents")
    top = sum(n)
    if top >= S.order:
        raise PreconditionError(f"degree {top} needs every G_t known beyond order {S.order}")
    target = sum(n) - d
    order = target + 1
    full = n + (1,)
    powers = [S.G[t].body.truncated_pow(full[t], top + 1) for t in range(d + 1)]
    want = _monomial([k - 1 for k in n])

    @lru_cache(maxsize=None)
    def differentiated(t: int, children: tuple[int, ...]) -> Polynomial:
        p = powers[t - 1]
        for s in children:
            p = p.derivative(xv(s))
        return p.truncate(order)

    acc: Rational = 0
    for A in enumerate_skeletons(d + 1, d + 1):
        kids: dict[int, list[int]] = {t: [] for t in range(1, d + 2)}
        for s, t in A.parent:
            kids[t].append(s)
        term = Polynomial.constant(1)
        for t in range(1, d + 2):
            term = term.truncated_mul(differentiated(t, tuple(sorted(kids[t]))), order)
            if term.is_zero():
                break
        acc += term.coefficient(want)
    return _normalize(Fraction(acc) / prod(n))


def direct_coefficient(S: FunctionalSystem, n: Sequence[int], schedule: str = "whole") -> Rational:
    """[x^n] G_{d+1}(f) by substituting the fixed-point solution."""
    d = S.d
    if len(S.G) != d + 1:
        raise PreconditionError("the direct route needs G_{d+1}")
    order = sum(n) + 1
    f = solve_functional_system(S, order, schedule)
    g = PowerSeries(S.G[d].body, order).compose({xv(s): f[s - 1] for s in range(1, d + 1)})
    return g.coefficient(_monomial(n))


def extended_system(S: FunctionalSystem) -> FunctionalSystem:
    """The system on d + 1 unknowns with f_{d+1} = x_{d+1} G_{d+1}(f_1..f_d)."""
    if len(S.G) != S.d + 1:
        raise PreconditionError("extension needs G_{d+1}")
    return FunctionalSystem(S.G, S.d + 1, free_last=True)


def treesum_route(S: FunctionalSystem, n: Sequence[int]) -> Rational:
    """[x^n] G_{d+1}(f) as the tree sum for f_{d+1} at exponent (n, 1)."""
    return tree_sum_coefficient(extended_system(S), S.d + 1, tuple(n) + (1,))


def all_routes(S: FunctionalSystem, n: Sequence[int]) -> dict[str, Rational]:
    return {
        "solve": direct_coefficient(S, n),
        "treesum": treesum_route(S, n),
        "rhs": lagrange_rhs_coefficient(S, n),
    }


def geometric_system(d: int = 1, order: int = 8) -> FunctionalSystem:
    """Every G_t = 1/(1 - x_1 - ... - x_d), truncated; with d = 1 the solution has Catalan coefficients."""
    gens = [xv(s) for s in range(1, d + 1)]
    base = Polynomial.linear({v: 1 for v in gens})
    body = sum((base.truncated_pow(k, order) for k in range(order)), Polynomial())
    g = PowerSeries(body, order)
    return FunctionalSystem((g,) * (d + 1), d)


def series_from_polynomial(p: Polynomial | Rational, order: int) -> PowerSeries:
    return PowerSeries(p if isinstance(p, Polynomial) else Polynomial.constant(p), order)


def variable(s: int) -> Polynomial:
    return Polynomial.variable(xv(s))


__all__ = [
    "FunctionalSystem",
    "solve_functional_system",
    "residual",
    "tree_sum_coefficient",
    "lagrange_rhs_coefficient",
    "direct_coefficient",
    "treesum_route",
    "all_routes",
    "extended_system",
    "geometric_system",
    "Var",
]
