"""Exact sparse multivariate polynomials and total-degree-truncated power series.

Coefficients are Python ``int`` or :class:`fractions.Fraction`; nothing here
ever rounds.  A polynomial stores its terms as a dict from dense exponent
tuples to coefficients, relative to a sorted tuple of generators.  Two
polynomials over different generators are lifted onto the union before any
binary operation, so callers never see the generator tuple.
"""

from __future__ import annotations

import re
from fractions import Fraction
from operator import itemgetter
from functools import lru_cache
from operator import add
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .limits import check, limits

Rational = Union[int, Fraction]


class Var(NamedTuple):
    """A variable identifier: a name plus an index tuple, ordered as a tuple."""

    name: str
    index: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.name}({','.join(map(str, self.index))})"

    @classmethod
    def parse(cls, text: str) -> "Var":
        m = _VAR_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"not a variable identifier: {text!r}")
        body = m.group(2)
        index = tuple(int(p) for p in body.split(",")) if body else ()
        return cls(m.group(1), index)


_VAR_RE = re.compile(r"([A-Za-z_]\w*)\(([0-9,\s]*)\)")


def x(s: int, t: int, i: int) -> Var:
    """x_{s,t,i}: marks a type-s child of vertex (t, i)."""
    return Var("x", (s, t, i))


def z(s: int) -> Var:
    """z_s: marks a root of type s in a forest."""
    return Var("z", (s,))


def xv(t: int) -> Var:
    """The plain series variable x_t."""
    return Var("x", (t,))


class Monomial(Mapping):
    """Immutable map from variables to positive exponents."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[Var, int] | Iterable[tuple[Var, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        cleaned = {}
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent {e} for {v}")
            if e:
                cleaned[v] = cleaned.get(v, 0) + e
        self._items = tuple(sorted(cleaned.items()))
        self._hash = hash(self._items)

    def __getitem__(self, v: Var) -> int:
        for w, e in self._items:
            if w == v:
                return e
        raise KeyError(v)

    def get(self, v, default=0):
        for w, e in self._items:
            if w == v:
                return e
        return default

    def __iter__(self) -> Iterator[Var]:
        return (v for v, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Monomial):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == Monomial(other)
        return NotImplemented

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def sort_key(self):
        # graded; within a degree, larger exponents on earlier variables first
        return (self.degree, tuple((v, -e) for v, e in self._items))

    def __repr__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self._items)


def _normalize(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """A sparse polynomial with exact rational coefficients."""

    __slots__ = ("gens", "_terms")

    def __init__(self, terms: Mapping | None = None):
        self.gens: tuple[Var, ...] = ()
        self._terms: dict[tuple[int, ...], Rational] = {}
        if terms:
            gens = sorted({v for m in terms for v in Monomial(m)})
            pos = {v: k for k, v in enumerate(gens)}
            out: dict[tuple[int, ...], Rational] = {}
            for m, c in terms.items():
                exps = [0] * len(gens)
                for v, e in Monomial(m).items():
                    exps[pos[v]] = e
                key = tuple(exps)
                out[key] = out.get(key, 0) + c
            self.gens = tuple(gens)
            self._terms = {k: _normalize(c) for k, c in out.items() if c != 0}

    @classmethod
    def _raw(cls, gens: tuple[Var, ...], terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.gens = gens
        p._terms = terms
        return p

    @classmethod
    def constant(cls, c: Rational) -> "Polynomial":
        return cls._raw((), {(): _normalize(c)} if c != 0 else {})

    @classmethod
    def variable(cls, v: Var) -> "Polynomial":
        return cls._raw((v,), {(1,): 1})

    @classmethod
    def linear(cls, coeffs: Mapping[Var, Rational]) -> "Polynomial":
        gens = tuple(sorted(v for v, c in coeffs.items()))
        terms = {}
        for k, v in enumerate(gens):
            c = coeffs[v]
            if c != 0:
                e = [0] * len(gens)
                e[k] = 1
                terms[tuple(e)] = _normalize(c)
        return cls._raw(gens, terms)

    # -- structure ---------------------------------------------------------

    def _lift(self, gens: tuple[Var, ...]) -> dict:
        if gens == self.gens:
            return self._terms
        where = [gens.index(v) for v in self.gens]
        n = len(gens)
        out = {}
        for exps, c in self._terms.items():
            e = [0] * n
            for k, p in enumerate(where):
                e[p] = exps[k]
            out[tuple(e)] = c
        return out

    @staticmethod
    def _union(a: "Polynomial", b: "Polynomial") -> tuple[Var, ...]:
        if a.gens == b.gens:
            return a.gens
        return tuple(sorted(set(a.gens) | set(b.gens)))

    def __iter__(self) -> Iterator[tuple[Monomial, Rational]]:
        return iter(self.terms())

    def terms(self) -> list[tuple[Monomial, Rational]]:
        """All (monomial, coefficient) pairs in canonical graded order."""
        out = [(Monomial(zip(self.gens, e)), c) for e, c in self._terms.items()]
        out.sort(key=lambda mc: mc[0].sort_key())
        return out

    def as_dict(self) -> dict[Monomial, Rational]:
        return {Monomial(zip(self.gens, e)): c for e, c in self._terms.items()}

    def exponents_in(self, gens: tuple[Var, ...]) -> dict[tuple[int, ...], Rational]:
        """Terms keyed by exponent tuples over ``gens``, which must cover every used variable."""
        missing = self.variables() - set(gens)
        if missing:
            raise ValueError(f"variables {sorted(missing)} are not among the requested generators")
        gens = tuple(gens)
        if gens == self.gens:
            return dict(self._terms)
        # position of each requested generator in our exponent tuples, or the appended zero
        mine = {v: k for k, v in enumerate(self.gens)}
        idx = [mine.get(v, len(self.gens)) for v in gens]
        if len(idx) == 1:
            return {(tuple(e) + (0,))[idx[0]:idx[0] + 1]: c for e, c in self._terms.items()}
        pick = itemgetter(*idx)
        return {pick(e + (0,)): c for e, c in self._terms.items()}

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[Var]:
        if not self._terms:
            return set()
        columns = zip(*self._terms)
        return {v for v, col in zip(self.gens, columns) if any(col)}

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def coefficient(self, m: Mapping[Var, int] | Monomial) -> Rational:
        m = m if isinstance(m, Monomial) else Monomial(m)
        pos = {v: k for k, v in enumerate(self.gens)}
        exps = [0] * len(self.gens)
        for v, e in m.items():
            if v not in pos:
                return 0
            exps[pos[v]] = e
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> Rational:
        return self._terms.get((0,) * len(self.gens), 0)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        gens = self._union(self, other)
        out = dict(self._lift(gens))
        for e, c in other._lift(gens).items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = _normalize(s)
        return Polynomial._raw(gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.gens, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial()
            return Polynomial._raw(
                self.gens, {e: _normalize(c * other) for e, c in self._terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.truncated_mul(other, None)

    __rmul__ = __mul__

    def truncated_mul(self, other: "Polynomial", order: int | None) -> "Polynomial":
        """Product, dropping every term of total degree >= ``order`` (if given)."""
        gens = self._union(self, other)
        ta, tb = self._lift(gens), other._lift(gens)
        out: dict = {}
        get = out.get
        if order is None:
            for ea, ca in ta.items():
                for eb, cb in tb.items():
                    e = tuple(map(add, ea, eb))
                    out[e] = get(e, 0) + ca * cb
        else:
            la = [(sum(e), e, c) for e, c in ta.items()]
            lb = sorted(((sum(e), e, c) for e, c in tb.items()), key=lambda t: t[0])
            for da, ea, ca in la:
                room = order - da
                for db, eb, cb in lb:
                    if db >= room:
                        break
                    e = tuple(map(add, ea, eb))
                    out[e] = get(e, 0) + ca * cb
        return Polynomial._raw(gens, {e: _normalize(c) for e, c in out.items() if c != 0})

    def __pow__(self, k: int) -> "Polynomial":
        return self.truncated_pow(k, None)

    def truncated_pow(self, k: int, order: int | None) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result.truncated_mul(base, order)
            k >>= 1
            if k:
                base = base.truncated_mul(base, order)
        if order is not None:
            result = result.truncate(order)
        return result

    def truncate(self, order: int) -> "Polynomial":
        return Polynomial._raw(
            self.gens, {e: c for e, c in self._terms.items() if sum(e) < order}
        )

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(frozenset(self.as_dict().items()))

    # -- calculus and evaluation ------------------------------------------

    def derivative(self, v: Var) -> "Polynomial":
        if v not in self.gens:
            return Polynomial()
        k = self.gens.index(v)
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                f = list(e)
                f[k] -= 1
                out[tuple(f)] = c * e[k]
        return Polynomial._raw(self.gens, out)

    def evaluate(self, values: Mapping[Var, Rational]) -> Rational:
        """Value at a full assignment of the variables that occur."""
        total: Rational = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(self.gens, e):
                if k:
                    term *= values[v] ** k
            total += term
        return _normalize(total)

    def substitute(self, values: Mapping[Var, Rational | "Polynomial"]) -> "Polynomial":
        """Replace the listed variables by numbers or polynomials; others stay."""
        result = Polynomial()
        cache: dict[tuple[Var, int], Polynomial] = {}

        def power(v: Var, k: int) -> Polynomial:
            key = (v, k)
            if key not in cache:
                val = values[v]
                cache[key] = (val if isinstance(val, Polynomial) else Polynomial.constant(val)) ** k
            return cache[key]

        for e, c in self._terms.items():
            kept = {}
            term = Polynomial.constant(c)
            for v, k in zip(self.gens, e):
                if not k:
                    continue
                if v in values:
                    term = term * power(v, k)
                else:
                    kept[v] = k
            if kept:
                term = term * Polynomial({Monomial(kept): 1})
            result = result + term
        return result

    # -- serialization -----------------------------------------------------

    def to_records(self) -> list[dict]:
        out = []
        for m, c in self.terms():
            f = Fraction(c)
            out.append(
                {
                    "exponents": {str(v): e for v, e in m.items()},
                    "numerator": f.numerator,
                    "denominator": f.denominator,
                }
            )
        return out

    @classmethod
    def from_records(cls, records: Iterable[Mapping]) -> "Polynomial":
        terms: dict[Monomial, Rational] = {}
        for r in records:
            den = int(r.get("denominator", 1))
            if den <= 0:
                raise ValueError("denominator must be positive")
            m = Monomial({Var.parse(k): int(e) for k, e in r["exponents"].items()})
            terms[m] = terms.get(m, 0) + Fraction(int(r["numerator"]), den)
        return cls(terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in self.terms())


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_coefficient(p: Polynomial, m: Mapping[Var, int]) -> Rational:
    return p.coefficient(m)


def total(polys: Iterable[Polynomial]) -> Polynomial:
    """Sum of many polynomials, accumulated in one dict."""
    polys = list(polys)
    if not polys:
        return Polynomial()
    gens = tuple(sorted({v for p in polys for v in p.gens}))
    out: dict = {}
    for p in polys:
        for e, c in p._lift(gens).items():
            out[e] = out.get(e, 0) + c
    return Polynomial._raw(gens, {e: _normalize(c) for e, c in out.items() if c != 0})


class PowerSeries:
    """A power series known modulo terms of total degree >= ``order``."""

    __slots__ = ("body", "order")

    def __init__(self, body: Polynomial | Rational, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        if not isinstance(body, Polynomial):
            body = Polynomial.constant(body)
        self.body = body.truncate(order)
        self.order = order

    @classmethod
    def geometric(cls, v: Var, order: int) -> "PowerSeries":
        """1/(1 - v) truncated at ``order``."""
        return cls(Polynomial({Monomial({v: k}): 1 for k in range(order)}), order)

    def _other(self, other) -> tuple[Polynomial, int]:
        if isinstance(other, PowerSeries):
            return other.body, other.order
        if isinstance(other, Polynomial):
            return other, self.order
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other), self.order
        return NotImplemented, 0

    def __add__(self, other):
        body, order = self._other(other)
        if body is NotImplemented:
            return NotImplemented
        return PowerSeries(self.body + body, min(self.order, order))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.body, self.order)

    def __sub__(self, other):
        body, order = self._other(other)
        if body is NotImplemented:
            return NotImplemented
        return PowerSeries(self.body - body, min(self.order, order))

    def __mul__(self, other):
        body, order = self._other(other)
        if body is NotImplemented:
            return NotImplemented
        o = min(self.order, order)
        return PowerSeries(self.body.truncated_mul(body, o), o)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PowerSeries":
        return PowerSeries(self.body.truncated_pow(k, self.order), self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.body == other.body

    def derivative(self, v: Var) -> "PowerSeries":
        return PowerSeries(self.body.derivative(v), max(self.order - 1, 0))

    def coefficient(self, m: Mapping[Var, int]) -> Rational:
        m = m if isinstance(m, Monomial) else Monomial(m)
        if m.degree >= self.order:
            raise ValueError(f"coefficient of degree {m.degree} is beyond order {self.order}")
        return self.body.coefficient(m)

    def constant_term(self) -> Rational:
        return self.body.constant_term()

    def compose(self, values: Mapping[Var, "PowerSeries"]) -> "PowerSeries":
        """Substitute series without constant term for variables.

        The result is exact to the smallest order among ``self`` and the
        substituted series.
        """
        order = min([self.order] + [s.order for s in values.values()])
        for v, s in values.items():
            if s.constant_term() != 0:
                raise ValueError(f"substituted series for {v} has a constant term")
        powers: dict[tuple[Var, int], Polynomial] = {}

        def power(v: Var, k: int) -> Polynomial:
            if k == 0:
                return Polynomial.constant(1)
            key = (v, k)
            if key not in powers:
                powers[key] = power(v, k - 1).truncated_mul(values[v].body, order)
            return powers[key]

        parts = []
        for m, c in self.body.terms():
            if m.degree >= order and all(v in values for v in m):
                continue
            term = Polynomial.constant(c)
            rest = {}
            for v, k in m.items():
                if v in values:
                    term = term.truncated_mul(power(v, k), order)
                else:
                    rest[v] = k
            if rest:
                term = term.truncated_mul(Polynomial({Monomial(rest): 1}), order)
            parts.append(term)
        return PowerSeries(total(parts), order)

    def to_records(self) -> dict:
        return {"order": self.order, "terms": self.body.to_records()}

    @classmethod
    def from_records(cls, data: Mapping) -> "PowerSeries":
        return cls(Polynomial.from_records(data["terms"]), int(data["order"]))

    def __repr__(self) -> str:
        return f"{self.body!r} + O(deg {self.order})"


def series_partial_derivative(f: PowerSeries, v: Var) -> PowerSeries:
    return f.derivative(v)


def matrix_determinant(M: list[list[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoised on column sets."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    check(n, limits().max_determinant, "matrix dimension")
    rows = [[e if isinstance(e, Polynomial) else Polynomial.constant(e) for e in row] for row in M]

    @lru_cache(maxsize=None)
    def minor(cols: frozenset) -> Polynomial:
        r = len(cols)
        if r == n:
            return Polynomial.constant(1)
        parts = []
        sign = 1
        for c in range(n):
            if c in cols:
                continue
            entry = rows[r][c]
            if not entry.is_zero():
                sub = minor(cols | {c})
                if not sub.is_zero():
                    parts.append(entry * sub * sign)
            sign = -sign
        return total(parts)

    return minor(frozenset())
