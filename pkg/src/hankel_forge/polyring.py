"""Exact sparse polynomials over the rationals in variables x1..xn.

Monomials are exponent tuples ordered degree-lexicographically with
x1 > x2 > ... > xn.  Coefficients are Python ``int`` where integral and
``fractions.Fraction`` otherwise, so arithmetic never leaves the rationals.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, EmptyPolynomialError, ParseError

Exps = tuple[int, ...]


def deglex_key(exps: Exps) -> tuple:
    """Sort key realising degree-lex: compare total degree, then exponents left to right."""
    return (sum(exps), exps)


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def deglex_compare(a: "Monomial", b: "Monomial") -> int:
    """Return 1, 0 or -1 as ``a`` is greater than, equal to or less than ``b``."""
    if len(a.exponents) != len(b.exponents):
        raise DimensionError(f"monomials over {len(a.exponents)} and {len(b.exponents)} variables")
    ka, kb = deglex_key(a.exponents), deglex_key(b.exponents)
    return (ka > kb) - (ka < kb)


@total_ordering
class Monomial:
    __slots__ = ("exponents", "degree")

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.exponents = exps
        self.degree = sum(exps)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "Monomial":
        """Product of x_i over ``indices`` (1-based, repetitions allowed)."""
        exps = [0] * n
        for i in indices:
            if not 1 <= i <= n:
                raise DimensionError(f"variable x{i} outside x1..x{n}")
            exps[i - 1] += 1
        return cls(exps)

    @property
    def n(self) -> int:
        return len(self.exponents)

    def indices(self) -> list[int]:
        """Variable indices with multiplicity, ascending."""
        return [i + 1 for i, e in enumerate(self.exponents) for _ in range(e)]

    def support(self) -> list[int]:
        return [i + 1 for i, e in enumerate(self.exponents) if e]

    def _check(self, other: "Monomial") -> None:
        if len(self.exponents) != len(other.exponents):
            raise DimensionError(f"monomials over {self.n} and {other.n} variables")

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        self._check(other)
        return Monomial(a + b for a, b in zip(self.exponents, other.exponents))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(a - b for a, b in zip(self.exponents, other.exponents))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(min(a, b) for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(max(a, b) for a, b in zip(self.exponents, other.exponents))

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __lt__(self, other: "Monomial") -> bool:
        return deglex_compare(self, other) < 0

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        return _monomial_text(self.exponents)


def _monomial_text(exps: Exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


class Polynomial:
    """Immutable polynomial; internally a dict from exponent tuples to nonzero coefficients."""

    __slots__ = ("n", "_d", "_lm")

    def __init__(self, n: int, terms=None):
        self.n = n
        d: dict[Exps, object] = {}
        if terms is None:
            pass
        elif isinstance(terms, Mapping):
            items = terms.items()
            for m, c in items:
                self._accumulate(d, m, c)
        else:
            for c, m in terms:
                self._accumulate(d, m, c)
        self._d = d
        self._lm = None

    def _accumulate(self, d, m, c):
        exps = m.exponents if isinstance(m, Monomial) else tuple(m)
        if len(exps) != self.n:
            raise DimensionError(f"monomial over {len(exps)} variables in a ring of {self.n}")
        c = _coerce(c)
        v = d.get(exps, 0) + c
        if v:
            d[exps] = v
        else:
            d.pop(exps, None)

    @classmethod
    def _raw(cls, n: int, d: dict) -> "Polynomial":
        # trusted constructor: d already canonical (no zero coefficients)
        p = cls.__new__(cls)
        p.n = n
        p._d = d
        p._lm = None
        return p

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        c = _coerce(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        if not 1 <= i <= n:
            raise DimensionError(f"variable x{i} outside x1..x{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, c=1) -> "Polynomial":
        c = _coerce(c)
        return cls._raw(m.n, {m.exponents: c} if c else {})

    def as_dict(self) -> dict:
        """A copy of the exponent -> coefficient mapping."""
        return dict(self._d)

    @property
    def terms(self) -> list[tuple[object, Monomial]]:
        """(coefficient, monomial) pairs, strictly decreasing in deglex."""
        return [(self._d[e], Monomial(e)) for e in sorted(self._d, key=deglex_key, reverse=True)]

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self) -> bool:
        return bool(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def _leading_exps(self) -> Exps:
        if not self._d:
            raise EmptyPolynomialError("the zero polynomial has no leading term")
        if self._lm is None:
            self._lm = max(self._d, key=deglex_key)
        return self._lm

    def leading_term(self) -> tuple[object, Monomial]:
        e = self._leading_exps()
        return self._d[e], Monomial(e)

    def leading_monomial(self) -> Monomial:
        return Monomial(self._leading_exps())

    def leading_coefficient(self):
        return self._d[self._leading_exps()]

    def degree(self) -> int:
        if not self._d:
            raise EmptyPolynomialError("the zero polynomial has no degree")
        return max(sum(e) for e in self._d)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._d}) <= 1

    def normalize(self) -> "Polynomial":
        """Scale to a monic polynomial (leading coefficient 1)."""
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        inv = Fraction(1, 1) / lc
        return Polynomial._raw(self.n, {e: _coerce(c * inv) for e, c in self._d.items()})

    def _check(self, other: "Polynomial") -> None:
        if self.n != other.n:
            raise DimensionError(f"polynomials over {self.n} and {other.n} variables")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, Monomial):
            if other.n != self.n:
                raise DimensionError(f"monomial over {other.n} variables in a ring of {self.n}")
            return Polynomial.from_monomial(other)
        return Polynomial.constant(self.n, other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        d = dict(self._d)
        for e, c in other._d.items():
            v = d.get(e, 0) + c
            if v:
                d[e] = v
            else:
                del d[e]
        return Polynomial._raw(self.n, d)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.n, {e: -c for e, c in self._d.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (Polynomial, Monomial)):
            other = self._lift(other)
            d: dict = {}
            for e1, c1 in self._d.items():
                for e2, c2 in other._d.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = d.get(e, 0) + c1 * c2
                    if v:
                        d[e] = v
                    else:
                        del d[e]
            return Polynomial._raw(self.n, d)
        c = _coerce(other)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: _coerce(v * c) for e, v in self._d.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, c, exps: Exps) -> "Polynomial":
        """Multiply by the single term ``c * x^exps``."""
        c = _coerce(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(
            self.n, {tuple(a + b for a, b in zip(e, exps)): _coerce(v * c) for e, v in self._d.items()}
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == ({(0,) * self.n: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._d.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient of ``f`` by ``g``; raises ValueError when ``g`` does not divide ``f``."""
    f._check(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    lc, lm = g.leading_term()
    lme = lm.exponents
    rem = dict(f._d)
    q: dict = {}
    while rem:
        e = max(rem, key=deglex_key)
        if any(a < b for a, b in zip(e, lme)):
            raise ValueError("division is not exact")
        qe = tuple(a - b for a, b in zip(e, lme))
        qc = _coerce(Fraction(rem[e]) / Fraction(lc))
        q[qe] = qc
        for ge, gc in g._d.items():
            te = tuple(a + b for a, b in zip(ge, qe))
            v = rem.get(te, 0) - qc * gc
            if v:
                rem[te] = _coerce(v)
            else:
                rem.pop(te, None)
    return Polynomial._raw(f.n, q)


def _as_poly(entry, n: int) -> Polynomial:
    if isinstance(entry, Polynomial):
        if entry.n != n:
            raise DimensionError("grid entries over different variable counts")
        return entry
    return Polynomial.constant(n, entry)


def _grid_n(grid) -> int:
    for row in grid:
        for e in row:
            if isinstance(e, Polynomial):
                return e.n
    return 0


def _cofactor(grid: list[list[Polynomial]], n: int) -> Polynomial:
    s = len(grid)
    if s == 1:
        return grid[0][0]
    if s == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    total = Polynomial.zero(n)
    for j in range(s):
        if not grid[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in grid[1:]]
        term = grid[0][j] * _cofactor(sub, n)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss(grid: list[list[Polynomial]], n: int) -> Polynomial:
    a = [list(row) for row in grid]
    s = len(a)
    sign = 1
    prev = Polynomial.constant(n, 1)
    for k in range(s - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, s) if a[i][k]), None)
            if swap is None:
                return Polynomial.zero(n)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, s):
            for j in range(k + 1, s):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev) if num else num
        prev = a[k][k]
    det = a[s - 1][s - 1]
    return det if sign == 1 else -det


def determinant(grid: Sequence[Sequence], method: str = "auto") -> Polynomial:
    """Exact determinant of a square grid of polynomials (or rational constants).

    ``method`` is ``"cofactor"``, ``"bareiss"`` or ``"auto"`` (cofactor below size 4).
    """
    s = len(grid)
    if s == 0 or any(len(row) != s for row in grid):
        raise DimensionError(f"determinant needs a nonempty square grid, got {[len(r) for r in grid]}")
    n = _grid_n(grid)
    g = [[_as_poly(e, n) for e in row] for row in grid]
    if method == "auto":
        method = "cofactor" if s < 4 else "bareiss"
    if method == "cofactor":
        return _cofactor(g, n)
    if method == "bareiss":
        return _bareiss(g, n)
    raise ValueError(f"unknown determinant method {method!r}")


def _coeff_text(c) -> str:
    return str(c)


def format_polynomial(p: Polynomial) -> str:
    """Render as ``x1*x4 - x2*x3``; coefficients written ``-3*x2*x5^2`` or ``3/2*x1``."""
    if not p._d:
        return "0"
    out = []
    for i, (c, m) in enumerate(p.terms):
        neg = c < 0
        a = -c if neg else c
        body = str(m)
        if m.degree == 0:
            text = _coeff_text(a)
        elif a == 1:
            text = body
        else:
            text = f"{_coeff_text(a)}*{body}"
        if i == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(out)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_monomial(text: str, n: int | None = None) -> Monomial:
    p = parse_polynomial(text, n)
    if len(p) != 1 or p.leading_coefficient() != 1:
        raise ParseError(f"not a monomial: {text!r}")
    return p.leading_monomial()


def parse_polynomial(text: str, n: int | None = None) -> Polynomial:
    """Parse the textual format produced by :func:`format_polynomial`.

    When ``n`` is omitted the ring size is the largest variable index seen.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial text")
    raw_terms: list[tuple[object, dict[int, int]]] = []
    pos = 0
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        sign, body = mt.group(1), mt.group(2).strip()
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coeff: object = Fraction(1)
        exps: dict[int, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            mf = _FACTOR.match(factor)
            if not mf:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            i = int(mf.group(1))
            if i < 1:
                raise ParseError(f"variable index must be >= 1 in {factor!r}")
            exps[i] = exps.get(i, 0) + int(mf.group(2) or 1)
        if sign == "-":
            coeff = -coeff
        raw_terms.append((coeff, exps))
        pos = mt.end()
    top = max((max(e) for _, e in raw_terms if e), default=0)
    if n is None:
        n = max(top, 1)
    elif top > n:
        raise ParseError(f"variable x{top} exceeds ring size {n}")
    terms = []
    for c, e in raw_terms:
        v = [0] * n
        for i, k in e.items():
            v[i - 1] = k
        terms.append((c, tuple(v)))
    return Polynomial(n, terms)
