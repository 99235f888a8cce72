"""The extended Hankel arrangement X and its minors.

Row i of X starts at x_{1+(i-1)c}: the entry in row i, column j is
x_{j+(i-1)c}.  X_t is the t-row submatrix, and every t-minor of X_t is a
maximal minor [1..t | b], determined by its diagonal a_i = b_i + (i-1)c,
which is a c-chain.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .chains import CChain, Tableau, as_chain, enumerate_chains
from .errors import BoundsError, ParseError, PreconditionError, RangeError
from .polyring import Polynomial, determinant


@dataclass(frozen=True)
class HankelConfig:
    n: int
    c: int

    def __post_init__(self):
        if self.n < 1 or self.c < 1:
            raise PreconditionError(f"need n >= 1 and c >= 1, got n={self.n}, c={self.c}")

    @property
    def k(self) -> int:
        """Index of the last row of X, counting from 0 (X has k + 1 rows)."""
        return (self.n - 1) // self.c

    @property
    def m(self) -> int:
        """Size of the largest minor of X."""
        return (self.n + self.c) // (self.c + 1)

    def check_t(self, t: int) -> None:
        if not 1 <= t <= self.m:
            raise RangeError(f"t={t} outside 1..m={self.m} for n={self.n}, c={self.c}")


def entry(cfg: HankelConfig, row: int, col: int) -> int:
    """Variable index sitting at (row, col) of X."""
    if row < 1 or col < 1:
        raise BoundsError(f"position ({row}, {col}) is not positive")
    idx = col + (row - 1) * cfg.c
    if idx > cfg.n:
        raise BoundsError(f"position ({row}, {col}) needs x{idx} but n={cfg.n}")
    return idx


def submatrix(cfg: HankelConfig, j: int) -> list[list[int]]:
    """Variable indices of X_j: j rows, n - (j-1)c columns."""
    width = cfg.n - (j - 1) * cfg.c
    if j < 1 or width < 1:
        raise BoundsError(f"X_{j} does not exist for n={cfg.n}, c={cfg.c}")
    return [[entry(cfg, i, col) for col in range(1, width + 1)] for i in range(1, j + 1)]


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        cols = tuple(int(c) for c in self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols) or not rows:
            raise PreconditionError(f"minor needs equally many rows and columns, got {rows}|{cols}")
        for seq in (rows, cols):
            if seq[0] < 1 or any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)):
                raise PreconditionError(f"indices must be positive and strictly increasing: {seq}")

    @classmethod
    def maximal(cls, diag: CChain) -> "MinorSpec":
        c = diag.c
        return cls(tuple(range(1, len(diag) + 1)), tuple(a - i * c for i, a in enumerate(diag.indices)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def is_maximal(self) -> bool:
        return self.rows == tuple(range(1, self.size + 1))

    def diagonal(self, cfg: HankelConfig) -> tuple[int, ...]:
        return tuple(entry(cfg, r, col) for r, col in zip(self.rows, self.cols))

    def validate(self, cfg: HankelConfig) -> None:
        # the largest entry sits in the bottom-right corner
        entry(cfg, self.rows[-1], self.cols[-1])

    def __str__(self) -> str:
        return f"[{','.join(map(str, self.rows))}|{','.join(map(str, self.cols))}]"


_MINOR = re.compile(r"^\s*\[\s*([\d\s,]+)\|\s*([\d\s,]+)\]\s*$")
_DIAG = re.compile(r"^\s*M\(\s*([\d\s,]+)\)\s*$")


def parse_minor(text: str) -> MinorSpec:
    m = _MINOR.match(text)
    if not m:
        raise ParseError(f"expected a minor like [1,2|3,4], got {text!r}")
    try:
        rows = tuple(int(x) for x in m.group(1).split(",") if x.strip())
        cols = tuple(int(x) for x in m.group(2).split(",") if x.strip())
        return MinorSpec(rows, cols)
    except (ValueError, PreconditionError) as exc:
        raise ParseError(str(exc)) from exc


def parse_diagonal(text: str, c: int) -> CChain:
    m = _DIAG.match(text)
    if not m:
        raise ParseError(f"expected a diagonal like M(1,4,7), got {text!r}")
    return CChain(tuple(int(x) for x in m.group(1).split(",") if x.strip()), c)


def format_diagonal(diag) -> str:
    return f"M({','.join(map(str, diag))})"


@lru_cache(maxsize=100_000)
def _window_poly(n: int, c: int, rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
    cfg = HankelConfig(n, c)
    grid = [[Polynomial.variable(n, entry(cfg, r, col)) for col in cols] for r in rows]
    return determinant(grid)


def window_determinant(cfg: HankelConfig, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Determinant of X restricted to arbitrary row/column index lists.

    Repeated indices are allowed (the result is then zero); every referenced
    entry must lie inside X.
    """
    if len(rows) != len(cols):
        raise PreconditionError("row and column lists differ in length")
    for r in rows:
        for col in cols:
            entry(cfg, r, col)
    return _window_poly(cfg.n, cfg.c, tuple(rows), tuple(cols))


def minor(cfg: HankelConfig, spec: MinorSpec) -> Polynomial:
    spec.validate(cfg)
    return _window_poly(cfg.n, cfg.c, spec.rows, spec.cols)


def maximal_minor(cfg: HankelConfig, diag) -> Polynomial:
    """M(a): the maximal minor whose main diagonal is x_{a_1}, ..., x_{a_s}."""
    ch = as_chain(diag, cfg.c)
    if ch.indices and ch.indices[-1] > cfg.n:
        raise BoundsError(f"diagonal {ch.indices} exceeds n={cfg.n}")
    return minor(cfg, MinorSpec.maximal(ch))


def t_minors(cfg: HankelConfig, t: int) -> list[Polynomial]:
    """All t-minors of X_t, i.e. the maximal minors M(a) over c-chains a of length t."""
    cfg.check_t(t)
    return [maximal_minor(cfg, a) for a in enumerate_chains(cfg.n, cfg.c, t)]


def expand_tableau(cfg: HankelConfig, tab: Tableau) -> Polynomial:
    """The product of maximal minors M(row) over the rows of ``tab``."""
    out = Polynomial.constant(cfg.n, 1)
    for row in tab.rows:
        out = out * maximal_minor(cfg, row)
    return out


def shift_identity_check(cfg: HankelConfig, alpha: Sequence[int], beta: Sequence[int], kk: int) -> bool:
    """Compare both sides of the row-shift / column-shift minor identity.

    Left: sum over |H| = kk of [alpha + e(H) | beta].
    Right: sum over |G| = kk of [alpha | beta + c e(G)].
    """
    t = len(alpha)
    if len(beta) != t or not 1 <= kk <= t:
        raise PreconditionError(f"need len(alpha) == len(beta) and 1 <= kk <= t, got {alpha}, {beta}, {kk}")
    lhs = Polynomial.zero(cfg.n)
    rhs = Polynomial.zero(cfg.n)
    for H in combinations(range(t), kk):
        rows = [a + (1 if i in H else 0) for i, a in enumerate(alpha)]
        lhs = lhs + window_determinant(cfg, rows, beta)
    for G in combinations(range(t), kk):
        cols = [b + (cfg.c if i in G else 0) for i, b in enumerate(beta)]
        rhs = rhs + window_determinant(cfg, alpha, cols)
    return lhs == rhs


def _sort_with_sign(seq: list[int]) -> tuple[int, tuple[int, ...]]:
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    a = list(seq)
    for i in range(len(a)):
        for j in range(len(a) - 1 - i):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                sign = -sign
    return sign, tuple(a)


def _add(acc: dict, key, coeff) -> None:
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _to_maximal(cfg: HankelConfig, rows: tuple[int, ...], cols: tuple[int, ...], memo: dict, depth: int = 0) -> dict:
    """Coefficients over maximal column tuples such that [rows|cols] = sum coeff * [1..t|cols']."""
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if depth > 500:
        raise RecursionError("maximal-minor rewriting did not terminate")
    t = len(rows)
    if len(set(rows)) != t:
        memo[key] = {}
        return {}
    sign, scols = _sort_with_sign(list(cols))
    if not sign:
        memo[key] = {}
        return {}
    j = rows[-1]
    if j == t:
        out = {scols: sign}
        memo[key] = out
        return out
    # smallest h (0-based) such that rows[h:] is the consecutive run ending at j
    h = next(i for i in range(t) if rows[i] == j + i + 1 - t)
    alpha = rows[:h] + tuple(r - 1 for r in rows[h:])
    kk = t - h
    out: dict = {}
    for G in combinations(range(t), kk):
        shifted = tuple(b + (cfg.c if i in G else 0) for i, b in enumerate(scols))
        for mk, coeff in _to_maximal(cfg, alpha, shifted, memo, depth + 1).items():
            _add(out, mk, sign * coeff)
    target = tuple(range(h, t))
    for H in combinations(range(t), kk):
        if H == target:
            continue
        raised = tuple(a + (1 if i in H else 0) for i, a in enumerate(alpha))
        for mk, coeff in _to_maximal(cfg, raised, scols, memo, depth + 1).items():
            _add(out, mk, -sign * coeff)
    memo[key] = out
    return out


def rewrite_to_maximal(cfg: HankelConfig, spec: MinorSpec, verify: bool = True) -> list[tuple[object, CChain]]:
    """Write a minor of X as a rational combination of maximal minors.

    Returns (coefficient, diagonal) pairs with the diagonal of largest
    initial monomial first.  With ``verify`` the combination is re-expanded
    and compared with the minor itself.
    """
    spec.validate(cfg)
    combo = _to_maximal(cfg, spec.rows, spec.cols, {})
    terms = []
    for cols, coeff in combo.items():
        diag = CChain(tuple(b + i * cfg.c for i, b in enumerate(cols)), cfg.c)
        terms.append((coeff, diag))
    terms.sort(key=lambda t: t[1].key())
    if verify:
        target = minor(cfg, spec)
        total = Polynomial.zero(cfg.n)
        for coeff, diag in terms:
            total = total + maximal_minor(cfg, diag) * coeff
        if total != target:
            raise AssertionError(f"rewriting of {spec} does not re-expand to the minor")
        if terms and target and maximal_minor(cfg, terms[0][1]).leading_monomial() != target.leading_monomial():
            raise AssertionError(f"leading maximal minor of {spec} has the wrong initial monomial")
    return terms
