"""c-chains, c-decompositions, shapes, gamma functions and tableaux.

A c-chain is an increasing index sequence whose consecutive gaps all exceed
``c``.  The greedy c-decomposition of a monomial peels off the deglex-largest
c-chain dividing it, over and over; the lengths of the pieces form its shape.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ChainError, DimensionError, ParseError, PreconditionError
from .polyring import Monomial


def is_cchain(seq: Sequence[int], c: int) -> bool:
    """True iff every consecutive gap of ``seq`` exceeds ``c``."""
    return all(seq[i] + c < seq[i + 1] for i in range(len(seq) - 1))


@dataclass(frozen=True)
class CChain:
    indices: tuple[int, ...]
    c: int

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.c < 1:
            raise PreconditionError(f"c must be >= 1, got {self.c}")
        if any(i < 1 for i in idx):
            raise ChainError(f"chain indices must be positive: {idx}")
        if not is_cchain(idx, self.c):
            raise ChainError(f"{idx} is not a {self.c}-chain")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, i):
        return self.indices[i]

    def monomial(self, n: int) -> Monomial:
        return Monomial.from_indices(n, self.indices)

    def key(self) -> tuple:
        """Sort key placing deglex-larger chain monomials first."""
        return chain_sort_key(self.indices)

    def __str__(self) -> str:
        return " ".join(map(str, self.indices))


def chain_sort_key(indices: Sequence[int]) -> tuple:
    # squarefree monomials: longer is larger; equal length compares smallest differing index
    return (-len(indices), tuple(indices))


def as_chain(seq, c: int) -> CChain:
    if isinstance(seq, CChain):
        if seq.c != c:
            raise ChainError(f"chain built for c={seq.c} used with c={c}")
        return seq
    return CChain(tuple(seq), c)


class Tableau:
    """Rows of c-chains whose monomials weakly decrease in deglex, top to bottom."""

    __slots__ = ("rows", "c")

    def __init__(self, rows: Iterable, c: int):
        rows = tuple(as_chain(r, c) for r in rows)
        keys = [r.key() for r in rows]
        if any(keys[i] > keys[i + 1] for i in range(len(keys) - 1)):
            raise PreconditionError("tableau rows must weakly decrease in deglex")
        self.rows = rows
        self.c = c

    @classmethod
    def from_rows(cls, rows: Iterable, c: int) -> "Tableau":
        """Build a tableau, sorting rows into deglex order (stable on ties)."""
        chains = [as_chain(r, c) for r in rows]
        return cls(sorted(chains, key=CChain.key), c)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def as_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r.indices for r in self.rows)

    def multiset(self) -> list[int]:
        return sorted(i for r in self.rows for i in r.indices)

    def monomial(self, n: int) -> Monomial:
        return Monomial.from_indices(n, self.multiset())

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tableau) and self.c == other.c and self.as_tuples() == other.as_tuples()

    def __hash__(self) -> int:
        return hash((self.c, self.as_tuples()))

    def __repr__(self) -> str:
        return f"Tableau({format_tableau(self)!r}, c={self.c})"

    def __str__(self) -> str:
        return format_tableau(self)


def format_tableau(t) -> str:
    rows = t.rows if isinstance(t, Tableau) else t
    return " / ".join(" ".join(str(i) for i in r) for r in rows)


def parse_tableau(text: str, c: int, sort: bool = False) -> Tableau:
    """Parse ``"1 4 7 10 / 1 8 / 2"``."""
    rows = []
    for chunk in text.split("/"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError(f"empty row in {text!r}")
        try:
            rows.append(tuple(int(tok) for tok in chunk.split()))
        except ValueError as exc:
            raise ParseError(f"non-integer entry in {text!r}") from exc
    return Tableau.from_rows(rows, c) if sort else Tableau(rows, c)


def c_decompose(delta: Monomial, c: int) -> list[CChain]:
    """Greedy c-decomposition of ``delta`` into deglex-maximal c-chains.

    Each factor takes the smallest available index, then repeatedly the
    smallest available index exceeding the previous one by more than ``c``,
    consuming one copy per use.
    """
    counts = list(delta.exponents)
    out = []
    remaining = sum(counts)
    while remaining:
        chain: list[int] = []
        for i, k in enumerate(counts):
            if k and (not chain or i + 1 > chain[-1] + c):
                chain.append(i + 1)
                counts[i] -= 1
        remaining -= len(chain)
        out.append(CChain(tuple(chain), c))
    return out


def shape_of(delta: Monomial, c: int) -> tuple[int, ...]:
    return tuple(len(f) for f in c_decompose(delta, c))


def gamma_t(shape: Iterable[int], t: int) -> int:
    """Sum of max(k + 1 - t, 0) over the parts k of ``shape``."""
    if t < 1:
        raise PreconditionError(f"t must be >= 1, got {t}")
    return sum(max(k + 1 - t, 0) for k in shape)


def gamma_tc(delta: Monomial, t: int, c: int) -> int:
    return gamma_t(shape_of(delta, c), t)


def socle(delta: Monomial, c: int) -> CChain:
    if delta.degree == 0:
        raise PreconditionError("the socle of 1 is undefined")
    return c_decompose(delta, c)[0]


def diagonal_minor(chain, c: int | None = None):
    """The maximal minor whose main diagonal is ``chain``, as a minor window."""
    from .hankel import MinorSpec

    if c is None:
        if not isinstance(chain, CChain):
            raise PreconditionError("pass c when chain is a plain sequence")
        c = chain.c
    ch = as_chain(chain, c)
    return MinorSpec.maximal(ch)


def standard_tableau(delta: Monomial, c: int) -> Tableau:
    """Tableau of the standard monomial attached to ``delta`` (rows = c-decomposition)."""
    return Tableau(c_decompose(delta, c), c)


def rebalance_chains(a, b, c: int) -> tuple[CChain, CChain]:
    """Rebalance chains of lengths s > r + 1 into chains of lengths s - 1 and r + 1.

    The index multiset is preserved.  After sorting the first r positions
    componentwise, the first k with a_k <_c b_k splits the pair; if there is
    none, the last entry of the long chain moves to the short one.
    """
    i = list(a.indices if isinstance(a, CChain) else a)
    j = list(b.indices if isinstance(b, CChain) else b)
    s, r = len(i), len(j)
    if s <= r + 1:
        raise PreconditionError(f"need len(a) > len(b) + 1, got {s} and {r}")
    as_chain(i, c)
    as_chain(j, c)
    for h in range(r):
        i[h], j[h] = min(i[h], j[h]), max(i[h], j[h])
    for k in range(r):
        if i[k] + c < j[k]:
            n3 = j[:k] + i[k + 1:]
            n4 = i[:k + 1] + j[k:]
            break
    else:
        n3 = i[:s - 1]
        n4 = j + [i[s - 1]]
    return CChain(tuple(n3), c), CChain(tuple(n4), c)


def pair_product_shape(a, b, c: int, n: int | None = None) -> tuple[int, ...]:
    """Shape of the product of two c-chains; at most two parts, the larger >= both lengths."""
    ai = tuple(a)
    bi = tuple(b)
    as_chain(ai, c)
    as_chain(bi, c)
    if n is None:
        n = max(ai + bi + (1,))
    if ai and max(ai) > n or bi and max(bi) > n:
        raise DimensionError("chain index exceeds n")
    shape = shape_of(Monomial.from_indices(n, ai + bi), c)
    assert len(shape) <= 2, shape
    assert not shape or shape[0] >= max(len(ai), len(bi)), shape
    return shape


def enumerate_chains(n: int, c: int, length: int, top: int | None = None) -> list[tuple[int, ...]]:
    """All c-chains of the given length with entries in 1..top (default n), in lex order."""
    top = n if top is None else top
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], start: int) -> None:
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        need = length - len(prefix) - 1
        for v in range(start, top - need * (c + 1) + 1):
            prefix.append(v)
            rec(prefix, v + c + 1)
            prefix.pop()

    if length == 0:
        return [()]
    rec([], 1)
    return out
