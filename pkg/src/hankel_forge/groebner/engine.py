"""Buchberger's algorithm over the rationals.

Pairs are selected by the normal strategy (smallest total degree of the lcm,
then smallest lcm in the term order) and pruned with the Gebauer-Moeller
criteria.  Because selection is degree-first, a run on homogeneous input
may be cut off at a degree D and still yields a basis that is correct in
every degree <= D.
"""
from __future__ import annotations

import heapq
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from operator import neg
from typing import Iterable, Sequence

from ..errors import BudgetExceeded, DimensionError, PreconditionError
from ..polyring import Monomial, Polynomial, _coerce

DEFAULT_BUDGET_SEC = 600.0


def default_budget_sec() -> float:
    raw = os.environ.get("HANKEL_FORGE_BUDGET_SEC")
    return float(raw) if raw else DEFAULT_BUDGET_SEC


class DegLex:
    """Degree-lex with x1 > x2 > ... > xn."""

    name = "deglex"

    def key(self, e):
        return (sum(e), e)

    def neg(self, e):
        return (-sum(e),) + tuple(map(neg, e))

    def __eq__(self, other):
        return isinstance(other, DegLex)

    def __hash__(self):
        return hash("deglex")

    def __repr__(self):
        return "DegLex()"


class BlockOrder:
    """Product of degree-lex orders on consecutive variable blocks, earlier blocks dominating."""

    name = "block"

    def __init__(self, sizes: Sequence[int]):
        self.sizes = tuple(sizes)
        cuts = [0]
        for s in self.sizes:
            cuts.append(cuts[-1] + s)
        self._spans = list(zip(cuts, cuts[1:]))

    def key(self, e):
        out: tuple = ()
        for a, b in self._spans:
            part = e[a:b]
            out += (sum(part),) + part
        return out

    def neg(self, e):
        return tuple(map(neg, self.key(e)))

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and self.sizes == other.sizes

    def __hash__(self):
        return hash(("block", self.sizes))

    def __repr__(self):
        return f"BlockOrder({list(self.sizes)})"


DEGLEX = DegLex()


@dataclass
class Budget:
    """Hard resource limits for one run; exceeding any raises :class:`BudgetExceeded`."""

    time_sec: float = field(default_factory=default_budget_sec)
    max_basis: int = 50_000
    max_degree: int = 64
    max_pairs: int = 20_000_000


def _mask(e) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


class _Elem:
    __slots__ = ("d", "lm", "mask", "tail", "deg", "active")

    def __init__(self, d: dict, lm: tuple):
        self.d = d
        self.lm = lm
        self.mask = _mask(lm)
        self.tail = [(e, c) for e, c in d.items() if e != lm]
        self.deg = sum(lm)
        self.active = True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _monic(d: dict, order) -> tuple[dict, tuple]:
    lm = max(d, key=order.key)
    lc = d[lm]
    if lc != 1:
        inv = Fraction(1) / lc
        d = {e: _coerce(c * inv) for e, c in d.items()}
    return d, lm


class Reducer:
    """A growing set of monic polynomials used as divisors."""

    def __init__(self, order, nvars: int):
        self.order = order
        self.nvars = nvars
        self.elems: list[_Elem] = []
        self._hits: dict = {}
        self._misses: dict = {}
        self._version = 0

    def add(self, el: _Elem) -> None:
        self.elems.append(el)
        self._version += 1

    def deactivate(self, el: _Elem) -> None:
        el.active = False
        self._hits = {k: v for k, v in self._hits.items() if v is not el}

    def find(self, e) -> _Elem | None:
        hit = self._hits.get(e)
        if hit is not None:
            return hit
        if self._misses.get(e) == self._version:
            return None
        em = _mask(e)
        for g in self.elems:
            if g.active and not (g.mask & ~em) and _divides(g.lm, e):
                self._hits[e] = g
                return g
        self._misses[e] = self._version
        return None

    def reduce(self, f: dict, top_only: bool = False) -> dict:
        """Normal form of ``f`` (a fresh dict); ``top_only`` stops at the first irreducible leading term."""
        order = self.order
        f = dict(f)
        heap = [(order.neg(e), e) for e in f]
        heapq.heapify(heap)
        rem: dict = {}
        push, pop = heapq.heappush, heapq.heappop
        while heap:
            _, e = pop(heap)
            c = f.pop(e, 0)
            if not c:
                continue
            g = self.find(e)
            if g is None:
                rem[e] = c
                if top_only:
                    for k, v in f.items():
                        rem[k] = v
                    return rem
                continue
            q = tuple(a - b for a, b in zip(e, g.lm))
            for ge, gc in g.tail:
                te = tuple(a + b for a, b in zip(ge, q))
                v = f.get(te)
                if v is None:
                    f[te] = -c * gc
                    push(heap, (order.neg(te), te))
                else:
                    v = v - c * gc
                    if v:
                        f[te] = v
                    else:
                        del f[te]
        return rem


def spoly(f: _Elem, g: _Elem) -> dict:
    """S-polynomial of two monic elements."""
    L = _lcm(f.lm, g.lm)
    qf = tuple(a - b for a, b in zip(L, f.lm))
    qg = tuple(a - b for a, b in zip(L, g.lm))
    out: dict = {}
    for e, c in f.tail:
        out[tuple(a + b for a, b in zip(e, qf))] = c
    for e, c in g.tail:
        te = tuple(a + b for a, b in zip(e, qg))
        v = out.get(te, 0) - c
        if v:
            out[te] = v
        else:
            out.pop(te, None)
    return out


class IdealPresentation:
    """Generators of an ideal together with the term order they are read in.

    Zero generators are dropped and the rest are made monic.
    """

    def __init__(self, generators: Iterable[Polynomial], order=DEGLEX, n: int | None = None):
        gens = [g for g in generators if g]
        ns = {g.n for g in gens}
        if n is not None:
            ns.add(n)
        if len(ns) > 1:
            raise DimensionError(f"generators over different variable counts: {sorted(ns)}")
        self.n = ns.pop() if ns else None
        self.order = order
        self.generators = [Polynomial._raw(g.n, _monic(dict(g._d), order)[0]) for g in gens]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self) -> str:
        return f"IdealPresentation({len(self.generators)} generators, n={self.n}, order={self.order!r})"


@dataclass
class RunStats:
    pairs_reduced: int = 0
    pairs_zero: int = 0
    pairs_skipped_criteria: int = 0
    pairs_truncated: int = 0
    inputs_zero: int = 0
    max_degree_seen: int = 0
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class GroebnerBasis:
    """Result of a Buchberger run: monic basis elements plus run metadata."""

    def __init__(self, elements: list[Polynomial], order, nvars: int, truncated_at: int | None, stats: RunStats):
        self.elements = elements
        self.order = order
        self.nvars = nvars
        self.truncated_at = truncated_at
        self.stats = stats
        self._reducer = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def _lm(self, p: Polynomial) -> tuple:
        return max(p._d, key=self.order.key)

    def leading_monomials(self) -> list[Monomial]:
        return [Monomial(self._lm(p)) for p in self.elements]

    def reducer(self) -> Reducer:
        if self._reducer is None:
            red = Reducer(self.order, self.nvars)
            for p in self.elements:
                red.add(_Elem(p._d, self._lm(p)))
            self._reducer = red
        return self._reducer

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.n != self.nvars:
            raise DimensionError(f"polynomial over {f.n} variables, basis over {self.nvars}")
        return Polynomial._raw(self.nvars, self.reducer().reduce(f._d))

    def contains(self, f: Polynomial) -> bool:
        if self.truncated_at is not None and f and f.degree() > self.truncated_at:
            raise PreconditionError(
                f"membership of a degree-{f.degree()} element needs a basis beyond degree {self.truncated_at}"
            )
        return not self.normal_form(f)


def _prepare(gens: Iterable[Polynomial], order) -> tuple[int, list[tuple[dict, tuple]]]:
    gens = [g for g in gens if g]
    if not gens:
        raise PreconditionError("need at least one nonzero generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise DimensionError("generators over different variable counts")
    return n, [_monic(dict(g._d), order) for g in gens]


def _is_homogeneous(d: dict) -> bool:
    return len({sum(e) for e in d}) == 1


def buchberger(
    gens,
    order=DEGLEX,
    truncate: int | None = None,
    budget: Budget | None = None,
    reduced: bool = True,
) -> GroebnerBasis:
    """Groebner basis of the ideal generated by ``gens``.

    ``gens`` is a list of polynomials or an object with ``generators`` and
    ``order`` attributes.  With ``truncate`` (homogeneous input only) pairs
    whose lcm has degree above the bound are skipped and the result is a
    basis valid up to that degree.
    """
    if hasattr(gens, "generators"):
        order = getattr(gens, "order", order)
        gens = gens.generators
    budget = budget or Budget()
    t0 = time.monotonic()
    n, prepared = _prepare(gens, order)
    if truncate is not None and not all(_is_homogeneous(d) for d, _ in prepared):
        raise PreconditionError("degree truncation requires homogeneous generators")
    stats = RunStats()
    if prepared and all(len(d) == 1 for d, _ in prepared):
        # monomials: the minimal generators already form the reduced basis
        lms = sorted({lm for _, lm in prepared}, key=order.key, reverse=True)
        minimal = [e for e in lms if not any(f != e and _divides(f, e) for f in lms)]
        if truncate is not None:
            minimal = [e for e in minimal if sum(e) <= truncate]
        stats.seconds = time.monotonic() - t0
        return GroebnerBasis([Polynomial._raw(n, {e: 1}) for e in minimal], order, n, truncate, stats)
    red = Reducer(order, n)
    elems = red.elems
    tick = count()
    # queue entries: (degree, order key of lcm or lm, tiebreak, kind, payload)
    queue: list = []
    for d, lm in prepared:
        heapq.heappush(queue, (sum(lm), order.key(lm), next(tick), 0, d))
    pairs: dict = {}  # (i, j) -> lcm, live pairs for the GM update

    def log():
        return {"basis_size": len(elems), "pending": len(queue), **stats.as_dict()}

    def check_budget():
        if time.monotonic() - t0 > budget.time_sec:
            raise BudgetExceeded(f"time budget of {budget.time_sec}s exceeded", log())
        if len(elems) > budget.max_basis:
            raise BudgetExceeded(f"basis grew past {budget.max_basis} elements", log())
        if stats.pairs_reduced > budget.max_pairs:
            raise BudgetExceeded(f"more than {budget.max_pairs} pairs reduced", log())

    def insert(d: dict) -> None:
        d, lm = _monic(d, order)
        h = _Elem(d, lm)
        hi = len(elems)
        # Gebauer-Moeller update
        cands = []
        for i, g in enumerate(elems):
            if g.active:
                L = _lcm(g.lm, lm)
                cands.append((i, L, all(not (a and b) for a, b in zip(g.lm, lm))))
        keep = []
        for idx, (i, L, coprime) in enumerate(cands):
            if coprime:
                keep.append((i, L, True))
                continue
            dominated = False
            for jdx, (j, L2, _) in enumerate(cands):
                if jdx != idx and _divides(L2, L) and (L2 != L or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, L, False))
        for key in list(pairs):
            i, j = key
            L = pairs[key]
            if (
                _divides(lm, L)
                and _lcm(elems[i].lm, lm) != L
                and _lcm(elems[j].lm, lm) != L
            ):
                del pairs[key]
                stats.pairs_skipped_criteria += 1
        for i, L, coprime in keep:
            if coprime:
                stats.pairs_skipped_criteria += 1
                continue
            pairs[(i, hi)] = L
            heapq.heappush(queue, (sum(L), order.key(L), next(tick), 1, (i, hi)))
        stats.pairs_skipped_criteria += len(cands) - len(keep)
        for g in elems:
            if g.active and _divides(lm, g.lm):
                red.deactivate(g)
        red.add(h)
        stats.max_degree_seen = max(stats.max_degree_seen, h.deg)

    while queue:
        deg, _, _, kind, payload = heapq.heappop(queue)
        if truncate is not None and deg > truncate:
            stats.pairs_truncated += 1 + sum(1 for q in queue if q[3] == 1)
            queue.clear()
            break
        if deg > budget.max_degree:
            raise BudgetExceeded(f"degree {deg} exceeds the budget of {budget.max_degree}", log())
        check_budget()
        if kind == 0:
            r = red.reduce(payload)
            if r:
                insert(r)
            else:
                stats.inputs_zero += 1
            continue
        if payload not in pairs:
            continue
        del pairs[payload]
        i, j = payload
        stats.pairs_reduced += 1
        r = red.reduce(spoly(elems[i], elems[j]))
        if r:
            insert(r)
        else:
            stats.pairs_zero += 1

    basis = [g for g in elems if g.active]
    if reduced:
        basis.sort(key=lambda g: order.key(g.lm), reverse=True)
        result = []
        for g in basis:
            others = Reducer(order, n)
            others.elems = [h for h in basis if h is not g]
            tail = others.reduce({e: c for e, c in g.tail})
            tail[g.lm] = 1
            result.append(tail)
        out = [Polynomial._raw(n, d) for d in result]
    else:
        out = [Polynomial._raw(n, g.d) for g in basis]
    stats.seconds = time.monotonic() - t0
    return GroebnerBasis(out, order, n, truncate, stats)


def s_pairs_reduce_to_zero(polys: Sequence[Polynomial], order=DEGLEX, product_criterion: bool = True, budget: Budget | None = None) -> tuple[bool, dict]:
    """Check the Buchberger criterion on ``polys`` by reducing every S-pair against the set itself.

    Only the product criterion (coprime leading monomials) is used to skip
    pairs, so a ``True`` verdict is a direct certificate.  Returns the
    verdict and a summary with the first offending pair, if any.
    """
    budget = budget or Budget()
    t0 = time.monotonic()
    n, prepared = _prepare(polys, order)
    red = Reducer(order, n)
    els = [_Elem(d, lm) for d, lm in prepared]
    for el in els:
        red.add(el)
    checked = skipped = 0
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            a, b = els[i], els[j]
            if product_criterion and all(not (x and y) for x, y in zip(a.lm, b.lm)):
                skipped += 1
                continue
            if time.monotonic() - t0 > budget.time_sec:
                raise BudgetExceeded("time budget exceeded during S-pair check", {"checked": checked})
            checked += 1
            r = red.reduce(spoly(a, b))
            if r:
                return False, {
                    "checked": checked,
                    "skipped": skipped,
                    "pair": [i, j],
                    "remainder_lm": list(max(r, key=order.key)),
                }
    return True, {"checked": checked, "skipped": skipped, "seconds": time.monotonic() - t0}


def leading_monomial(p: Polynomial, order=DEGLEX) -> Monomial:
    return Monomial(max(p._d, key=order.key))
