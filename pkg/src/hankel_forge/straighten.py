"""Quasi-sorted tableaux: the rewriting system on pairs of c-chains, the
PF labeling that makes the normal form reconstructible from its entries,
and the quadratic relations of the multi-Rees special fiber.

Rows are c-chains ordered by decreasing deglex monomial (longer rows
first, then lexicographically smaller index tuples first).
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .chains import CChain, Tableau, as_chain, chain_sort_key, enumerate_chains, is_cchain
from .errors import InfeasibleError, NotApplicable, OrderingError, PreconditionError, RangeError
from .hankel import HankelConfig
from .report import Report

_INF = float("inf")

PLUCKER, NEWTYPE, REES_VARIABLE, QUASI_SORT = "plucker", "newtype", "rees_variable", "quasi_sort"


def _row(x) -> tuple[int, ...]:
    return tuple(x.indices) if isinstance(x, CChain) else tuple(int(i) for i in x)


@dataclass(frozen=True)
class LSet:
    """Union of the intervals [a_i - c, a_i] for i >= 2 (1-based)."""

    source: tuple
    c: int

    def __post_init__(self):
        object.__setattr__(self, "source", _row(self.source))

    @property
    def intervals(self) -> list[tuple[int, int]]:
        return [(a - self.c, a) for a in self.source[1:]]

    def __contains__(self, x: int) -> bool:
        return self.interval_of(x) is not None

    def interval_of(self, x: int) -> int | None:
        """0-based position i of a source entry with a_i - c <= x <= a_i, if any (i >= 1)."""
        for i in range(1, len(self.source)):
            if self.source[i] - self.c <= x <= self.source[i]:
                return i
        return None


def is_sorted_pair(a, b, c: int) -> bool:
    a, b = _row(a), _row(b)
    _check_order(a, b)
    r = len(b)
    A = a + (_INF,)
    return all(a[i] <= b[i] <= A[i + 1] for i in range(r))


def is_quasi_sorted_pair(a, b, c: int) -> bool:
    """Quasi-sorted: columnwise a_i <= b_i, and from the first k with b_k > a_{k+1} on, b lies in L(a)."""
    a, b = _row(a), _row(b)
    _check_order(a, b)
    return _qs_pair(a, b, c)


def _check_order(a, b) -> None:
    if chain_sort_key(a) > chain_sort_key(b):
        raise OrderingError(f"{a} must not be smaller than {b} in deglex")


def _qs_pair(a, b, c) -> bool:
    r = len(b)
    if any(a[i] > b[i] for i in range(r)):
        return False
    A = a + (_INF,)
    L = LSet(a, c)
    for i in range(r):
        if b[i] > A[i + 1]:
            return all(x in L for x in b[i:])
    return True


def _sorted_pair(a, b) -> bool:
    A = a + (_INF,)
    return all(a[i] <= b[i] <= A[i + 1] for i in range(len(b)))


def is_quasi_sorted_tableau(T: Tableau) -> bool:
    rows = T.as_tuples()
    ok = all(_qs_pair(rows[i], rows[j], T.c) for i in range(len(rows)) for j in range(i + 1, len(rows)))
    if ok and rows and max(map(len, rows)) - min(map(len, rows)) <= 1:
        # near-equal lengths force sortedness
        if not all(_sorted_pair(rows[i], rows[j]) for i in range(len(rows)) for j in range(i + 1, len(rows))):
            raise AssertionError(f"quasi-sorted tableau with near-equal lengths is not sorted: {T}")
    return ok


def _long_first(a, b):
    return (a, b) if len(a) >= len(b) else (b, a)


def plucker_step(a, b, c: int | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(a meet b, a join b): componentwise min with the tail of the longer row, and componentwise max.

    Applies whenever some entry of the longer row exceeds the entry below
    it and the result differs from the input.
    """
    a, b = _long_first(_row(a), _row(b))
    r = len(b)
    if not any(a[i] > b[i] for i in range(r)):
        raise NotApplicable(f"{a} is already componentwise below {b}")
    lo = tuple(min(a[i], b[i]) for i in range(r)) + a[r:]
    hi = tuple(max(a[i], b[i]) for i in range(r))
    if sorted((lo, hi)) == sorted((a, b)):
        raise NotApplicable(f"exchange leaves {a}, {b} unchanged")
    if c is not None and not (is_cchain(lo, c) and is_cchain(hi, c)):
        raise AssertionError(f"Plucker step on {a}, {b} left the chains")
    return lo, hi


def violation_site(a, b, c: int) -> tuple[int, int] | None:
    """0-based (h, k): first b_h above a_{h+1}, then first k >= h with b_k outside L(a); None if quasi-sorted there."""
    a, b = _row(a), _row(b)
    r = len(b)
    A = a + (_INF,)
    L = LSet(a, c)
    h = next((i for i in range(r) if b[i] > A[i + 1]), None)
    if h is None:
        return None
    k = next((i for i in range(h, r) if b[i] not in L), None)
    if k is None:
        return None
    return h, k


def _gap_index(x: int, a: tuple, c: int) -> int:
    for t in range(len(a)):
        nxt = a[t + 1] - c if t + 1 < len(a) else _INF
        if a[t] < x < nxt:
            return t
    raise AssertionError(f"{x} is neither in L({a}) nor in a gap")


def newtype_step(a, b, c: int, site: tuple[int, int] | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """One exchange of the quasi-sorting proof on a columnwise-ordered pair.

    With b_h..b_{k-1} in L(a) at intervals t_h < ... < t_{k-1} and b_k in
    the gap after a_{t_k}: if t_{k-1} < t_k (or h = k), b_k trades places
    with a_{t_k}; otherwise the maximal run b_{j0}..b_k with consecutive
    intervals trades places with a_{t_{j0}-1}..a_{t_{k-1}}.  The second row
    loses weight, so sum(b) strictly decreases.
    """
    a, b = _row(a), _row(b)
    r = len(b)
    if len(a) < r or any(a[i] > b[i] for i in range(r)):
        raise NotApplicable(f"{a}, {b} are not columnwise ordered")
    found = violation_site(a, b, c)
    if found is None:
        raise NotApplicable(f"{a}, {b} is quasi-sorted")
    if site is not None and tuple(site) != found:
        raise PreconditionError(f"violation site is {found}, not {tuple(site)}")
    h, k = found
    L = LSet(a, c)
    t = {i: L.interval_of(b[i]) for i in range(h, k)}
    t[k] = _gap_index(b[k], a, c)
    if k == h or t[k - 1] < t[k]:
        brows, apos = [k], [t[k]]
    else:
        j0 = k - 1
        while j0 > h and t[j0] == t[j0 - 1] + 1:
            j0 -= 1
        brows = list(range(j0, k + 1))
        apos = list(range(t[j0] - 1, t[k - 1] + 1))
    if len(brows) != len(apos) or min(apos) < 0:
        raise AssertionError(f"exchange positions do not match on {a}, {b}")
    na, nb = list(a), list(b)
    for bi, ai in zip(brows, apos):
        na[ai], nb[bi] = b[bi], a[ai]
    na, nb = tuple(na), tuple(nb)
    if not (is_cchain(na, c) and is_cchain(nb, c)):
        raise AssertionError(f"exchange on {a}, {b} left the chains: {na}, {nb}")
    if sum(nb) >= sum(b):
        raise AssertionError("exchange did not decrease the second row")
    return na, nb


def _ordered(a, b):
    return (a, b) if chain_sort_key(a) <= chain_sort_key(b) else (b, a)


def rewrite_step(a, b, c: int) -> tuple[str, tuple, tuple]:
    """Apply the rule the reduction prescribes to an ordered, non-quasi-sorted pair."""
    a, b = _ordered(_row(a), _row(b))
    if any(a[i] > b[i] for i in range(len(b))):
        lo, hi = plucker_step(a, b, c)
        return PLUCKER, lo, hi
    na, nb = newtype_step(a, b, c)
    return NEWTYPE, na, nb


@dataclass(frozen=True)
class RewriteRelation:
    """A marked binomial: the product over ``lhs`` rewrites to the product over ``rhs``.

    Rows carry T-indices; index 0 marks a plain variable x_t stored as the row (t,).
    """

    kind: str
    lhs: tuple
    rhs: tuple
    lhs_t: tuple = ()
    rhs_t: tuple = ()
    steps: tuple = field(default=(), compare=False)

    def __post_init__(self):
        lhs = tuple(_row(r) for r in self.lhs)
        rhs = tuple(_row(r) for r in self.rhs)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        if not self.lhs_t:
            object.__setattr__(self, "lhs_t", (1,) * len(lhs))
        if not self.rhs_t:
            object.__setattr__(self, "rhs_t", (1,) * len(rhs))
        if Counter(i for r in lhs for i in r) != Counter(i for r in rhs for i in r):
            raise AssertionError(f"index multisets differ in {self}")
        if Counter(map(len, lhs)) != Counter(map(len, rhs)):
            raise AssertionError(f"row lengths differ in {self}")

    def monomial_images(self) -> tuple:
        return monomial_image(self.lhs, self.lhs_t), monomial_image(self.rhs, self.rhs_t)

    def kernel_ok(self) -> bool:
        left, right = self.monomial_images()
        return left == right

    def format(self, show_t: bool = False) -> str:
        return f"{_side(self.lhs, self.lhs_t, show_t)} -> {_side(self.rhs, self.rhs_t, show_t)}"

    def __str__(self) -> str:
        return self.format()


def _side(rows, ts, show_t: bool) -> str:
    ys, xs = [], []
    for r, t in zip(rows, ts):
        if t == 0:
            xs.append(f"x{r[0]}")
        else:
            label = f"Y{t}" if show_t else "Y"
            ys.append(f"{label}[{' '.join(map(str, r))}]")
    return "*".join(ys + xs)


def monomial_image(rows, ts) -> tuple:
    """Image of a product of Y-variables (and x-variables, T-index 0): index multiset and T-monomial."""
    return tuple(sorted(i for r in rows for i in r)), tuple(sorted(t for t in ts if t))


def reduce_pair(a, b, c: int, trace: list | None = None, max_steps: int = 10000) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Rewrite a pair of chains to its quasi-sorted form (rows returned in deglex order)."""
    a, b = _row(a), _row(b)
    as_chain(a, c)
    as_chain(b, c)
    for _ in range(max_steps):
        a, b = _ordered(a, b)
        if _qs_pair(a, b, c):
            return a, b
        kind, na, nb = rewrite_step(a, b, c)
        if trace is not None:
            trace.append(RewriteRelation(kind, (a, b), (na, nb)))
        a, b = na, nb
    raise RuntimeError(f"pair reduction exceeded {max_steps} steps")


def _bad_pairs(rows, c) -> list[tuple[int, int]]:
    return [(i, j) for i in range(len(rows)) for j in range(i + 1, len(rows)) if not _qs_pair(rows[i], rows[j], c)]


def reduce_tableau(
    T: Tableau,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
    trace: list | None = None,
    max_steps: int = 100000,
) -> Tableau:
    """Quasi-sorted form of T by single rewrite steps on offending row pairs.

    ``strategy`` picks the pair: ``"leftmost"`` takes the first offending
    pair (i, j) in lexicographic order, ``"random"`` draws one with ``rng``.
    Rows are re-sorted (stably) after every step.
    """
    if strategy not in ("leftmost", "random"):
        raise PreconditionError(f"unknown strategy {strategy!r}")
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    c = T.c
    rows = sorted(T.as_tuples(), key=chain_sort_key)
    for _ in range(max_steps):
        bad = _bad_pairs(rows, c)
        if not bad:
            return Tableau(rows, c)
        i, j = bad[0] if strategy == "leftmost" else rng.choice(bad)
        kind, x, y = rewrite_step(rows[i], rows[j], c)
        if trace is not None:
            trace.append(RewriteRelation(kind, _ordered(rows[i], rows[j]), (x, y)))
        rows[i], rows[j] = x, y
        rows.sort(key=chain_sort_key)
    raise RuntimeError(f"tableau reduction exceeded {max_steps} steps")


@dataclass(frozen=True)
class PFTable:
    lengths: tuple
    labels: dict

    def label(self, i: int, j: int) -> int:
        return self.labels[(i, j)]

    def rows(self) -> list[list[int]]:
        return [[self.labels[(i, j)] for j in range(1, n + 1)] for i, n in enumerate(self.lengths, start=1)]

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{v:>3}" for v in row) for row in self.rows())


def pf_labeling(lengths: Sequence[int]) -> PFTable:
    """Column-block labels: for t = k down to 1, columns n_{t+1}+1..n_t of rows 1..t, counted column by column."""
    lens = tuple(int(x) for x in lengths)
    if not lens or any(x < 1 for x in lens) or any(lens[i] < lens[i + 1] for i in range(len(lens) - 1)):
        raise PreconditionError(f"row lengths must be positive and weakly decreasing, got {lens}")
    ext = lens + (0,)
    labels = {}
    count = 0
    for t in range(len(lens), 0, -1):
        if ext[t] == ext[t - 1]:
            continue
        for j in range(ext[t] + 1, ext[t - 1] + 1):
            for i in range(1, t + 1):
                count += 1
                labels[(i, j)] = count
    return PFTable(lens, labels)


def canonical_placement(values: Sequence[int], lengths: Sequence[int], c: int) -> Tableau:
    """Rebuild the quasi-sorted tableau with the given entries and row lengths.

    Values go in from largest to smallest, each to the free cell of largest
    PF label that is either the last cell of its row or sits directly left
    of a filled cell whose value exceeds it by more than c.
    """
    pf = pf_labeling(lengths)
    lens = pf.lengths
    vals = sorted((int(v) for v in values), reverse=True)
    if len(vals) != sum(lens):
        raise PreconditionError(f"{len(vals)} values for {sum(lens)} cells")
    filled: dict = {}
    by_label = sorted(pf.labels.items(), key=lambda kv: -kv[1])
    for v in vals:
        spot = None
        for (i, j), _ in by_label:
            if (i, j) in filled:
                continue
            if j == lens[i - 1] or ((i, j + 1) in filled and v + c < filled[(i, j + 1)]):
                spot = (i, j)
                break
        if spot is None:
            raise InfeasibleError(f"no admissible cell for {v}")
        filled[spot] = v
    rows = [tuple(filled[(i, j)] for j in range(1, n + 1)) for i, n in enumerate(lens, start=1)]
    return Tableau(rows, c)


# multi-Rees special fiber


def y_variables(n: int, c: int, tau: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Y-variables (T-index, chain) with chain length tau[T-index - 1]."""
    cfg = HankelConfig(n, c)
    out = []
    for i, t in enumerate(tau, start=1):
        cfg.check_t(t)
        out += [(i, a) for a in enumerate_chains(n, c, t)]
    return out


def _normal_pair(u, v, tau, c):
    """Normal form of Y_u * Y_v with u, v = (T-index, chain)."""
    (i, a), (j, b) = u, v
    x, y = reduce_pair(a, b, c)
    if len(x) == len(y):
        ti, tj = sorted((i, j))
    else:
        # lengths pin the T-index unless several T-indices share a length
        ti = i if len(a) == len(x) else j
        tj = j if ti == i else i
    return (ti, x), (tj, y)


def _y_key(u):
    i, a = u
    return (chain_sort_key(a), i)


def _canon_monomial(vars_):
    return tuple(sorted(vars_, key=_y_key))


def is_standard_y_monomial(vars_, c: int) -> bool:
    """Quasi-sorted rows, and among equal-length rows the deglex-larger carries the smaller T-index."""
    vs = _canon_monomial(vars_)
    for p in range(len(vs)):
        for q in range(p + 1, len(vs)):
            (i, a), (j, b) = vs[p], vs[q]
            if not _qs_pair(a, b, c):
                return False
            if len(a) == len(b) and a != b and i > j:
                return False
    return True


def rees_quadrics(n: int, c: int, tau: Sequence[int]) -> list[RewriteRelation]:
    """Quadratic relations of the multi-Rees algebra of the chain ideals of sizes tau.

    Type (i): every non-standard product of two Y-variables rewrites to its
    quasi-sorted normal form.  Type (ii): x_t * Y_a -> x_{a_h} * Y_b where
    a_{h-1} <_c t < a_h (a_0 = -infinity) and b is a with a_h replaced by t.
    Every relation is checked to lie in the kernel of the monomial map.
    """
    tau = tuple(int(t) for t in tau)
    ys = y_variables(n, c, tau)
    out: list[RewriteRelation] = []
    for u, v in combinations_with_replacement(ys, 2):
        if is_standard_y_monomial((u, v), c):
            continue
        lhs = _canon_monomial((u, v))
        nu, nv = _normal_pair(lhs[0], lhs[1], tau, c)
        trace: list = []
        reduce_pair(lhs[0][1], lhs[1][1], c, trace=trace)
        kind = trace[0].kind if len(trace) == 1 else QUASI_SORT
        rel = RewriteRelation(
            kind,
            (lhs[0][1], lhs[1][1]),
            (nu[1], nv[1]),
            (lhs[0][0], lhs[1][0]),
            (nu[0], nv[0]),
            tuple(trace),
        )
        out.append(rel)
    for p, a in ys:
        for h in range(len(a)):
            lo = a[h - 1] + c if h else 0
            for t in range(lo + 1, a[h]):
                b = a[:h] + (t,) + a[h + 1:]
                out.append(RewriteRelation(REES_VARIABLE, (a, (t,)), (b, (a[h],)), (p, 0), (p, 0)))
    for rel in out:
        if not rel.kernel_ok():
            raise AssertionError(f"relation outside the kernel: {rel.format(True)}")
    return out


def verify_standard_monomials(n: int, c: int, tau: Sequence[int], degree: int = 2, max_monomials: int = 2_000_000) -> Report:
    """Non-standard Y-monomials of the given degree are rewritable; standard ones have distinct images."""
    tau = tuple(int(t) for t in tau)
    rep = Report("rees", {"n": n, "c": c, "tau": list(tau), "degree": degree})
    with rep.timed("relations"):
        rels = rees_quadrics(n, c, tau)
    quad = [r for r in rels if r.kind != REES_VARIABLE]
    heads = {_canon_monomial(zip(r.lhs_t, r.lhs)) for r in quad}
    ys = y_variables(n, c, tau)
    rep.details["y_variables"] = len(ys)
    rep.details["relations"] = {"quadratic": len(quad), "variable_swap": len(rels) - len(quad)}
    if degree < 1:
        raise PreconditionError("degree must be >= 1")
    seen: dict = {}
    standard = nonstandard = 0
    with rep.timed("monomials"):
        for count, mono in enumerate(combinations_with_replacement(ys, degree)):
            if count >= max_monomials:
                raise RangeError(f"more than {max_monomials} monomials of degree {degree}")
            mono = _canon_monomial(mono)
            if is_standard_y_monomial(mono, c):
                standard += 1
                img = monomial_image([a for _, a in mono], [i for i, _ in mono])
                if img in seen:
                    rep.fail({"same_image": [_fmt_mono(seen[img]), _fmt_mono(mono)]})
                seen[img] = mono
            else:
                nonstandard += 1
                if degree >= 2 and not any(
                    _canon_monomial((mono[p], mono[q])) in heads
                    for p in range(len(mono))
                    for q in range(p + 1, len(mono))
                ):
                    rep.fail({"irreducible_nonstandard": _fmt_mono(mono)})
    for rel in quad:
        rhs = tuple(zip(rel.rhs_t, rel.rhs))
        if not is_standard_y_monomial(rhs, c):
            rep.fail({"nonstandard_rhs": rel.format(True)})
            break
    rep.details["standard"] = standard
    rep.details["nonstandard"] = nonstandard
    with rep.timed("mixed"):
        # products x_t * Y_a that are not heads of variable-swap relations
        swap_heads = {(r.lhs_t[0], r.lhs[0], r.lhs[1][0]) for r in rels if r.kind == REES_VARIABLE}
        images: dict = {}
        for p, a in ys:
            for t in range(1, n + 1):
                if (p, a, t) in swap_heads:
                    continue
                img = (tuple(sorted(a + (t,))), p)
                if img in images:
                    rep.fail({"mixed_same_image": [images[img], (p, a, t)]})
                images[img] = (p, a, t)
    return rep


def _fmt_mono(mono) -> str:
    return "*".join(f"Y{i}[{' '.join(map(str, a))}]" for i, a in mono)


def random_tableau(rng: random.Random, n_max: int = 12, c_max: int = 3, rows_max: int = 4, len_max: int = 4) -> Tableau:
    """A random tableau of c-chains (rows drawn independently, then sorted)."""
    while True:
        c = rng.randint(1, c_max)
        n = rng.randint(2, n_max)
        m = HankelConfig(n, c).m
        top = min(m, len_max)
        k = rng.randint(1, rows_max)
        rows = []
        for _ in range(k):
            L = rng.randint(1, top)
            rows.append(rng.choice(enumerate_chains(n, c, L)))
        return Tableau.from_rows(rows, c)


def confluence_check(seed: int, step_cap: int = 10000) -> Report:
    """Reduce one random tableau two ways and compare with the PF reconstruction."""
    rng = random.Random(seed)
    T = random_tableau(rng)
    rep = Report("confluence", {"seed": seed, "tableau": str(T), "c": T.c})
    trace: list = []
    try:
        left = reduce_tableau(T, "leftmost", trace=trace, max_steps=step_cap)
        other = reduce_tableau(T, "random", rng=random.Random(seed + 1_000_003), max_steps=step_cap)
    except RuntimeError as exc:
        return rep.fail({"nontermination": str(exc)})
    rep.details["normal_form"] = str(left)
    rep.details["steps"] = len(trace)
    rep.expect(is_quasi_sorted_tableau(left), {"not_quasi_sorted": str(left)})
    rep.expect(left.multiset() == T.multiset(), {"multiset_changed": str(left)})
    rep.expect(sorted(left.shape) == sorted(T.shape), {"shape_changed": list(left.shape)})
    rep.expect(left == other, {"strategies_disagree": [str(left), str(other)]})
    try:
        placed = canonical_placement(T.multiset(), left.shape, T.c)
    except InfeasibleError as exc:
        return rep.fail({"placement_infeasible": str(exc)})
    rep.expect(placed == left, {"placement_differs": [str(placed), str(left)]})
    return rep
