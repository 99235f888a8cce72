"""Verifiers for the Groebner-basis, symbolic-power and primary-decomposition
statements about the minors of X.  Each returns a :class:`Report`.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from ..chains import standard_tableau, Tableau, gamma_t, gamma_tc, rebalance_chains
from ..errors import BudgetExceeded, PreconditionError, RangeError
from ..hankel import HankelConfig, expand_tableau, t_minors
from ..ideals import (
    MonomialIdeal,
    chain_product_ideal,
    enumerate_Ar,
    intersect_prime_powers,
    jt_generators,
    monomials_up_to,
    socle_inequality_holds,
)
from ..polyring import Monomial, Polynomial, _coerce
from ..report import BUDGET, Report
from .engine import Budget, buchberger, s_pairs_reduce_to_zero


def _mono(e) -> str:
    return str(Monomial(e))


def _check_tau(cfg: HankelConfig, tau: Sequence[int]) -> tuple[int, ...]:
    tau = tuple(int(t) for t in tau)
    if not tau or any(t < 1 for t in tau) or any(tau[i] < tau[i + 1] for i in range(len(tau) - 1)):
        raise PreconditionError(f"tau must be weakly decreasing positive sizes, got {tau}")
    if tau[0] > cfg.m:
        raise RangeError(f"largest part {tau[0]} exceeds m={cfg.m}")
    return tau


def product_generators(cfg: HankelConfig, tau: Sequence[int]) -> list[Polynomial]:
    """All products of maximal minors whose sizes form the multiset ``tau``."""
    tau = _check_tau(cfg, tau)
    out = [Polynomial.constant(cfg.n, 1)]
    for t, k in sorted(Counter(tau).items(), reverse=True):
        minors = t_minors(cfg, t)
        block = []
        for combo in combinations_with_replacement(range(len(minors)), k):
            p = minors[combo[0]]
            for i in combo[1:]:
                p = p * minors[i]
            block.append(p)
        out = [a * b for a in out for b in block]
    return out


def symbolic_exponents(cfg: HankelConfig, t: int, s: int) -> list[tuple[int, ...]]:
    """Shapes (as size multisets) of the summands I_t^{a_t} ... I_m^{a_m} with sum (i - t + 1) a_i = s."""
    cfg.check_t(t)
    out = []

    def rec(i: int, rem: int, sizes: list[int]) -> None:
        if i > cfg.m:
            if rem == 0:
                out.append(tuple(sorted(sizes, reverse=True)))
            return
        w = i - t + 1
        for a in range(rem // w + 1):
            rec(i + 1, rem - a * w, sizes + [i] * a)

    rec(t, s, [])
    return out


def symbolic_sum_generators(cfg: HankelConfig, t: int, s: int) -> list[Polynomial]:
    gens: list[Polynomial] = []
    for shape in symbolic_exponents(cfg, t, s):
        gens += product_generators(cfg, shape)
    return gens


def _divisible(E: np.ndarray, L: np.ndarray, chunk: int = 20000) -> np.ndarray:
    """Row mask: which rows of E are divisible by at least one row of L."""
    out = np.zeros(len(E), dtype=bool)
    if not len(L) or not len(E):
        return out
    for a in range(0, len(E), chunk):
        blk = E[a:a + chunk]
        out[a:a + chunk] = (L[None, :, :] <= blk[:, None, :]).all(axis=2).any(axis=1)
    return out


def _budget_report(rep: Report, exc: BudgetExceeded) -> Report:
    rep.verdict = BUDGET
    rep.details["budget"] = {"message": str(exc), "partial": exc.log}
    return rep


def verify_minors_gb(n: int, c: int, t: int, budget: Budget | None = None) -> Report:
    """The t-minors of X_t form a Groebner basis and their initial ideal is the t-chain ideal."""
    cfg = HankelConfig(n, c)
    cfg.check_t(t)
    rep = Report("gb", {"n": n, "c": c, "t": t})
    minors = t_minors(cfg, t)
    try:
        with rep.timed("s_pairs"):
            ok, info = s_pairs_reduce_to_zero(minors, budget=budget)
        rep.details["s_pairs"] = info
        rep.expect(ok, {"s_pair_not_reducing": info.get("pair"), "remainder_lm": info.get("remainder_lm")})
        with rep.timed("buchberger"):
            gb = buchberger(minors, budget=budget)
    except BudgetExceeded as exc:
        return _budget_report(rep, exc)
    initial = MonomialIdeal(n, [m.exponents for m in gb.leading_monomials()])
    expected = jt_generators(n, c, t)
    lead = MonomialIdeal(n, [p.leading_monomial().exponents for p in minors])
    rep.details["basis_size"] = len(gb)
    rep.details["initial_ideal"] = [str(m) for m in initial.generators]
    rep.expect(lead == expected, {"minor_leading_terms_differ_from": [str(m) for m in expected.generators]})
    rep.expect(initial == expected, {"initial_ideal": rep.details["initial_ideal"]})
    return rep


def verify_symbolic_power(
    n: int,
    c: int,
    t: int,
    s: int,
    bound: int | None = None,
    budget: Budget | None = None,
    socle_check: bool = True,
) -> Report:
    """Compare in(sum of products of minors) with the gamma criterion and the facet-prime oracle."""
    cfg = HankelConfig(n, c)
    cfg.check_t(t)
    if s < 1:
        raise PreconditionError(f"s must be >= 1, got {s}")
    bound = s * t + 2 if bound is None else bound
    rep = Report("sympow", {"n": n, "c": c, "t": t, "s": s, "bound": bound})
    rep.details["summands"] = [list(x) for x in symbolic_exponents(cfg, t, s)]
    gens = symbolic_sum_generators(cfg, t, s)
    try:
        with rep.timed("buchberger"):
            gb = buchberger(gens, truncate=bound, budget=budget, reduced=False)
    except BudgetExceeded as exc:
        return _budget_report(rep, exc)
    lms = [m.exponents for m in gb.leading_monomials()]
    rep.details["basis_size"] = len(lms)
    with rep.timed("basis_gamma"):
        for e in lms:
            if gamma_tc(Monomial(e), t, c) < s:
                rep.fail({"basis_leading_monomial_below_order": _mono(e)})
                break
    with rep.timed("oracles"):
        E = np.array(list(monomials_up_to(n, bound)), dtype=np.int64)
        in_initial = _divisible(E, np.array(lms, dtype=np.int64).reshape(-1, n))
        primes = enumerate_Ar(n, c, t - 1)
        comp = np.zeros((n, len(primes)), dtype=np.int64)
        for k, p in enumerate(primes):
            for i in p.complement:
                comp[i - 1, k] = 1
        by_primes = (E @ comp).min(axis=1) >= s
        by_gamma = np.array([gamma_tc(Monomial(e), t, c) >= s for e in map(tuple, E)], dtype=bool)
    rep.details["monomials_checked"] = int(len(E))
    rep.details["members"] = int(by_gamma.sum())
    for name, other in (("facet_primes", by_primes), ("initial_ideal", in_initial)):
        bad = np.nonzero(by_gamma != other)[0]
        if len(bad):
            e = tuple(int(x) for x in E[bad[0]])
            rep.fail({"monomial": _mono(e), "gamma_criterion": bool(by_gamma[bad[0]]), name: bool(other[bad[0]])})
    if socle_check:
        with rep.timed("socle_inequality"):
            for row in E[by_primes]:
                delta = Monomial(tuple(int(x) for x in row))
                if not socle_inequality_holds(delta, t, s, c):
                    rep.fail({"socle_inequality_fails_for": str(delta)})
                    break
    return rep


def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for p in range(min(total, largest), 0, -1):
        for rest in _partitions(total - p, p):
            yield (p,) + rest


def _chain_power_witness(cfg: HankelConfig, shape: Sequence[int]) -> Monomial:
    """A monomial whose c-decomposition has the given shape: nested prefixes of the longest chain."""
    top = [1 + i * (cfg.c + 1) for i in range(cfg.m)]
    idx = [a for k in shape for a in top[:k]]
    return Monomial.from_indices(cfg.n, idx)


def _in_symbolic(delta: Monomial, cfg: HankelConfig, j: int, e: int) -> bool:
    return all(sum(delta.exponents[i - 1] for i in p.complement) >= e for p in enumerate_Ar(cfg.n, cfg.c, j - 1))


def irredundancy_witnesses(cfg: HankelConfig, t: int, k: int, max_size: int | None = None) -> dict:
    """For each component of the decomposition of the k-th power of the t-minor ideal, a monomial
    lying in all other components but not in that one.

    Components are indexed by j = u..t with exponents k(t + 1 - j).  The
    search runs over shapes, realised by nested chain prefixes, and every
    witness is re-checked against the facet primes directly.
    """
    cfg.check_t(t)
    m = cfg.m
    u = max(1, m - k * (m - t))
    comps = {j: k * (t + 1 - j) for j in range(u, t + 1)}
    max_size = max_size or k * m + 2 * m
    out: dict = {}
    if len(comps) == 1:
        return out
    for j0 in comps:
        found = None
        for size in range(1, max_size + 1):
            for lam in _partitions(size, m):
                if gamma_t(lam, j0) >= comps[j0]:
                    continue
                if all(gamma_t(lam, j) >= e for j, e in comps.items() if j != j0):
                    found = lam
                    break
            if found:
                break
        if found is None:
            out[j0] = None
            continue
        delta = _chain_power_witness(cfg, found)
        ok = not _in_symbolic(delta, cfg, j0, comps[j0]) and all(
            _in_symbolic(delta, cfg, j, e) for j, e in comps.items() if j != j0
        )
        out[j0] = str(delta) if ok else None
    return out


def verify_primary_decomposition(
    n: int,
    c: int,
    tau: Sequence[int],
    bound: int | None = None,
    budget: Budget | None = None,
    gb_check: bool = True,
) -> Report:
    """Products of minors of shape tau: Groebner basis, initial ideal, facet-prime decomposition, irredundancy."""
    cfg = HankelConfig(n, c)
    tau = _check_tau(cfg, tau)
    bound = sum(tau) + 2 if bound is None else bound
    rep = Report("primdec", {"n": n, "c": c, "tau": list(tau), "bound": bound})
    gens = product_generators(cfg, tau)
    lead = MonomialIdeal(n, [p.leading_monomial().exponents for p in gens])
    rep.details["products"] = len(gens)
    if gb_check:
        try:
            with rep.timed("buchberger"):
                gb = buchberger(gens, budget=budget, reduced=False)
        except BudgetExceeded as exc:
            return _budget_report(rep, exc)
        rep.details["basis_size"] = len(gb)
        rep.details["pairs_reduced"] = gb.stats.pairs_reduced
        for m in gb.leading_monomials():
            if m not in lead:
                rep.fail({"leading_monomial_outside_products": str(m)})
                break
    with rep.timed("monomial"):
        expected = chain_product_ideal(n, c, tau)
        rep.expect(lead == expected, {"product_leading_terms": [str(m) for m in lead.generators]})
        comps = [(p, gamma_t(tau, j)) for j in range(1, tau[0] + 1) for p in enumerate_Ar(n, c, j - 1)]
        inter = intersect_prime_powers(n, comps, bound)
        rep.expect(
            inter == expected.truncate(bound),
            {"facet_intersection": [str(m) for m in inter.generators]},
        )
    if len(set(tau)) == 1:
        t, k = tau[0], len(tau)
        with rep.timed("irredundancy"):
            m = cfg.m
            u = max(1, m - k * (m - t))
            parts = [(p, k * (t + 1 - j)) for j in range(u, t + 1) for p in enumerate_Ar(n, c, j - 1)]
            rep.expect(
                intersect_prime_powers(n, parts, bound) == expected.truncate(bound),
                {"power_decomposition_differs": {"u": u}},
            )
            wit = irredundancy_witnesses(cfg, t, k)
            rep.details["irredundancy_witnesses"] = {str(j): w for j, w in wit.items()}
            missing = [j for j, w in wit.items() if w is None]
            rep.expect(not missing, {"redundant_components": missing})
    return rep


def shape_subtableau(mu: Tableau, tau: Sequence[int]) -> Tableau:
    """Rows of shape tau whose product divides the product of the rows of mu.

    Requires gamma_j(mu) >= gamma_j(tau) for j = 1..tau[0].  A row of the
    current largest target size is taken as is when present; otherwise the
    largest row below that size (or an empty row) and the smallest row above
    it are rebalanced, which keeps the index multiset and the gamma bounds.
    """
    c = mu.c
    tau = tuple(int(t) for t in tau)
    if not tau or any(tau[i] < tau[i + 1] for i in range(len(tau) - 1)) or tau[-1] < 1:
        raise PreconditionError(f"tau must be weakly decreasing positive sizes, got {tau}")
    shape = mu.shape
    for j in range(1, tau[0] + 1):
        if gamma_t(shape, j) < gamma_t(tau, j):
            raise PreconditionError(f"gamma_{j} of {shape} is below that of {tau}")
    rows = [r.indices for r in mu.rows]
    picked: list[tuple[int, ...]] = []
    for t1 in tau:
        while True:
            hit = next((i for i, r in enumerate(rows) if len(r) == t1), None)
            if hit is not None:
                picked.append(rows.pop(hit))
                break
            small = [i for i, r in enumerate(rows) if len(r) < t1]
            large = [i for i, r in enumerate(rows) if len(r) > t1]
            if not large:
                raise AssertionError(f"no row longer than {t1} left in {rows}")
            lo = max(small, key=lambda i: len(rows[i])) if small else None
            hi = min(large, key=lambda i: len(rows[i]))
            b = rows[lo] if lo is not None else ()
            n3, n4 = rebalance_chains(rows[hi], b, c)
            for i in sorted([i for i in (lo, hi) if i is not None], reverse=True):
                rows.pop(i)
            rows += [n3.indices, n4.indices]
    out = Tableau.from_rows(picked, c)
    top = max((i for r in mu.rows for i in r.indices), default=1)
    if not out.monomial(top).divides(mu.monomial(top)):
        raise AssertionError("constructed rows do not divide the input")
    return out


def standard_representation(cfg: HankelConfig, f: Polynomial, max_steps: int = 100000) -> list[tuple[object, Tableau]]:
    """Write f as a combination of standard monomials by repeatedly cancelling the leading term."""
    terms = []
    prev = None
    steps = 0
    while f:
        coeff, lm = f.leading_term()
        if prev is not None and not lm < prev:
            raise AssertionError("standard rewriting did not decrease the leading monomial")
        prev = lm
        tab = standard_tableau(lm, cfg.c)
        g = expand_tableau(cfg, tab)
        lam = _coerce(Fraction(coeff) / Fraction(g.leading_coefficient()))
        f = f - g * lam
        terms.append((lam, tab))
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded("standard rewriting exceeded its step cap", {"steps": steps})
    return terms


def standard_rep_gamma_check(cfg: HankelConfig, delta: Tableau) -> Report:
    """Every standard monomial in the representation of a product of minors has gamma at least that of the product."""
    rep = Report("standard_gamma", {"n": cfg.n, "c": cfg.c, "tableau": str(delta)})
    with rep.timed("rewrite"):
        f = expand_tableau(cfg, delta)
        terms = standard_representation(cfg, f)
    rep.details["terms"] = [[str(lam), str(tab)] for lam, tab in terms]
    for t in range(1, cfg.m + 1):
        g = gamma_t(delta.shape, t)
        for lam, tab in terms:
            if gamma_t(tab.shape, t) < g:
                rep.fail({"t": t, "term": str(tab), "gamma": gamma_t(tab.shape, t), "needed": g})
                return rep
    return rep


def verify_secant(n: int, c: int, r: int = 2, method: str = "literal", budget: Budget | None = None) -> Report:
    """The r-th secant of the 2-minor ideal is the (r+1)-minor ideal, and its initial ideal is the secant of the initial ideal."""
    from ..ideals import CGraph, edge_secant_generators
    from .elimination import ideals_equal, secant

    cfg = HankelConfig(n, c)
    if r < 1 or r + 1 > cfg.m:
        raise RangeError(f"need 1 <= r and r + 1 <= m={cfg.m}, got r={r}")
    rep = Report("secant", {"n": n, "c": c, "r": r, "method": method})
    try:
        with rep.timed("elimination"):
            sec = secant(t_minors(cfg, 2), r, method=method, budget=budget)
        target = t_minors(cfg, r + 1)
        with rep.timed("membership"):
            same, info = ideals_equal(sec, target, budget=budget)
        rep.expect(same, info)
        with rep.timed("initial"):
            gb = buchberger(sec.generators, budget=budget)
            initial = MonomialIdeal(n, [m.exponents for m in gb.leading_monomials()])
            colour = edge_secant_generators(CGraph(n, c), r)
            rep.expect(initial == colour, {"initial_ideal": [str(m) for m in initial.generators]})
            # the same secant taken of the monomial ideal by elimination
            mono = [Polynomial.from_monomial(m) for m in jt_generators(n, c, 2).generators]
            msec = secant(mono, r, method=method, budget=budget)
            melim = MonomialIdeal(n, [m.exponents for m in buchberger(msec.generators, budget=budget).leading_monomials()])
            rep.expect(melim == colour, {"monomial_secant": [str(m) for m in melim.generators]})
    except BudgetExceeded as exc:
        return _budget_report(rep, exc)
    rep.details["secant_generators"] = [str(g) for g in sec.generators]
    return rep
