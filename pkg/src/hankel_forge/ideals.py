"""Monomial ideals attached to X: chain ideals J_t, facet primes, the
conflict graph on [n], symbolic-power membership and the product
generators used for the linear-quotients certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from .chains import CChain, c_decompose, chain_sort_key, enumerate_chains, gamma_t, gamma_tc, shape_of
from .errors import DimensionError, PreconditionError, RangeError
from .hankel import HankelConfig
from .polyring import Monomial, deglex_key


def _exps(m, n: int | None = None) -> tuple[int, ...]:
    e = tuple(m.exponents) if isinstance(m, Monomial) else tuple(int(x) for x in m)
    if n is not None and len(e) != n:
        raise DimensionError(f"monomial over {len(e)} variables, expected {n}")
    return e


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(exps: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    kept: list[tuple[int, ...]] = []
    for e in sorted(set(exps), key=sum):
        if not any(_divides(g, e) for g in kept):
            kept.append(e)
    kept.sort(key=deglex_key, reverse=True)
    return tuple(kept)


def monomials_of_degree(n: int, d: int):
    """Every exponent vector of total degree ``d`` in ``n`` variables."""
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def monomials_up_to(n: int, d: int):
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


class MonomialIdeal:
    """A monomial ideal stored by its minimal generators (deglex-descending)."""

    __slots__ = ("n", "_gens")

    def __init__(self, n: int, generators: Iterable = ()):
        self.n = n
        self._gens = _minimalize(_exps(g, n) for g in generators)

    @property
    def generators(self) -> list[Monomial]:
        return [Monomial(e) for e in self._gens]

    def exponent_vectors(self) -> tuple[tuple[int, ...], ...]:
        return self._gens

    def __len__(self) -> int:
        return len(self._gens)

    def __iter__(self):
        return iter(self.generators)

    def __contains__(self, m) -> bool:
        e = _exps(m, self.n)
        return any(_divides(g, e) for g in self._gens)

    def contains(self, m) -> bool:
        return m in self

    def _same_ring(self, other: "MonomialIdeal") -> None:
        if other.n != self.n:
            raise DimensionError(f"ideals over {self.n} and {other.n} variables")

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and self.n == other.n and set(self._gens) == set(other._gens)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._gens)))

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._same_ring(other)
        return MonomialIdeal(self.n, self._gens + other._gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return intersection(self, other)

    def degrees(self) -> set[int]:
        return {sum(g) for g in self._gens}

    def truncate(self, d: int) -> "MonomialIdeal":
        return MonomialIdeal(self.n, [g for g in self._gens if sum(g) <= d])

    def __repr__(self) -> str:
        return f"MonomialIdeal(n={self.n}, [{', '.join(str(g) for g in self.generators)}])"


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    I._same_ring(J)
    return MonomialIdeal(I.n, (tuple(a + b for a, b in zip(g, h)) for g in I._gens for h in J._gens))


def intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    I._same_ring(J)
    return MonomialIdeal(I.n, (tuple(max(a, b) for a, b in zip(g, h)) for g in I._gens for h in J._gens))


def colon(I: MonomialIdeal, m) -> MonomialIdeal:
    """I : m for a monomial m, or I : J for a monomial ideal J."""
    if isinstance(m, MonomialIdeal):
        I._same_ring(m)
        if not len(m):
            raise PreconditionError("colon by the zero ideal is the whole ring")
        out = colon(I, m._gens[0])
        for g in m._gens[1:]:
            out = intersection(out, colon(I, g))
        return out
    e = _exps(m, I.n)
    return MonomialIdeal(I.n, (tuple(max(a - b, 0) for a, b in zip(g, e)) for g in I._gens))


def graded_piece(I: MonomialIdeal, d: int) -> list[Monomial]:
    """All monomials of degree ``d`` lying in ``I`` (deglex-descending)."""
    out = set()
    for g in I._gens:
        k = d - sum(g)
        if k < 0:
            continue
        for e in monomials_of_degree(I.n, k):
            out.add(tuple(a + b for a, b in zip(g, e)))
    return [Monomial(e) for e in sorted(out, key=deglex_key, reverse=True)]


def jt_generators(n: int, c: int, t: int) -> MonomialIdeal:
    """The ideal generated by the squarefree monomials on c-chains of length t."""
    if t < 1:
        raise PreconditionError(f"t must be >= 1, got {t}")
    return MonomialIdeal(n, (Monomial.from_indices(n, a).exponents for a in enumerate_chains(n, c, t)))


@dataclass(frozen=True)
class FacetPrime:
    """The prime generated by the variables outside F_j = union of [j_i, j_i + c]."""

    chain: CChain
    n: int
    facet: frozenset = field(init=False, compare=False)
    complement: tuple = field(init=False, compare=False)

    def __post_init__(self):
        c = self.chain.c
        if self.chain.indices and self.chain.indices[-1] > self.n - c:
            raise PreconditionError(f"chain {self.chain.indices} must end at or below n - c = {self.n - c}")
        facet = frozenset(i + d for i in self.chain.indices for d in range(c + 1))
        assert len(facet) == len(self.chain) * (c + 1)
        object.__setattr__(self, "facet", facet)
        object.__setattr__(self, "complement", tuple(i for i in range(1, self.n + 1) if i not in facet))

    def contains_power(self, delta: Monomial, k: int) -> bool:
        return order_in_prime(delta, self) >= k

    def __str__(self) -> str:
        return f"P({','.join(map(str, self.chain.indices))})"


def enumerate_Ar(n: int, c: int, r: int) -> list[FacetPrime]:
    """Facet primes for the c-chains of length r ending at or below n - c.

    r = 0 gives the single empty chain, whose prime is the maximal ideal.
    """
    if r < 0:
        raise PreconditionError(f"r must be >= 0, got {r}")
    return [FacetPrime(CChain(j, c), n) for j in enumerate_chains(n, c, r, top=n - c)]


def order_in_prime(delta: Monomial, p: FacetPrime) -> int:
    """Largest k with delta in p^k: the exponent mass outside the facet."""
    if delta.n != p.n:
        raise DimensionError(f"monomial over {delta.n} variables, prime over {p.n}")
    e = delta.exponents
    return sum(e[i - 1] for i in p.complement)


@dataclass
class Certificate:
    verdict: bool
    gamma: object
    decomposition: list
    witnesses: list

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "gamma": self.gamma,
            "decomposition": [list(x) if isinstance(x, tuple) else x for x in self.decomposition],
            "witnesses": self.witnesses,
        }


def symbolic_membership(delta: Monomial, t: int, s: int, c: int, verify: bool = False) -> Certificate:
    """Decide whether delta lies in the s-th symbolic power of the t-chain ideal.

    The fast path compares gamma_{t,c}(delta) with s.  With ``verify`` the
    facet-prime description is evaluated independently and must agree; the
    prime of smallest order is reported as the witness.
    """
    cfg = HankelConfig(delta.n, c)
    if not 1 <= t <= cfg.m:
        raise RangeError(f"t={t} outside 1..m={cfg.m} for n={delta.n}, c={c}")
    if s < 1:
        raise PreconditionError(f"s must be >= 1, got {s}")
    dec = c_decompose(delta, c)
    g = gamma_t([len(f) for f in dec], t)
    verdict = g >= s
    witnesses = []
    if verify:
        best = None
        for p in enumerate_Ar(delta.n, c, t - 1):
            o = order_in_prime(delta, p)
            if best is None or o < best[0]:
                best = (o, p)
        o, p = best
        if (o >= s) != verdict:
            raise AssertionError(f"gamma criterion and facet primes disagree on {delta} (t={t}, s={s})")
        witnesses.append({"prime": list(p.chain.indices), "order": o})
    return Certificate(verdict, g, [f.indices for f in dec], witnesses)


def prime_power_membership(delta: Monomial, components: Sequence[tuple[FacetPrime, int]]) -> bool:
    """delta in the intersection of p^k over (p, k) in ``components``."""
    return all(order_in_prime(delta, p) >= k for p, k in components)


def intersect_prime_powers(n: int, components: Sequence[tuple[FacetPrime, int]], bound: int) -> MonomialIdeal:
    """Minimal generators of degree <= ``bound`` of an intersection of facet-prime powers.

    Exact in every degree up to ``bound``; generators above it are not recovered.
    """
    found = []
    for e in monomials_up_to(n, bound):
        m = Monomial(e)
        if prime_power_membership(m, components) and not any(_divides(g, e) for g in found):
            found.append(e)
    return MonomialIdeal(n, found)


def socle_inequality_holds(delta: Monomial, t: int, s: int, c: int) -> bool:
    """For a member of the s-th symbolic power of the t-chain ideal: order plus socle overlap >= s + t - 1 on every facet prime."""
    soc = c_decompose(delta, c)[0].indices if delta.degree else ()
    r = t - 1
    for p in enumerate_Ar(delta.n, c, r):
        overlap = sum(1 for i in soc if i in p.facet)
        if order_in_prime(delta, p) + overlap < s + r:
            return False
    return True


class CGraph:
    """Graph on 1..n with an edge between i and j iff |i - j| > c."""

    def __init__(self, n: int, c: int):
        if n < 1 or c < 1:
            raise PreconditionError(f"need n >= 1 and c >= 1, got n={n}, c={c}")
        self.n = n
        self.c = c

    def adjacent(self, i: int, j: int) -> bool:
        return abs(i - j) > self.c

    def greedy_chain(self, V: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        for v in sorted(set(V)):
            if not out or v > out[-1] + self.c:
                out.append(v)
        return tuple(out)


def _subset_tables(vs: Sequence[int], c: int) -> tuple[list[int], list[int]]:
    """Chromatic and clique numbers of every induced subgraph on subsets of ``vs`` (bitmask-indexed).

    Exact dynamic programming: the colour class of the lowest vertex is any
    independent set containing it, and the lowest vertex is either in a
    maximum clique or not.
    """
    k = len(vs)
    full = 1 << k
    nb = [sum(1 << j for j in range(k) if abs(vs[i] - vs[j]) > c) for i in range(k)]
    chi = [0] * full
    om = [0] * full
    indep = [True] * full
    for S in range(1, full):
        low = (S & -S).bit_length() - 1
        rest = S & ~(1 << low)
        indep[S] = indep[rest] and not (nb[low] & rest)
        om[S] = max(om[rest], 1 + om[S & nb[low]])
        cand = rest & ~nb[low]
        best = chi[rest]
        T = cand
        while T:
            if indep[T | (1 << low)]:
                best = min(best, chi[rest & ~T])
            T = (T - 1) & cand
        chi[S] = 1 + best
    return chi, om


@lru_cache(maxsize=64)
def subset_tables(n: int, c: int) -> tuple[list[int], list[int]]:
    """Tables over every subset of [n] (bit i-1 stands for vertex i)."""
    if n > 16:
        raise PreconditionError(f"exhaustive subset tables are capped at n <= 16, got {n}")
    return _subset_tables(list(range(1, n + 1)), c)


BRUTE_FORCE_CAP = 12


def chromatic_and_clique(graph: CGraph, V: Iterable[int], cross_check: bool = True) -> tuple[int, int]:
    """(chromatic number, clique number) of the subgraph induced on V.

    Both equal the length of the greedy chain in V; for |V| <= 12 the
    values are recomputed by exhaustive search and must agree.
    """
    vs = sorted(set(V))
    if any(v < 1 or v > graph.n for v in vs):
        raise PreconditionError(f"vertices {vs} not inside 1..{graph.n}")
    g = len(graph.greedy_chain(vs))
    if cross_check and len(vs) <= BRUTE_FORCE_CAP:
        chi, om = _subset_tables(vs, graph.c)
        top = (1 << len(vs)) - 1
        if (chi[top], om[top]) != (g, g):
            raise AssertionError(f"perfection fails on {vs}: chi={chi[top]}, omega={om[top]}, chain={g}")
    return g, g


def edge_secant_generators(graph: CGraph, r: int, compare: bool = True) -> MonomialIdeal:
    """Squarefree monomials m_V over the minimal vertex sets V that are not r-colourable."""
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    chi, _ = subset_tables(graph.n, graph.c)
    n = graph.n
    gens = []
    for S in range(1, 1 << n):
        if chi[S] <= r:
            continue
        if all(chi[S & ~(1 << i)] <= r for i in range(n) if S >> i & 1):
            gens.append(tuple((S >> i) & 1 for i in range(n)))
    out = MonomialIdeal(n, gens)
    if compare:
        expected = jt_generators(n, graph.c, r + 1)
        if out != expected:
            raise AssertionError(f"secant generators differ from the chain ideal for r={r}")
    return out


def omega_generators(n: int, c: int, tau: Sequence[int]) -> MonomialIdeal:
    """Monomials of degree sum(tau) whose gamma profile dominates that of tau."""
    tau = _check_tau(n, c, tau)
    d = sum(tau)
    need = [gamma_t(tau, i) for i in range(1, tau[0] + 1)]
    gens = []
    for e in monomials_of_degree(n, d):
        sh = shape_of(Monomial(e), c)
        if all(gamma_t(sh, i) >= need[i - 1] for i in range(1, tau[0] + 1)):
            gens.append(e)
    return MonomialIdeal(n, gens)


def chain_product_ideal(n: int, c: int, tau: Sequence[int]) -> MonomialIdeal:
    """The product of the chain ideals J_{t_1} ... J_{t_k}, expanded directly."""
    tau = _check_tau(n, c, tau)
    out = jt_generators(n, c, tau[0])
    for t in tau[1:]:
        out = product(out, jt_generators(n, c, t))
    return out


def _check_tau(n: int, c: int, tau: Sequence[int]) -> tuple[int, ...]:
    tau = tuple(int(t) for t in tau)
    if not tau or any(t < 1 for t in tau):
        raise PreconditionError(f"tau must be a nonempty list of positive sizes, got {tau}")
    if any(tau[i] < tau[i + 1] for i in range(len(tau) - 1)):
        raise PreconditionError(f"tau must be weakly decreasing, got {tau}")
    m = HankelConfig(n, c).m
    if tau[0] > m:
        raise RangeError(f"largest part {tau[0]} exceeds m={m}")
    return tau


def sigma_compare(mu: Monomial, eta: Monomial, c: int) -> int:
    """1, 0 or -1 as mu is above, equal to or below eta in the sigma order.

    Factors of the c-decompositions are compared left to right by deglex;
    when one decomposition runs out first, the present factor wins.
    """
    a = c_decompose(mu, c)
    b = c_decompose(eta, c)
    for x, y in zip(a, b):
        kx, ky = chain_sort_key(x.indices), chain_sort_key(y.indices)
        if kx != ky:
            return 1 if kx < ky else -1
    return (len(a) > len(b)) - (len(a) < len(b))


def sigma_sorted(monos: Iterable[Monomial], c: int) -> list[Monomial]:
    """Sort descending in the sigma order."""
    def key(m):
        return [chain_sort_key(f.indices) for f in c_decompose(m, c)] + [(1,)]
    return sorted(monos, key=key)


@dataclass
class LinearQuotientsResult:
    verdict: bool
    tau: tuple
    order: list
    witnesses: list
    failure: dict | None = None

    def as_dict(self, c: int) -> dict:
        return {
            "verdict": self.verdict,
            "gamma": [gamma_t(self.tau, i) for i in range(1, self.tau[0] + 1)],
            "decomposition": [[list(f.indices) for f in c_decompose(m, c)] for m in self.order],
            "witnesses": self.witnesses,
            **({"failure": self.failure} if self.failure else {}),
        }


def linear_quotients_certify(n: int, c: int, tau: Sequence[int], check_generators: bool = True) -> LinearQuotientsResult:
    """Check that the sigma-descending order of the product generators has linear quotients.

    For each generator mu_k the colon by the earlier ones is generated by
    mu_i / gcd(mu_i, mu_k); it is linear exactly when every such quotient is
    divisible by a quotient of degree one.  Witnesses list the variables
    generating each colon.
    """
    tau = _check_tau(n, c, tau)
    omega = omega_generators(n, c, tau)
    if check_generators and n <= 10 and sum(tau) <= 8:
        if omega != chain_product_ideal(n, c, tau):
            raise AssertionError(f"product generators disagree with the expanded product for tau={tau}")
    order = sigma_sorted(omega.generators, c)
    E = np.array([m.exponents for m in order], dtype=np.int64).reshape(len(order), n)
    witnesses: list = [[]]
    for k in range(1, len(order)):
        Q = np.maximum(E[:k] - E[k], 0)
        deg = Q.sum(axis=1)
        linear = np.zeros(n, dtype=bool)
        linear[np.nonzero(Q[deg == 1])[1]] = True
        covered = (Q[:, linear] > 0).any(axis=1)
        if not covered.all():
            bad_rows = Q[~covered]
            # report a minimal uncovered quotient
            bad = min((tuple(int(x) for x in r) for r in bad_rows), key=sum)
            return LinearQuotientsResult(
                False,
                tau,
                order,
                witnesses,
                {"position": k, "generator": str(order[k]), "colon_generator": str(Monomial(bad))},
            )
        witnesses.append([int(i) + 1 for i in np.nonzero(linear)[0]])
    return LinearQuotientsResult(True, tau, order, witnesses)


def symbolic_oracle_sets(n: int, c: int, t: int, s: int, bound: int) -> tuple[set, set]:
    """Monomials of degree <= bound in the s-th symbolic power: via gamma, and via facet primes."""
    primes = enumerate_Ar(n, c, t - 1)
    by_gamma, by_primes = set(), set()
    for e in monomials_up_to(n, bound):
        m = Monomial(e)
        if gamma_tc(m, t, c) >= s:
            by_gamma.add(e)
        if all(order_in_prime(m, p) >= s for p in primes):
            by_primes.add(e)
    return by_gamma, by_primes


def verify_perfect_graph(n: int, c: int):
    """chi = omega = greedy chain length on every vertex subset, and minimal secant generators sit in degree r + 1."""
    from .report import Report

    rep = Report("perfectgraph", {"n": n, "c": c})
    g = CGraph(n, c)
    with rep.timed("subsets"):
        chi, om = subset_tables(n, c)
        for S in range(1, 1 << n):
            vs = [i + 1 for i in range(n) if S >> i & 1]
            greedy = len(g.greedy_chain(vs))
            if not chi[S] == om[S] == greedy:
                rep.fail({"vertices": vs, "chi": chi[S], "omega": om[S], "chain": greedy})
                break
    rep.details["subsets"] = (1 << n) - 1
    with rep.timed("secants"):
        m = HankelConfig(n, c).m
        degrees = {}
        for r in range(1, m + 1):
            gens = edge_secant_generators(g, r, compare=True)
            degs = gens.degrees()
            degrees[str(r)] = sorted(degs)
            rep.expect(degs <= {r + 1}, {"r": r, "degrees": sorted(degs)})
    rep.details["secant_degrees"] = degrees
    return rep


def verify_linear_quotients(n: int, c: int, tau: Sequence[int]):
    from .report import Report

    rep = Report("linquot", {"n": n, "c": c, "tau": list(tau)})
    with rep.timed("certify"):
        res = linear_quotients_certify(n, c, tau)
    rep.details["generators"] = len(res.order)
    if not res.verdict:
        rep.fail(res.failure)
    return rep
