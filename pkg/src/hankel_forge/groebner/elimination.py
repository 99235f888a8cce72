"""Joins and secant ideals by elimination.

The join of I_1, ..., I_r is computed in a ring with r fresh blocks of
variables y_1, ..., y_r and the original x-block: each I_j is copied onto
y_j, the linking forms y_1i + ... + y_ri - x_i are added, and the y-blocks
are eliminated with a block order ranking all y-variables above x.
"""
from __future__ import annotations

from typing import Sequence

from ..errors import DimensionError, PreconditionError
from ..polyring import Polynomial
from .engine import DEGLEX, BlockOrder, Budget, GroebnerBasis, IdealPresentation, buchberger


def _gens(I) -> list[Polynomial]:
    return list(I.generators) if hasattr(I, "generators") else [g for g in I if g]


def _shift(p: Polynomial, N: int, offset: int) -> Polynomial:
    n = p.n
    pad_l, pad_r = (0,) * offset, (0,) * (N - offset - n)
    return Polynomial._raw(N, {pad_l + e + pad_r: c for e, c in p._d.items()})


def _substitute(p: Polynomial, images: Sequence[Polynomial], N: int) -> Polynomial:
    out = Polynomial.zero(N)
    for e, c in p._d.items():
        term = Polynomial.constant(N, c)
        for i, k in enumerate(e):
            if k:
                term = term * images[i] ** k
        out = out + term
    return out


def _contract(gb: GroebnerBasis, eliminated: int, n: int) -> list[Polynomial]:
    out = []
    for p in gb:
        if all(not any(e[:eliminated]) for e in p._d):
            out.append(Polynomial._raw(n, {e[eliminated:]: c for e, c in p._d.items()}))
    return out


def join_ideal(ideals: Sequence, method: str = "literal", budget: Budget | None = None) -> IdealPresentation:
    """Generators of the join of the given ideals (a Groebner basis in deglex of the contraction).

    ``method="literal"`` builds the full ring with r fresh blocks and the
    linking forms.  ``method="substitute"`` solves the linking forms for
    the last block first (y_r = x - y_1 - ... - y_{r-1}), which removes n
    variables and all linking forms; the elimination ideal is the same.
    """
    gens = [_gens(I) for I in ideals]
    if not gens or any(not g for g in gens):
        raise PreconditionError("every ideal in a join needs at least one nonzero generator")
    ns = {p.n for g in gens for p in g}
    if len(ns) != 1:
        raise DimensionError(f"ideals over different variable counts: {sorted(ns)}")
    n = ns.pop()
    r = len(gens)
    if method == "literal":
        N = (r + 1) * n
        ring = []
        for j, g in enumerate(gens):
            ring += [_shift(p, N, j * n) for p in g]
        for i in range(1, n + 1):
            form = -Polynomial.variable(N, r * n + i)
            for j in range(r):
                form = form + Polynomial.variable(N, j * n + i)
            ring.append(form)
        eliminated = r * n
    elif method == "substitute":
        N = r * n
        eliminated = (r - 1) * n
        ring = []
        for j, g in enumerate(gens[:-1]):
            ring += [_shift(p, N, j * n) for p in g]
        images = []
        for i in range(1, n + 1):
            form = Polynomial.variable(N, eliminated + i)
            for j in range(r - 1):
                form = form - Polynomial.variable(N, j * n + i)
            images.append(form)
        ring += [_substitute(p, images, N) for p in gens[-1]]
    else:
        raise PreconditionError(f"unknown join method {method!r}")
    if eliminated == 0:
        return IdealPresentation(buchberger(ring, budget=budget).elements, DEGLEX, n)
    gb = buchberger(ring, order=BlockOrder([eliminated, n]), budget=budget)
    return IdealPresentation(_contract(gb, eliminated, n), DEGLEX, n)


def secant(I, r: int, method: str = "literal", budget: Budget | None = None) -> IdealPresentation:
    """The r-fold join of I with itself."""
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    if r == 1:
        return IdealPresentation(buchberger(_gens(I), budget=budget).elements)
    return join_ideal([I] * r, method=method, budget=budget)


def maximal_ideal_power(n: int, r: int) -> list[Polynomial]:
    from ..ideals import monomials_of_degree

    return [Polynomial._raw(n, {e: 1}) for e in monomials_of_degree(n, r)]


def symbolic_power_by_join(I, r: int, method: str = "literal", budget: Budget | None = None) -> IdealPresentation:
    """I joined with the r-th power of the maximal ideal."""
    gens = _gens(I)
    if not gens:
        raise PreconditionError("need a nonzero ideal")
    return join_ideal([gens, maximal_ideal_power(gens[0].n, r)], method=method, budget=budget)


def contains_all(gb: GroebnerBasis, polys) -> tuple[bool, Polynomial | None]:
    for p in _gens(polys):
        if gb.normal_form(p):
            return False, p
    return True, None


def ideals_equal(A, B, budget: Budget | None = None) -> tuple[bool, dict]:
    """Equality by mutual membership of generators in each other's Groebner basis."""
    ga = buchberger(_gens(A), budget=budget)
    gb = buchberger(_gens(B), budget=budget)
    ok1, w1 = contains_all(ga, B)
    ok2, w2 = contains_all(gb, A)
    info = {}
    if not ok1:
        info["missing_from_first"] = str(w1)
    if not ok2:
        info["missing_from_second"] = str(w2)
    return ok1 and ok2, info
