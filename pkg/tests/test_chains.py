import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankel_forge.chains import (
    CChain,
    standard_tableau,
    Tableau,
    c_decompose,
    pair_product_shape,
    enumerate_chains,
    gamma_t,
    gamma_tc,
    is_cchain,
    parse_tableau,
    rebalance_chains,
    shape_of,
    socle,
)
from hankel_forge.errors import ChainError, ParseError, PreconditionError
from hankel_forge.hankel import HankelConfig, expand_tableau
from hankel_forge.polyring import Monomial, parse_monomial

EXAMPLE = parse_monomial("x1^2*x2*x4*x7*x8*x10", 10)


def test_is_cchain():
    assert is_cchain((1, 4, 7, 10), 2)
    assert not is_cchain((1, 3), 2)
    assert is_cchain((5,), 7)
    with pytest.raises(ChainError):
        CChain((1, 3), 2)


def test_decompose_examples():
    assert [f.indices for f in c_decompose(EXAMPLE, 2)] == [(1, 4, 7, 10), (1, 8), (2,)]
    assert [f.indices for f in c_decompose(Monomial.from_indices(5, [5, 5, 5]), 1)] == [(5,), (5,), (5,)]
    assert [f.indices for f in c_decompose(Monomial.from_indices(5, [1, 3, 5]), 1)] == [(1, 3, 5)]
    assert c_decompose(Monomial.one(4), 1) == []


def test_gamma_examples():
    assert shape_of(EXAMPLE, 2) == (4, 2, 1)
    assert gamma_t((4, 2, 1), 2) == 4
    assert gamma_t((4, 2, 1), 3) == 2
    assert gamma_t((4, 2, 1), 5) == 0
    assert gamma_t((3, 3), 1) == 6
    with pytest.raises(PreconditionError):
        gamma_t((2,), 0)


def test_socle_examples():
    assert socle(EXAMPLE, 2).indices == (1, 4, 7, 10)
    assert socle(Monomial.from_indices(5, [5]), 3).indices == (5,)
    assert socle(Monomial.from_indices(5, [2, 3]), 2).indices == (2,)
    with pytest.raises(PreconditionError):
        socle(Monomial.one(3), 1)


def test_standard_tableau_example():
    tab = standard_tableau(EXAMPLE, 2)
    assert str(tab) == "1 4 7 10 / 1 8 / 2"
    assert expand_tableau(HankelConfig(10, 2), tab).leading_monomial() == EXAMPLE


def test_tableau_parse_and_order():
    assert parse_tableau("1 4 7 10 / 1 8 / 2", 2).shape == (4, 2, 1)
    with pytest.raises(PreconditionError):
        parse_tableau("2 / 1 8", 2)
    assert str(parse_tableau("2 / 1 8", 2, sort=True)) == "1 8 / 2"
    with pytest.raises(ParseError):
        parse_tableau("1 a", 2)
    with pytest.raises(ParseError):
        parse_tableau("1 4 //", 2)
    with pytest.raises(ChainError):
        parse_tableau("1 2", 2)


def test_rebalance_examples():
    a, b = rebalance_chains((1, 4, 7), (), 2)
    assert (a.indices, b.indices) == ((1, 4), (7,))
    a, b = rebalance_chains((1, 4, 7, 10), (2,), 2)
    assert (len(a), len(b)) == (3, 2)
    assert sorted(a.indices + b.indices) == [1, 2, 4, 7, 10]
    a, b = rebalance_chains((1, 5), (), 2)
    assert (a.indices, b.indices) == ((1,), (5,))
    with pytest.raises(PreconditionError):
        rebalance_chains((1, 4), (2,), 2)


def test_cc_merge_examples():
    sh = pair_product_shape((1, 4), (2, 6), 2)
    assert len(sh) == 2 and sum(sh) == 4 and sh[0] >= 2
    assert pair_product_shape((1, 4, 7), (), 2) == (3,)


def test_cc_merge_exhaustive_small():
    # at most two factors, one at least as long as both inputs
    for c in (1, 2, 3):
        n = 10
        chains = [ch for L in range(0, 4) for ch in enumerate_chains(n, c, L)]
        for a in chains:
            for b in chains:
                pair_product_shape(a, b, c, n)


def test_enumerate_chains():
    assert enumerate_chains(5, 2, 2) == [(1, 4), (1, 5), (2, 5)]
    assert enumerate_chains(7, 2, 2, top=5) == [(1, 4), (1, 5), (2, 5)]
    assert enumerate_chains(4, 2, 0) == [()]


monos = st.integers(1, 12).flatmap(lambda n: st.lists(st.integers(0, 3), min_size=n, max_size=n)).map(Monomial)


@given(monos, st.integers(1, 3))
def test_decomposition_invariants(delta, c):
    facs = c_decompose(delta, c)
    assert all(is_cchain(f.indices, c) for f in facs)
    prod = Monomial.one(delta.n)
    for f in facs:
        prod = prod * f.monomial(delta.n)
    assert prod == delta
    sh = [len(f) for f in facs]
    assert sh == sorted(sh, reverse=True)
    assert gamma_tc(delta, 1, c) == delta.degree


@given(st.integers(1, 15), st.integers(1, 3), st.data())
def test_superadditive(n, c, data):
    pool = [ch for L in range(0, 5) for ch in enumerate_chains(n, c, L)]
    a = data.draw(st.sampled_from(pool))
    b = data.draw(st.sampled_from(pool))
    sh = pair_product_shape(a, b, c, n)
    ab = Monomial.from_indices(n, a + b)
    for t in range(1, 5):
        ga = gamma_tc(Monomial.from_indices(n, a), t, c)
        gb = gamma_tc(Monomial.from_indices(n, b), t, c)
        assert gamma_t(sh, t) == gamma_tc(ab, t, c) >= ga + gb


@given(monos, monos, st.integers(1, 3))
def test_standard_tableau_injective(d1, d2, c):
    if d1.n != d2.n:
        return
    assert (standard_tableau(d1, c) == standard_tableau(d2, c)) == (d1 == d2)


@given(st.integers(3, 12), st.integers(1, 3), st.data())
def test_rebalance_preserves(n, c, data):
    m = HankelConfig(n, c).m
    s = data.draw(st.integers(2, max(2, m)))
    longs = enumerate_chains(n, c, s)
    if not longs:
        return
    a = data.draw(st.sampled_from(longs))
    r = data.draw(st.integers(0, s - 2))
    b = data.draw(st.sampled_from(enumerate_chains(n, c, r)))
    x, y = rebalance_chains(a, b, c)
    assert (len(x), len(y)) == (s - 1, r + 1)
    assert sorted(x.indices + y.indices) == sorted(a + b)


def test_leading_term_of_standard_tableau_exhaustive():
    cfg = HankelConfig(7, 2)
    from hankel_forge.ideals import monomials_up_to

    for e in monomials_up_to(7, 3):
        d = Monomial(e)
        assert expand_tableau(cfg, standard_tableau(d, 2)).leading_monomial() == d
