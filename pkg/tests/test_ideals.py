import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankel_forge.chains import CChain, gamma_tc
from hankel_forge.errors import DimensionError, PreconditionError, RangeError
from hankel_forge.ideals import (
    CGraph,
    FacetPrime,
    MonomialIdeal,
    chain_product_ideal,
    chromatic_and_clique,
    colon,
    edge_secant_generators,
    enumerate_Ar,
    graded_piece,
    intersect_prime_powers,
    intersection,
    jt_generators,
    linear_quotients_certify,
    monomials_up_to,
    omega_generators,
    order_in_prime,
    product,
    sigma_compare,
    socle_inequality_holds,
    subset_tables,
    symbolic_membership,
    symbolic_oracle_sets,
    verify_linear_quotients,
    verify_perfect_graph,
)
from hankel_forge.polyring import Monomial, parse_monomial


def M(n, *idx):
    return Monomial.from_indices(n, idx)


def gens(I):
    return {tuple(m.indices()) for m in I.generators}


def test_jt_examples():
    assert gens(jt_generators(5, 2, 2)) == {(1, 4), (1, 5), (2, 5)}
    assert len(jt_generators(5, 2, 3)) == 0
    assert gens(jt_generators(4, 3, 1)) == {(1,), (2,), (3,), (4,)}


def test_monomial_ideal_ops():
    I = MonomialIdeal(3, [(1, 0, 0), (2, 0, 0), (0, 1, 1)])
    assert len(I) == 2
    assert M(3, 1, 2) in I and M(3, 2) not in I
    J = MonomialIdeal(3, [(0, 1, 0)])
    assert gens(I + J) == {(1,), (2,)}
    assert gens(product(I, J)) == {(1, 2), (2, 2, 3)}
    assert gens(intersection(I, J)) == {(1, 2), (2, 3)}
    assert gens(colon(MonomialIdeal(5, [M(5, 1, 4).exponents]), M(5, 2, 5))) == {(1, 4)}
    assert gens(colon(I, J)) == {(1,), (3,)}
    with pytest.raises(DimensionError):
        I + MonomialIdeal(4, [])


def test_chromatic_examples():
    g = CGraph(7, 2)
    assert chromatic_and_clique(g, {1, 4, 7}) == (3, 3)
    assert chromatic_and_clique(g, {1, 2, 3}) == (1, 1)
    assert chromatic_and_clique(g, range(1, 8)) == (3, 3)


def test_edge_secant_examples():
    assert gens(edge_secant_generators(CGraph(5, 2), 1)) == {(1, 4), (1, 5), (2, 5)}
    assert len(edge_secant_generators(CGraph(5, 2), 2)) == 0
    assert edge_secant_generators(CGraph(7, 2), 2) == jt_generators(7, 2, 3)


def test_perfection_tables_brute():
    for c in (1, 2, 3):
        chi, om = subset_tables(10, c)
        assert chi == om


def test_enumerate_Ar_examples():
    ps = enumerate_Ar(7, 2, 2)
    assert [p.chain.indices for p in ps] == [(1, 4), (1, 5), (2, 5)]
    assert [p.complement for p in ps] == [(7,), (4,), (1,)]
    assert enumerate_Ar(4, 2, 2) == []
    one = enumerate_Ar(7, 2, 1)
    assert [p.chain.indices for p in one] == [(j,) for j in range(1, 6)]
    assert one[2].facet == frozenset({3, 4, 5})
    assert enumerate_Ar(7, 2, 0)[0].complement == tuple(range(1, 8))
    with pytest.raises(PreconditionError):
        FacetPrime(CChain((6,), 2), 7)


def test_order_in_prime_examples():
    p14 = FacetPrime(CChain((1, 4), 2), 7)
    assert order_in_prime(M(7, 1, 7, 7), p14) == 2
    assert order_in_prime(M(7, 1, 2, 3), p14) == 0
    assert order_in_prime(M(7, 1, 2, 4, 7), FacetPrime(CChain((2, 5), 2), 7)) == 1


def test_membership_examples():
    ex = parse_monomial("x1^2*x2*x4*x7*x8*x10", 10)
    cert = symbolic_membership(ex, 2, 4, 2, verify=True)
    assert cert.verdict and cert.gamma == 4
    assert cert.decomposition == [(1, 4, 7, 10), (1, 8), (2,)]
    assert symbolic_membership(ex, 3, 2, 2, verify=True).verdict
    assert not symbolic_membership(ex, 3, 3, 2, verify=True).verdict
    assert not symbolic_membership(M(7, 1, 2, 4), 2, 2, 2, verify=True).verdict
    assert not symbolic_membership(Monomial.one(7), 2, 1, 2, verify=True).verdict
    with pytest.raises(RangeError):
        symbolic_membership(M(7, 1), 4, 1, 2)
    d = cert.as_dict()
    assert set(d) == {"verdict", "gamma", "decomposition", "witnesses"}


def test_omega_examples():
    assert omega_generators(7, 2, (3,)) == jt_generators(7, 2, 3)
    J = jt_generators(5, 2, 2)
    assert omega_generators(5, 2, (2, 2)) == product(J, J)
    assert omega_generators(7, 2, (3, 2)) == product(jt_generators(7, 2, 3), jt_generators(7, 2, 2))


def test_sigma_examples():
    assert sigma_compare(M(8, 1, 4, 7), M(8, 1, 4, 8), 2) == 1
    assert sigma_compare(M(8, 1, 4, 7), M(8, 1, 4, 7), 2) == 0
    # a present factor beats an absent one
    assert sigma_compare(M(8, 1, 4, 2), M(8, 1, 4), 2) == 1


def test_linear_quotients_examples():
    res = linear_quotients_certify(5, 2, (2,))
    assert res.verdict and res.witnesses == [[], [4], [1]]
    assert linear_quotients_certify(4, 1, (1,)).verdict
    assert linear_quotients_certify(7, 2, (2, 2)).verdict
    d = res.as_dict(2)
    assert d["decomposition"][0] == [[1, 4]]


def test_graded_piece_of_prime_intersection():
    comps = [(p, 1) for p in enumerate_Ar(7, 2, 1)]
    inter = intersect_prime_powers(7, comps, bound=4)
    assert inter == jt_generators(7, 2, 2)
    assert set(graded_piece(inter, 2)) == set(graded_piece(jt_generators(7, 2, 2), 2))
    assert graded_piece(inter, 1) == []
    # squared primes: the degree-2 piece is empty, and each graded piece is the gamma_2 >= 2 set
    sq = intersect_prime_powers(7, [(p, 2) for p in enumerate_Ar(7, 2, 1)], bound=5)
    assert graded_piece(sq, 2) == []
    for d in (3, 4):
        want = {Monomial(e) for e in monomials_up_to(7, d) if sum(e) == d and gamma_tc(Monomial(e), 2, 2) >= 2}
        assert set(graded_piece(sq, d)) == want


def test_omega_matches_product_sweep():
    from hankel_forge.sweep import partitions_up_to
    from hankel_forge.hankel import HankelConfig

    for c in (1, 2):
        for n in range(2, 9):
            for tau in partitions_up_to(6):
                if tau[0] <= HankelConfig(n, c).m:
                    assert omega_generators(n, c, tau) == chain_product_ideal(n, c, tau)


def test_symbolic_oracles_agree_small():
    by_gamma, by_primes = symbolic_oracle_sets(7, 2, 2, 2, 6)
    assert by_gamma == by_primes


def test_verifier_reports():
    assert verify_perfect_graph(9, 2).passed
    assert verify_linear_quotients(6, 1, (2, 1)).passed


@given(st.integers(3, 9), st.integers(1, 2), st.data())
def test_socle_inequality(n, c, data):
    from hankel_forge.hankel import HankelConfig

    m = HankelConfig(n, c).m
    if m < 2:
        return
    t = data.draw(st.integers(2, m))
    s = data.draw(st.integers(1, 3))
    e = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    d = Monomial(e)
    if gamma_tc(d, t, c) >= s:
        assert socle_inequality_holds(d, t, s, c)


@given(st.integers(2, 8), st.integers(1, 2), st.data())
def test_membership_matches_primes(n, c, data):
    from hankel_forge.hankel import HankelConfig

    m = HankelConfig(n, c).m
    t = data.draw(st.integers(1, m))
    s = data.draw(st.integers(1, 4))
    d = Monomial(data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
    symbolic_membership(d, t, s, c, verify=True)
