import pytest

from hankel_forge.chains import Tableau, gamma_t, parse_tableau
from hankel_forge.errors import PreconditionError, RangeError
from hankel_forge.groebner import (
    shape_subtableau,
    product_generators,
    standard_rep_gamma_check,
    verify_minors_gb,
    verify_primary_decomposition,
    verify_symbolic_power,
)
from hankel_forge.groebner.engine import Budget
from hankel_forge.groebner.verify import irredundancy_witnesses, symbolic_exponents, verify_secant
from hankel_forge.hankel import HankelConfig
from hankel_forge.report import BUDGET


def test_minors_gb_examples():
    rep = verify_minors_gb(5, 2, 2)
    assert rep.passed
    assert sorted(rep.details["initial_ideal"]) == ["x1*x4", "x1*x5", "x2*x5"]
    assert verify_minors_gb(7, 2, 3).passed
    assert verify_minors_gb(4, 1, 2).passed
    with pytest.raises(RangeError):
        verify_minors_gb(7, 2, 4)


def test_budget_outcome():
    rep = verify_minors_gb(9, 1, 3, budget=Budget(time_sec=0.0))
    assert rep.verdict == BUDGET
    assert "budget" in rep.details


def test_symbolic_exponents():
    # summand shapes: I_2^2 + I_3 for s = 2, and I_2^3 + I_2 I_3 + I_4 for s = 3
    assert sorted(symbolic_exponents(HankelConfig(7, 2), 2, 2)) == [(2, 2), (3,)]
    assert sorted(symbolic_exponents(HankelConfig(8, 1), 2, 3)) == [(2, 2, 2), (3, 2), (4,)]


@pytest.mark.parametrize("n,c,t,s", [(7, 2, 2, 2), (7, 2, 2, 1), (8, 2, 2, 3), (6, 1, 3, 2)])
def test_symbolic_power_examples(n, c, t, s):
    rep = verify_symbolic_power(n, c, t, s)
    assert rep.passed, rep.counterexample
    assert rep.details["monomials_checked"] > 0


@pytest.mark.parametrize("n,c,tau", [(7, 2, (2, 2)), (7, 2, (2,)), (8, 2, (3, 2)), (6, 1, (2, 1))])
def test_primary_decomposition_examples(n, c, tau):
    rep = verify_primary_decomposition(n, c, tau)
    assert rep.passed, rep.counterexample


def test_irredundancy_witnesses_exist():
    w = irredundancy_witnesses(HankelConfig(8, 1), 2, 2)
    assert w and all(v is not None for v in w.values())


def test_product_generators():
    cfg = HankelConfig(7, 2)
    assert len(product_generators(cfg, (2, 2))) == 10 * 11 // 2


def test_shape_subtableau_examples():
    mu = parse_tableau("1 4 7 10 / 1 8 / 2", 2)
    out = shape_subtableau(mu, (2, 2))
    assert out.shape == (2, 2)
    assert out.monomial(10).divides(mu.monomial(10))
    assert str(out) == "1 8 / 2 10"
    same = parse_tableau("1 4 / 2 6", 2)
    assert shape_subtableau(same, (2, 2)) == same
    single = shape_subtableau(parse_tableau("1 4 7", 2), (2,))
    assert single.shape == (2,)
    with pytest.raises(PreconditionError):
        shape_subtableau(parse_tableau("1 4 / 2", 2), (3,))


def test_shape_subtableau_sweep():
    from hankel_forge.chains import standard_tableau
    from hankel_forge.ideals import monomials_of_degree
    from hankel_forge.polyring import Monomial
    from hankel_forge.sweep import partitions_up_to

    n, c = 8, 1
    for tau in partitions_up_to(4):
        for e in monomials_of_degree(n, sum(tau)):
            mu = standard_tableau(Monomial(e), c)
            if all(gamma_t(mu.shape, j) >= gamma_t(tau, j) for j in range(1, tau[0] + 1)):
                assert shape_subtableau(mu, tau).shape == tau


def test_standard_rep_examples():
    cfg = HankelConfig(6, 2)
    single = standard_rep_gamma_check(cfg, parse_tableau("1 4", 2))
    assert single.passed and single.details["terms"] == [["1", "1 4"]]
    assert standard_rep_gamma_check(cfg, Tableau.from_rows([(1, 4), (2, 6)], 2)).passed
    rep = standard_rep_gamma_check(cfg, Tableau.from_rows([(2, 5), (1, 6)], 2))
    assert rep.passed
    assert rep.details["terms"] == [["1", "1 5 / 2 6"], ["-1", "1 4 / 3 6"]]


def test_secant_verifier_small():
    rep = verify_secant(5, 1)
    assert rep.passed, rep.counterexample
    with pytest.raises(RangeError):
        verify_secant(5, 2)
