import pytest

from hankel_forge.errors import PreconditionError
from hankel_forge.groebner import buchberger, ideals_equal, join_ideal, secant, symbolic_power_by_join
from hankel_forge.hankel import HankelConfig, t_minors
from hankel_forge.ideals import MonomialIdeal, jt_generators, product
from hankel_forge.polyring import format_polynomial, parse_polynomial


def P(text, n):
    return parse_polynomial(text, n)


def initial(ip, n):
    return MonomialIdeal(n, [m.exponents for m in buchberger(ip.generators).leading_monomials()])


def test_join_of_points_in_p1():
    # the two coordinate points of the projective line span all of it
    J = join_ideal([[P("x1", 2)], [P("x2", 2)]])
    assert all(g.is_zero() for g in J.generators)
    # two points in the plane span a line
    L = join_ideal([[P("x1", 3), P("x2", 3)], [P("x2", 3), P("x3", 3)]])
    assert [format_polynomial(g) for g in L.generators] == ["x2"]


def test_join_methods_agree():
    I = t_minors(HankelConfig(5, 1), 2)
    a = secant(I, 2, method="literal")
    b = secant(I, 2, method="substitute")
    ok, info = ideals_equal(a, b)
    assert ok, info


@pytest.mark.parametrize("n,c", [(5, 1), (6, 1), (7, 2)])
def test_secant_of_two_minors_is_three_minors(n, c):
    sec = secant(t_minors(HankelConfig(n, c), 2), 2)
    ok, info = ideals_equal(sec, t_minors(HankelConfig(n, c), 3))
    assert ok, info


def test_secant_r1_is_ideal_itself():
    I = t_minors(HankelConfig(6, 1), 2)
    ok, _ = ideals_equal(secant(I, 1), I)
    assert ok


def test_secant_beyond_rank_is_zero():
    # 2 minors of a 2 x 3 Hankel matrix: the 2-secant fills the space
    sec = secant(t_minors(HankelConfig(4, 1), 2), 2)
    assert all(g.is_zero() for g in sec.generators)


def test_symbolic_power_by_join():
    I = t_minors(HankelConfig(5, 2), 2)
    J = symbolic_power_by_join(I, 2)
    sq = product(jt_generators(5, 2, 2), jt_generators(5, 2, 2))
    assert initial(J, 5) == sq
    ok, _ = ideals_equal(J, [a * b for a in I for b in I])
    assert ok


def test_ideals_equal_reports_witness():
    ok, info = ideals_equal([P("x1", 2)], [P("x1", 2), P("x2", 2)])
    assert not ok and info["missing_from_first"] == "x2"


def test_bad_arguments():
    with pytest.raises(PreconditionError):
        secant([P("x1", 2)], 0)
    with pytest.raises(PreconditionError):
        join_ideal([[P("x1", 2)]], method="nope")
