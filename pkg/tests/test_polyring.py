import random
from fractions import Fraction

import pytest

from equilibria import GF, QQ, Ideal, MonomialOrder, Ring, nash_equilibrium_ring, probability_ring
from equilibria.errors import FieldError, InvalidInputError, RingMismatchError
from equilibria.polyring import AuxVar, KVar, NashVar, ProbVar, evaluate


def test_probability_ring_variables():
    R = probability_ring([2, 1, 2])
    assert [str(v) for v in R.variables] == ["p_{0,0,0}", "p_{0,0,1}", "p_{1,0,0}", "p_{1,0,1}"]
    assert R.field == QQ


def test_probability_ring_label_and_field():
    R = probability_ring([2, 2], "ZZ/32003", "q")
    assert [str(v) for v in R.variables] == ["q_{0,0}", "q_{0,1}", "q_{1,0}", "q_{1,1}"]
    assert R.field == GF(32003)


def test_real_field_rejected():
    with pytest.raises(FieldError, match="unsupported"):
        probability_ring([2, 1, 2], "RR")


def test_nash_ring_variables():
    R = nash_equilibrium_ring([2, 2, 2])
    assert [str(v) for v in R.variables] == ["p_{0,0}", "p_{0,1}", "p_{1,0}", "p_{1,1}", "p_{2,0}", "p_{2,1}"]
    assert nash_equilibrium_ring([2, 2]).nvars == 4
    assert [str(v) for v in nash_equilibrium_ring([1]).variables] == ["p_{0,0}"]


def test_prob_and_nash_vars_stay_distinct():
    # both print p_{0,0} for two players but are different objects
    assert str(ProbVar((0, 0))) == str(NashVar(0, 0))
    assert ProbVar((0, 0)) != NashVar(0, 0)
    assert probability_ring([2, 2]) != nash_equilibrium_ring([2, 2])


def test_ring_rejects_duplicates_and_empty():
    with pytest.raises(InvalidInputError):
        Ring([AuxVar("x"), AuxVar("x")])
    with pytest.raises(InvalidInputError):
        Ring([])


def test_evaluate():
    R = nash_equilibrium_ring([2, 2])
    f = R.parse("p_{0,0} + p_{0,1} - 1")
    half = {v: Fraction(1, 2) for v in R.variables}
    assert evaluate(f, half) == 0
    assert evaluate(R.constant(7), {}) == 7
    with pytest.raises(InvalidInputError):
        evaluate(f, {R.variables[0]: 1})


def test_printing_format():
    R = Ring([AuxVar("x"), AuxVar("y")])
    x, y = R.gens
    f = 3 * x**2 * y - x * y.scale(Fraction(3, 2)) + 1
    assert str(f) == "3*x^2*y - 3/2*x*y + 1"
    assert str(-x) == "-x"
    assert str(R.zero) == "0"


def test_grevlex_term_order():
    R = Ring([AuxVar("x"), AuxVar("y"), AuxVar("z")])
    f = R.parse("x*z + y^2 + x^3 + z")
    # degree first, then reverse lex: y^2 > x*z
    assert str(f) == "x^3 + y^2 + x*z + z"


def test_lex_order():
    R = Ring([AuxVar("x"), AuxVar("y")], order="lex")
    assert str(R.parse("y^5 + x")) == "x + y^5"


def test_elimination_order_puts_block_first():
    o = MonomialOrder.elimination([1], 3)
    assert o.key((0, 1, 0)) > o.key((5, 0, 5))


def _rand_poly(R, rng, terms=4, deg=3):
    out = R.zero
    for _ in range(terms):
        e = [rng.randint(0, deg) for _ in range(R.nvars)]
        out = out + R.from_terms({tuple(e): Fraction(rng.randint(-9, 9), rng.randint(1, 5))})
    return out


@pytest.mark.parametrize("field", [QQ, GF(101)])
def test_ring_axioms_random(field):
    rng = random.Random(1)
    R = Ring([AuxVar("x"), AuxVar("y"), AuxVar("z")], field)
    for _ in range(25):
        a, b, c = (_rand_poly(R, rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == R.zero


@pytest.mark.parametrize("field", [QQ, GF(32003)])
def test_print_parse_round_trip(field):
    rng = random.Random(2)
    R = probability_ring([2, 2, 2], field)
    for _ in range(30):
        f = _rand_poly(R, rng, terms=6, deg=2)
        assert R.parse(str(f)) == f


def test_parse_structured_names_and_unicode_minus():
    R = probability_ring([2, 2])
    f = R.parse("−3*p_{0,0}*p_{1,0} + 2*p_{0,1}^2")
    assert f == R.var(ProbVar((0, 0))) * R.var(ProbVar((1, 0))) * -3 + 2 * R.var(ProbVar((0, 1))) ** 2
    S = R.extend([KVar(0)])
    assert S.parse("k_0 - 3") == S.var(KVar(0)) - 3


def test_gf_coefficients_reduce():
    R = Ring([AuxVar("x")], GF(7))
    x = R.gens[0]
    assert 7 * x == R.zero
    assert str(R.constant(6) * x) == "-x"
    assert (x.scale(Fraction(1, 2)) * 2) == x


def test_rational_coefficients_lowest_terms():
    R = Ring([AuxVar("x")])
    f = R.from_terms({(1,): Fraction(6, -4)})
    (c,) = f.terms.values()
    assert c == Fraction(-3, 2) and c.denominator == 2


def test_ideal_drops_zero_and_checks_ring():
    R = Ring([AuxVar("x")])
    S = Ring([AuxVar("y")])
    I = Ideal(R, [R.zero, R.gens[0]])
    assert len(I) == 1
    with pytest.raises(RingMismatchError):
        Ideal(R, [S.gens[0]])
