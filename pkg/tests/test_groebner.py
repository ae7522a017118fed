import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy

from equilibria import GF, QQ, Ideal, Ring
from equilibria.errors import BudgetExceededError, InvalidInputError
from equilibria.groebner import (
    dimension_and_degree,
    eliminate,
    groebner_basis,
    ideal_contains,
    ideal_equals,
    isolate_real_roots,
    normal_form,
    quotient,
    saturate,
    sturm_count,
)
from equilibria.polyring import AuxVar

XS = sympy.symbols("x0:4")


def ring(n, field=QQ, order=None):
    return Ring([AuxVar(f"x{i}") for i in range(n)], field, order)


def rand_quadric(R, rng, terms=4, homogeneous=False):
    f = R.zero
    for _ in range(terms):
        e = [0] * R.nvars
        deg = 2 if homogeneous else rng.randint(0, 2)
        for _ in range(deg):
            e[rng.randrange(R.nvars)] += 1
        f = f + R.from_terms({tuple(e): rng.randint(-5, 5)})
    return f


def rand_ideal(R, rng, k=3, homogeneous=False):
    return Ideal(R, [rand_quadric(R, rng, homogeneous=homogeneous) for _ in range(k)])


def spoly(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    R = f.ring
    mf = R.from_terms({tuple(a - b for a, b in zip(lcm, lf)): R.field.inv(f.leading_coefficient())})
    mg = R.from_terms({tuple(a - b for a, b in zip(lcm, lg)): R.field.inv(g.leading_coefficient())})
    return mf * f - mg * g


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"), locals={f"x{i}": XS[i] for i in range(4)})


def from_sympy(R, expr):
    poly = sympy.Poly(expr, *XS[: R.nvars])
    return R.from_terms({e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


# -- fixtures ----------------------------------------------------------------


def test_small_bases():
    R = ring(2)
    x, y = R.gens
    assert list(groebner_basis(Ideal(R, [x]))) == [x]
    G = groebner_basis(Ideal(R, [x - y, y**2]))
    assert set(G) == {x - y, y**2}
    assert normal_form(x**2, groebner_basis(Ideal(R, [x - y]))) == y**2
    assert normal_form(R.one, G) == R.one
    for g in (x - y, y**2):
        assert normal_form(g, G).is_zero()


def test_ideal_equality():
    R = ring(2)
    x, y = R.gens
    I = Ideal(R, [x, y])
    assert ideal_equals(I, I)
    assert ideal_equals(I, Ideal(R, [x + y, y]))
    assert not ideal_equals(I, Ideal(R, [x]))
    assert ideal_contains(I, Ideal(R, [x * y + x]))


def test_eliminate_fixtures():
    R = ring(2)
    x, y = R.gens
    E = eliminate(Ideal(R, [x - y, y**2]), [x])
    assert list(E) == [y**2]
    I = Ideal(R, [x**2 - y, x * y])
    assert ideal_equals(eliminate(I, []), I)


def test_saturate_fixtures():
    R = ring(3)
    x, y, z = R.gens
    assert ideal_equals(saturate(Ideal(R, [x * y, x * z]), x), Ideal(R, [y, z]))
    assert ideal_equals(saturate(Ideal(R, [x**2 * y]), y), Ideal(R, [x**2]))
    I = Ideal(R, [x * y - z, x**2])
    assert ideal_equals(saturate(I, R.one), I)
    with pytest.raises(InvalidInputError):
        saturate(I, R.zero)


def test_quotient():
    R = ring(2)
    x, y = R.gens
    assert ideal_equals(quotient(Ideal(R, [x**2 * y, y**3]), y), Ideal(R, [x**2, y**2]))


def test_dimension_degree_fixtures():
    R = ring(3)
    x, y, z = R.gens
    assert tuple(dimension_and_degree(Ideal(R, [R.one]))) == (-1, None)
    assert tuple(dimension_and_degree(Ideal(R, []))) == (3, 1)
    assert tuple(dimension_and_degree(Ideal(R, [x * y, x * z]))) == (2, 1)
    assert tuple(dimension_and_degree(Ideal(R, [x**2 - 1, y - x, z**3 - z]))) == (0, 6)
    assert tuple(dimension_and_degree(Ideal(R, [x**3 + y**3 + z**3]))) == (2, 3)
    # non-homogeneous, positive dimensional
    assert dimension_and_degree(Ideal(R, [x * y - 1])).degree is None


def test_budget_exceeded():
    rng = random.Random(3)
    R = ring(4)
    with pytest.raises(BudgetExceededError):
        groebner_basis(rand_ideal(R, rng, 4), budget=3)


def test_sturm_fixtures():
    R = ring(1)
    (x,) = R.gens
    assert sturm_count(12 * x**2 - 14 * x + 3, (0, 1)) == 2
    assert sturm_count(12 * x**2 - 10 * x + 3, (-math.inf, math.inf)) == 0
    assert sturm_count(x**2, (-1, 1)) == 1
    assert sturm_count(x**2 - 2, (None, None)) == 2
    # open interval excludes endpoint roots
    assert sturm_count(x**2 - 1, (-1, 1)) == 0
    with pytest.raises(InvalidInputError):
        sturm_count(R.zero)
    with pytest.raises(InvalidInputError):
        sturm_count(x, (0.5, 1))


def test_isolate_real_roots():
    R = ring(1)
    (x,) = R.gens
    f = (x**2 - 2) * (x - Fraction(1, 3)) * (x**2 + 1)
    ivs = isolate_real_roots(f)
    assert len(ivs) == 3
    for a, b in ivs:
        if a == b:
            assert a == Fraction(1, 3)
        else:
            assert sturm_count(f, (a, b)) == 1


# -- properties --------------------------------------------------------------


@pytest.mark.parametrize("field", [QQ, GF(32003)])
def test_spair_audit_random(field):
    rng = random.Random(11)
    for trial in range(40):
        R = ring(rng.randint(2, 4), field)
        G = groebner_basis(rand_ideal(R, rng, rng.randint(1, 3)))
        for g in G:
            assert g.leading_coefficient() == 1
        for f, g in itertools.combinations(G.polynomials, 2):
            assert normal_form(spoly(f, g), G).is_zero()
        # reduced: no term of g is divisible by another leading monomial
        lms = G.leading_monomials
        for k, g in enumerate(G):
            for e in g.terms:
                for j, m in enumerate(lms):
                    if j != k:
                        assert not all(a <= b for a, b in zip(m, e))


def test_matches_sympy_reduced_basis():
    rng = random.Random(5)
    for trial in range(25):
        n = rng.randint(2, 4)
        R = ring(n)
        I = rand_ideal(R, rng, rng.randint(1, 3))
        ours = set(groebner_basis(I))
        gens = [to_sympy(f) for f in I]
        theirs = sympy.groebner(gens, *XS[:n], order="grevlex", domain="QQ")
        theirs = {from_sympy(R, e) for e in theirs.exprs}
        assert ours == theirs


def test_shuffle_canonical():
    rng = random.Random(7)
    for trial in range(20):
        R = ring(3, GF(32003))
        gens = list(rand_ideal(R, rng, 3))
        G1 = groebner_basis(Ideal(R, gens))
        shuffled = gens[:]
        rng.shuffle(shuffled)
        # also mix in combinations, which generate the same ideal
        shuffled.append(shuffled[0] + shuffled[-1] * 3)
        assert groebner_basis(Ideal(R, shuffled)).polynomials == G1.polynomials


def test_normal_form_linear():
    rng = random.Random(8)
    R = ring(3)
    G = groebner_basis(rand_ideal(R, rng, 2))
    for _ in range(20):
        f, g = rand_quadric(R, rng, 5), rand_quadric(R, rng, 5)
        lhs = normal_form(f + g, G)
        rhs = normal_form(normal_form(f, G) + normal_form(g, G), G)
        assert lhs == rhs


def test_saturation_idempotent_and_fixed_point():
    rng = random.Random(9)
    for trial in range(10):
        R = ring(3, GF(32003))
        I = rand_ideal(R, rng, 2)
        f = R.gens[rng.randrange(3)] + R.gens[rng.randrange(3)]
        S = saturate(I, f)
        assert ideal_equals(saturate(S, f), S)
        assert ideal_equals(quotient(S, f), S)
        assert ideal_contains(S, I)


def test_linear_saturation_matches_auxiliary_variable():
    rng = random.Random(10)
    for trial in range(15):
        R = ring(4, GF(32003))
        I = rand_ideal(R, rng, 3, homogeneous=True)
        coeffs = [rng.randint(0, 3) for _ in range(4)]
        if not any(coeffs):
            coeffs[0] = 1
        f = sum((c * x for c, x in zip(coeffs, R.gens)), R.zero)
        a = saturate(I, f, method="rabinowitsch")
        b = saturate(I, f, method="linear")
        assert ideal_equals(a, b)


def _hilbert_function(lms, n, k):
    count = 0
    for e in itertools.combinations_with_replacement(range(n), k):
        m = [0] * n
        for i in e:
            m[i] += 1
        if not any(all(a <= b for a, b in zip(g, m)) for g in lms):
            count += 1
    return count


def test_degree_against_hilbert_function():
    # independent oracle: (d-1)-th finite difference of the Hilbert function
    rng = random.Random(12)
    for trial in range(8):
        R = ring(4, GF(32003))
        I = rand_ideal(R, rng, rng.randint(1, 3), homogeneous=True)
        G = groebner_basis(I)
        d, deg = dimension_and_degree(G)
        lms = G.leading_monomials
        K = 9
        vals = [_hilbert_function(lms, 4, k) for k in range(K - d, K + 1)]
        for _ in range(d - 1):
            vals = [b - a for a, b in zip(vals, vals[1:])]
        assert vals[-1] == deg


def test_zero_dimensional_degree_counts_solutions():
    R = ring(2)
    x, y = R.gens
    I = Ideal(R, [x**2 - 3 * x + 2, y**2 - 1])
    assert tuple(dimension_and_degree(I)) == (0, 4)


def test_sturm_additivity():
    rng = random.Random(13)
    R = ring(1)
    (x,) = R.gens
    for _ in range(40):
        roots = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))]
        f = R.one
        for r in roots:
            f = f * (x - r)
        f = f * (x**2 - rng.randint(1, 5))
        a, b, c = sorted(Fraction(rng.randint(-60, 60), 7) for _ in range(3))
        if a == b or b == c:
            continue
        on_b = 1 if f.evaluate({x: b}) == 0 else 0
        assert sturm_count(f, (a, b)) + sturm_count(f, (b, c)) + on_b == sturm_count(f, (a, c))


def test_sturm_matches_sympy_root_count():
    rng = random.Random(14)
    R = ring(1)
    t = sympy.Symbol("x0")
    for _ in range(30):
        coeffs = [rng.randint(-10, 10) for _ in range(rng.randint(2, 7))]
        f = R.from_terms({(k,): c for k, c in enumerate(coeffs)})
        if f.is_constant():
            continue
        expr = sum(c * t**k for k, c in enumerate(coeffs))
        roots = set(sympy.real_roots(sympy.Poly(expr, t)))
        expect = sum(1 for r in roots if -2 < r < 3)
        assert sturm_count(f, (-2, 3)) == expect
