from fractions import Fraction

import pytest

from equilibria import GF, QQ, random_game
from equilibria.correlated import (
    correlated_equilibria,
    correlated_equilibrium_h_rep,
    joint_expected_payoffs,
)
from equilibria.errors import FieldError, InvalidInputError
from equilibria.gametensor import Game, Tensor, enumerate_tensor_indices

from helpers import BOS_FACETS, BOS_VERTICES, bos, fr, game_from, zero_game


def test_bos_h_rep_shape():
    H = correlated_equilibrium_h_rep(bos())
    assert H.ambient == 4
    assert len(H.inequalities) == 4 + 4
    assert H.equations == (((1, 1, 1, 1), 1),)
    # rows for (player 0, k=0, l=1) and (player 0, k=1, l=0) come first
    assert H.inequalities[0] == (fr((-3, 2, 0, 0)), 0)
    assert H.inequalities[1] == (fr((0, 0, 3, -2)), 0)


def test_bos_polytope():
    CE = correlated_equilibria(bos())
    assert CE.dim() == 3
    assert set(CE.vertices()) == {fr(v) for v in BOS_VERTICES}
    assert CE.f_vector() == [5, 9, 6, 1]
    fd = CE.facets()
    assert set(fd.facets) == BOS_FACETS
    assert all(b == 0 for _, b in fd.facets)
    for v in CE.vertices():
        assert CE.contains(v)
    assert CE.contains((Fraction(6, 25), Fraction(9, 25), Fraction(4, 25), Fraction(6, 25)))


def test_zero_game_is_simplex():
    CE = correlated_equilibria(zero_game((2, 2)))
    assert all(not any(a) for a, _ in CE.h_rep.inequalities[:4])
    assert CE.dim() == 3
    assert len(CE.vertices()) == 4
    assert CE.f_vector() == [4, 6, 4, 1]


def test_dominant_strategies_single_point():
    # prisoner's dilemma: defecting (strategy 1) strictly dominates
    g = game_from((2, 2), [{(0, 0): 3, (0, 1): 0, (1, 0): 5, (1, 1): 1}, {(0, 0): 3, (0, 1): 5, (1, 0): 0, (1, 1): 1}])
    CE = correlated_equilibria(g)
    assert CE.vertices() == [fr((0, 0, 0, 1))]
    assert CE.dim() == 0
    # brute force over the four pure profiles
    pure_ce = []
    for k in range(4):
        p = [0] * 4
        p[k] = 1
        if CE.contains(p):
            pure_ce.append(k)
    assert pure_ce == [3]


def test_joint_payoffs():
    g = bos()
    assert joint_expected_payoffs(g, (1, 0, 0, 0)) == (3, 2)
    assert joint_expected_payoffs(g, (0, 0, 0, 1)) == (2, 3)
    p = (Fraction(6, 25), Fraction(9, 25), Fraction(4, 25), Fraction(6, 25))
    assert joint_expected_payoffs(g, p) == (Fraction(6, 5), Fraction(6, 5))
    assert joint_expected_payoffs(g, (Fraction(1, 2), 0, 0, Fraction(1, 2))) == (Fraction(5, 2), Fraction(5, 2))
    with pytest.raises(InvalidInputError):
        joint_expected_payoffs(g, (1, 0, 0))
    with pytest.raises(InvalidInputError):
        joint_expected_payoffs(g, (1, 1, 0, 0))


def test_tmne_product_lies_in_polytope():
    CE = correlated_equilibria(bos())
    a, b = (Fraction(3, 5), Fraction(2, 5)), (Fraction(2, 5), Fraction(3, 5))
    p = [a[i] * b[j] for i, j in enumerate_tensor_indices((2, 2))]
    assert CE.contains(p)


def test_vertices_satisfy_incentives_random():
    for seed in range(5):
        g = random_game((2, 3), QQ, seed)
        CE = correlated_equilibria(g)
        for v in CE.vertices():
            assert all(x >= 0 for x in v) and sum(v) == 1
            for a, b in CE.h_rep.inequalities:
                assert sum(x * y for x, y in zip(a, v)) <= b


def test_zero_sum_payoffs_cancel():
    for seed in range(5):
        g = random_game((2, 2), QQ, seed)
        neg = Tensor(g.format, QQ, {k: -x for k, x in g[0].items()})
        zs = Game([g[0], neg])
        for v in correlated_equilibria(zs).vertices():
            u = joint_expected_payoffs(zs, v)
            assert u[0] + u[1] == 0


def test_rational_field_required():
    with pytest.raises(FieldError):
        correlated_equilibrium_h_rep(random_game((2, 2), GF(7), 0))
