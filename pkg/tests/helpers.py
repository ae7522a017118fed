"""Games and small utilities shared by the test modules."""

from fractions import Fraction

from equilibria import Format, Game, ParametricGame, zero_tensor
from equilibria.fields import QQ

TP_A = {(0, 0, 0): 1, (0, 1, 0): -5, (0, 0, 1): 3, (0, 1, 1): 1}
TP_B = {(0, 0, 0): 1, (1, 0, 0): 3, (0, 0, 1): -5, (1, 0, 1): 1}
TP_C = {(0, 0, 0): 1, (0, 1, 0): 3, (1, 0, 0): -5, (1, 1, 0): 1}

# BoS fixtures in enumerate order (p00, p01, p10, p11)
BOS_VERTICES = {
    (1, 0, 0, 0),
    (0, 0, 0, 1),
    (Fraction(2, 7), Fraction(3, 7), 0, Fraction(2, 7)),
    (Fraction(3, 8), 0, Fraction(1, 4), Fraction(3, 8)),
    (Fraction(6, 25), Fraction(9, 25), Fraction(4, 25), Fraction(6, 25)),
}
BOS_FACETS = {
    ((0, -1, 0, 0), 0),
    ((-3, 2, 0, 0), 0),
    ((0, 0, -1, 0), 0),
    ((-2, 0, 3, 0), 0),
    ((0, 2, 0, -3), 0),
    ((0, 0, 3, -2), 0),
}


def game_from(fmt, tables, field=QQ):
    tensors = []
    for table in tables:
        t = zero_tensor(fmt, field)
        for idx, v in table.items():
            t[idx] = v
        tensors.append(t)
    return Game(tensors)


def bos(a01=0):
    return game_from((2, 2), [{(0, 0): 3, (1, 1): 2, (0, 1): a01}, {(0, 0): 2, (1, 1): 3}])


def three_player_game():
    return game_from((2, 2, 2), [TP_A, TP_B, TP_C])


def three_player_perturbed() -> ParametricGame:
    fmt = Format((2, 2, 2))
    slope = game_from(fmt, [{k: 1 for k in TP_A}, {}, {}])
    return ParametricGame(three_player_game(), slope, "e")


def zero_game(fmt, field=QQ):
    return Game([zero_tensor(fmt, field) for _ in fmt])


def fr(v):
    return tuple(Fraction(x) for x in v)
