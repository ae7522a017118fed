"""Correlated equilibria: the polytope of joint distributions and its payoff image."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import FieldError, InvalidInputError
from .gametensor import Game, enumerate_tensor_indices
from .polytope import (
    FacetDescription,
    HPolytope,
    VPolytope,
    contains_point,
    dim,
    f_vector,
    facet_enumeration,
    vertex_enumeration,
)


def _require_rational(game: Game) -> None:
    if game.field.characteristic:
        raise FieldError("correlated equilibria need rational payoffs")


def correlated_equilibrium_h_rep(game: Game) -> HPolytope:
    """Inequalities ``a.p <= 0`` for every player and ordered pair of strategies
    (k, l), then ``-p_j <= 0`` for every profile, and the equation ``sum p = 1``.

    Coordinates follow ``enumerate_tensor_indices``.  The incentive row for
    (i, k, l) says that switching from recommendation k to l does not pay:
    ``sum_{j : j_i = k} (X_j - X_{j[i:=l]}) p_j >= 0``.
    """
    _require_rational(game)
    fmt = game.format
    idx = enumerate_tensor_indices(fmt)
    m = len(idx)
    ineqs = []
    for i, d in enumerate(fmt):
        X = game[i]
        for k in range(d):
            for l in range(d):
                if k == l:
                    continue
                row = [Fraction(0)] * m
                for pos, j in enumerate(idx):
                    if j[i] != k:
                        continue
                    jl = j[:i] + (l,) + j[i + 1 :]
                    row[pos] = -(Fraction(X[j]) - Fraction(X[jl]))
                ineqs.append((row, 0))
    for pos in range(m):
        row = [0] * m
        row[pos] = -1
        ineqs.append((row, 0))
    return HPolytope.from_rows(ineqs, [([1] * m, 1)], m)


class CEPolytope:
    """Correlated equilibrium polytope with lazily computed V-description."""

    def __init__(self, game: Game):
        self.game = game
        self.h_rep = correlated_equilibrium_h_rep(game)
        self._v: VPolytope | None = None

    @property
    def ambient(self) -> int:
        return self.h_rep.ambient

    @property
    def v_rep(self) -> VPolytope:
        if self._v is None:
            self._v = vertex_enumeration(self.h_rep)
        return self._v

    def vertices(self) -> list[tuple[Fraction, ...]]:
        return list(self.v_rep.vertices)

    def facets(self) -> FacetDescription:
        return facet_enumeration(self.v_rep)

    def dim(self) -> int:
        return dim(self.v_rep)

    def f_vector(self) -> list[int]:
        return f_vector(self.v_rep)

    def contains(self, p: Sequence) -> bool:
        return contains_point(self.h_rep, p)

    def vertex_payoffs(self) -> list[tuple[Fraction, ...]]:
        return [joint_expected_payoffs(self.game, v) for v in self.vertices()]


def correlated_equilibria(game: Game) -> CEPolytope:
    return CEPolytope(game)


def joint_expected_payoffs(game: Game, p: Sequence) -> tuple:
    """Payoff vector ``(sum_j X^(i)_j p_j)_i`` of a joint distribution."""
    F = game.field
    idx = enumerate_tensor_indices(game.format)
    if len(p) != len(idx):
        raise InvalidInputError(f"joint distribution needs {len(idx)} coordinates, got {len(p)}")
    p = [F.convert(x) for x in p]
    if F.convert(sum(p, F.zero)) != F.one:
        raise InvalidInputError("joint distribution does not sum to 1")
    pos = {j: k for k, j in enumerate(idx)}
    out = []
    for X in game:
        out.append(F.convert(sum((x * p[pos[j]] for j, x in X.items()), F.zero)))
    return tuple(out)
