"""Spohn matrices, the Spohn ideal, the Konstanz matrix and conditional payoffs."""

from __future__ import annotations

from typing import Sequence

from .errors import FieldError, InvalidInputError, RingMismatchError, UndefinedMarginalError
from .gametensor import Game, enumerate_tensor_indices
from .polyring import Ideal, KVar, Polynomial, ProbVar, Ring


class PolyMatrix:
    """A rectangular matrix of polynomials over one ring."""

    def __init__(self, ring: Ring, rows: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in rows]
        if len({len(r) for r in rows}) > 1:
            raise InvalidInputError("matrix rows have different lengths")
        self.ring = ring
        self.rows = rows

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    __hash__ = None

    def __mul__(self, vec: Sequence[Polynomial]) -> list[Polynomial]:
        if len(vec) != self.shape[1]:
            raise InvalidInputError("vector length does not match the column count")
        out = []
        for row in self.rows:
            acc = self.ring.zero
            for a, b in zip(row, vec):
                if a.terms:
                    acc = acc + a * b
            out.append(acc)
        return out

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def __str__(self):
        cells = self.to_strings()
        if not cells:
            return ""
        widths = [max(len(r[c]) for r in cells) for c in range(len(cells[0]))]
        return "\n".join(
            "| " + " ".join(s.rjust(w) for s, w in zip(r, widths)) + " |" for r in cells
        )

    def __repr__(self):
        return f"PolyMatrix({self.shape[0]}x{self.shape[1]})"


def _check(R: Ring, game: Game) -> list[tuple[int, ...]]:
    if R.field != game.field:
        raise FieldError("ring and game use different coefficient fields")
    idx = enumerate_tensor_indices(game.format)
    probs = [v for v in R.variables if isinstance(v, ProbVar)]
    if [v.index for v in probs] != idx:
        raise RingMismatchError("ring is not the probability ring of the game's format")
    return idx


def marginal(R: Ring, fmt: Sequence[int], i: int, k: int) -> Polynomial:
    """The linear form p_{+...+k+...+} (player i fixed at strategy k)."""
    F = R.field
    terms = {}
    for j in enumerate_tensor_indices(fmt):
        if j[i] == k:
            e = [0] * R.nvars
            e[R.index(R.prob_var(j))] = 1
            terms[tuple(e)] = F.one
    return Polynomial(R, terms)


def spohn_matrices(R: Ring, game: Game) -> list[PolyMatrix]:
    """For each player the d_i x 2 matrix [marginal | payoff-weighted sum]."""
    idx = _check(R, game)
    F = R.field
    gens = {j: R.prob_var(j) for j in idx}
    out = []
    for i, d in enumerate(game.format):
        X = game[i]
        rows = []
        for k in range(d):
            col0 = marginal(R, game.format, i, k)
            col1 = R.zero
            for j in idx:
                if j[i] == k and X[j] != F.zero:
                    col1 = col1 + gens[j].scale(X[j])
            rows.append([col0, col1])
        out.append(PolyMatrix(R, rows))
    return out


def spohn_ideal(R: Ring, game: Game) -> Ideal:
    """All 2x2 minors M[r,0]M[s,1] - M[r,1]M[s,0] (r < s) of all Spohn matrices."""
    gens = []
    for M in spohn_matrices(R, game):
        n = M.shape[0]
        for r in range(n):
            for s in range(r + 1, n):
                gens.append(M[r, 0] * M[s, 1] - M[r, 1] * M[s, 0])
    return Ideal(R, gens)


def konstanz_ring(R: Ring, players: int, label: str = "k") -> Ring:
    return R.extend([KVar(i, label) for i in range(players)])


def konstanz_matrix(R: Ring, game: Game, label: str = "k") -> PolyMatrix:
    """Rows (i, k), columns the pure profiles j; entry k_i - X^(i)_j when j_i = k.

    The matrix lives in ``R`` extended by the variables k_0, ..., k_{n-1}.
    """
    idx = _check(R, game)
    S = konstanz_ring(R, game.players, label)
    rows = []
    for i, d in enumerate(game.format):
        ki = S.var(KVar(i, label))
        X = game[i]
        for k in range(d):
            rows.append([ki - S.constant(X[j]) if j[i] == k else S.zero for j in idx])
    return PolyMatrix(S, rows)


def konstanz_identity_holds(R: Ring, game: Game, label: str = "k") -> bool:
    """Check K(k) vec(p) == stack_i M_i(p) (k_i, -1)^T as polynomials."""
    idx = _check(R, game)
    K = konstanz_matrix(R, game, label)
    S = K.ring
    lhs = K * [S.var(_pvar(R, j)) for j in idx]
    rhs = []
    for i, M in enumerate(spohn_matrices(R, game)):
        ki = S.var(KVar(i, label))
        for r in range(M.shape[0]):
            rhs.append(M[r, 0].to_ring(S) * ki - M[r, 1].to_ring(S))
    return lhs == rhs


def _pvar(R: Ring, j) -> ProbVar:
    return R.variables[R.index(R.prob_var(j))]


def conditional_expected_payoff(game: Game, p: Sequence, i: int, k: int):
    """E^(i)_k(p): player i's expected payoff given that they play k.

    Defined wherever the marginal p_{+...+k+...+} is nonzero.
    """
    F = game.field
    fmt = game.format
    if not 0 <= i < len(fmt) or not 0 <= k < fmt[i]:
        raise InvalidInputError("player or strategy index out of range")
    idx = enumerate_tensor_indices(fmt)
    if len(p) != len(idx):
        raise InvalidInputError(f"joint distribution needs {len(idx)} coordinates, got {len(p)}")
    p = [F.convert(x) for x in p]
    num, den = F.zero, F.zero
    X = game[i]
    for pos, j in enumerate(idx):
        if j[i] == k:
            num = F.convert(num + X[j] * p[pos])
            den = F.convert(den + p[pos])
    if den == F.zero:
        raise UndefinedMarginalError(f"marginal of player {i} at strategy {k} is zero")
    return F.convert(num * F.inv(den))
