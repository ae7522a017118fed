"""Totally mixed Nash equilibria: the multilinear system, root counts and solving."""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    CannotCertifyError,
    FieldError,
    FormatError,
    InvalidInputError,
    NotZeroDimensionalError,
    RingMismatchError,
)
from .fields import QQ
from .gametensor import Format, Game, Tensor, enumerate_tensor_indices
from .groebner import dimension_and_degree, groebner_basis
from .groebner import sturm
from .polyring import (
    Ideal,
    MonomialOrder,
    NashVar,
    Polynomial,
    Ring,
    nash_equilibrium_ring,
)
from .polytope import VPolytope


# ---------------------------------------------------------------------------
# the equilibrium ideal
# ---------------------------------------------------------------------------


def _check_ring(R: Ring, game: Game) -> None:
    if R.field != game.field:
        raise FieldError("ring and game use different coefficient fields")
    expected = [NashVar(i, j) for i, d in enumerate(game.format) for j in range(d)]
    got = [NashVar(v.player, v.strategy) if isinstance(v, NashVar) else v for v in R.variables]
    if got != expected:
        raise RingMismatchError("ring is not the Nash equilibrium ring of the game's format")


def nash_multilinear_polynomials(R: Ring, game: Game) -> list[Polynomial]:
    """The sum_i (d_i - 1) multilinear equations, strategy 0 as reference."""
    _check_ring(R, game)
    fmt = game.format
    n = len(fmt)
    F = R.field
    offsets = [sum(fmt[:i]) for i in range(n)]
    nv = R.nvars
    out = []
    for i in range(n):
        others = [k for k in range(n) if k != i]
        for k in range(1, fmt[i]):
            terms: dict = {}
            for rest in itertools.product(*(range(fmt[o]) for o in others)):
                hi = list(rest[:i]) + [k] + list(rest[i:])
                lo = list(rest[:i]) + [0] + list(rest[i:])
                c = F.convert(game[i][hi] - game[i][lo])
                if c == 0:
                    continue
                e = [0] * nv
                for o, j in zip(others, rest):
                    e[offsets[o] + j] = 1
                e = tuple(e)
                terms[e] = F.convert(terms.get(e, F.zero) + c)
            out.append(R.from_terms({e: c for e, c in terms.items() if c != 0}))
    return out


def nash_equilibrium_ideal(R: Ring, game: Game) -> Ideal:
    """Multilinear equations plus the normalizations sum_j p_{i,j} - 1.

    Zero multilinear generators (e.g. from a zero game) are dropped, as for
    any ``Ideal``.
    """
    polys = nash_multilinear_polynomials(R, game)
    for i, d in enumerate(game.format):
        s = R.zero
        for j in range(d):
            s = s + R.var(R.variables[sum(game.format[:i]) + j])
        polys.append(s - 1)
    return Ideal(R, polys)


# ---------------------------------------------------------------------------
# counting: block derangements and the coefficient formula
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDerangement:
    """Sets S_i of slots assigned to player i.

    Slots are labelled ``(j, s)``: the s-th slot of player j's block T_j, which
    has ``d_j - 1`` slots.  S_i avoids block i and has size ``d_i - 1``; the
    S_i partition all slots.
    """

    sets: tuple[frozenset, ...]

    def __iter__(self):
        return iter(self.sets)


def _slots(fmt: Format) -> list[tuple[int, int]]:
    return [(j, s) for j, d in enumerate(fmt) for s in range(d - 1)]


def iter_block_derangements(fmt: Sequence[int]) -> Iterator[BlockDerangement]:
    fmt = Format(fmt)
    n = len(fmt)
    slots = _slots(fmt)
    cap = [d - 1 for d in fmt]
    assign: list[int] = [0] * len(slots)

    # every player must still be able to fill its set from the slots left
    def feasible(pos: int) -> bool:
        left = len(slots) - pos
        for i in range(n):
            own_left = sum(1 for j, _ in slots[pos:] if j == i)
            if cap[i] > left - own_left:
                return False
        return True

    def rec(pos: int):
        if pos == len(slots):
            sets = [set() for _ in range(n)]
            for slot, i in zip(slots, assign):
                sets[i].add(slot)
            yield BlockDerangement(tuple(frozenset(s) for s in sets))
            return
        if not feasible(pos):
            return
        owner = slots[pos][0]
        for i in range(n):
            if i != owner and cap[i] > 0:
                cap[i] -= 1
                assign[pos] = i
                yield from rec(pos + 1)
                cap[i] += 1

    if not slots:
        yield BlockDerangement(tuple(frozenset() for _ in range(n)))
        return
    yield from rec(0)


def block_derangements(fmt: Sequence[int]) -> list[BlockDerangement]:
    return list(iter_block_derangements(fmt))


def number_tmne(fmt: Sequence[int]) -> int:
    """Coefficient of prod h_i^(d_i - 1) in prod_i (sum_{j != i} h_j)^(d_i - 1).

    Exponents of h_j are truncated above d_j - 1 while multiplying, which keeps
    the intermediate polynomials small.
    """
    fmt = Format(fmt)
    n = len(fmt)
    if n < 2:
        raise FormatError("numberTMNE needs at least two players")
    cap = [d - 1 for d in fmt]
    poly = {(0,) * n: 1}
    for i in range(n):
        for _ in range(cap[i]):
            nxt: dict = {}
            for e, c in poly.items():
                for j in range(n):
                    if j == i or e[j] >= cap[j]:
                        continue
                    ne = e[:j] + (e[j] + 1,) + e[j + 1:]
                    nxt[ne] = nxt.get(ne, 0) + c
            poly = nxt
    return poly.get(tuple(cap), 0)


def delta_list(fmt: Sequence[int]) -> list[VPolytope]:
    """Newton polytopes Delta^(i) = prod_{j != i} simplex x {0} in R^(sum d_j)."""
    fmt = Format(fmt)
    n = len(fmt)
    if n < 2:
        raise FormatError("deltaList needs at least two players")
    total = sum(fmt)
    offsets = [sum(fmt[:i]) for i in range(n)]
    out = []
    for i in range(n):
        verts = []
        for choice in itertools.product(*(range(d) if j != i else [None] for j, d in enumerate(fmt))):
            v = [0] * total
            for j, c in enumerate(choice):
                if c is not None:
                    v[offsets[j] + c] = 1
            verts.append(v)
        out.append(VPolytope(verts))
    return out


# ---------------------------------------------------------------------------
# parametric games
# ---------------------------------------------------------------------------


class ParametricGame:
    """Game whose entries are affine in one parameter: ``base + e * slope``."""

    def __init__(self, base: Game, slope: Game, name: str = "e"):
        if base.format != slope.format or base.field != slope.field:
            raise InvalidInputError("base and slope games must share format and field")
        self.base = base
        self.slope = slope
        self.name = name

    @property
    def format(self) -> Format:
        return self.base.format

    @property
    def field(self):
        return self.base.field

    def at(self, value) -> Game:
        return specialize_parameter(self, value)

    @classmethod
    def from_entries(cls, fmt, entries: Sequence[dict], field=QQ, name: str = "e") -> ParametricGame:
        """Build from per-player dicts mapping index tuples to expressions like ``"1+e"``."""
        fmt = Format(fmt)
        base, slope = [], []
        for table in entries:
            b, s = Tensor(fmt, field), Tensor(fmt, field)
            for idx, expr in table.items():
                c, m = parse_affine(expr, name)
                b[idx] = c
                s[idx] = m
            base.append(b)
            slope.append(s)
        return cls(Game(base), Game(slope), name)


def specialize_parameter(pgame: ParametricGame, value) -> Game:
    F = pgame.field
    v = F.convert(Fraction(value) if not isinstance(value, (int, Fraction)) else value)
    tensors = []
    for b, s in zip(pgame.base, pgame.slope):
        t = Tensor(b.format, F)
        for idx in enumerate_tensor_indices(b.format):
            t[idx] = b[idx] + v * s[idx]
        tensors.append(t)
    return Game(tensors)


def parse_affine(expr, name: str = "e") -> tuple[Fraction, Fraction]:
    """``(c, m)`` with expr == c + m*name; raises for non-affine expressions."""
    if isinstance(expr, (int, Fraction)):
        return Fraction(expr), Fraction(0)
    text = str(expr).strip().replace("−", "-").replace("^", "**")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise InvalidInputError(f"cannot parse payoff expression {expr!r}") from exc

    def walk(node) -> tuple[Fraction, Fraction]:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value), Fraction(0)
        if isinstance(node, ast.Name):
            if node.id != name:
                raise InvalidInputError(f"unknown symbol {node.id!r} in payoff {expr!r}")
            return Fraction(0), Fraction(1)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            c, m = walk(node.operand)
            return (-c, -m) if isinstance(node.op, ast.USub) else (c, m)
        if isinstance(node, ast.BinOp):
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return a[0] + b[0], a[1] + b[1]
            if isinstance(node.op, ast.Sub):
                return a[0] - b[0], a[1] - b[1]
            if isinstance(node.op, ast.Mult):
                if a[1] and b[1]:
                    raise InvalidInputError(f"payoff {expr!r} is not affine in {name}")
                return a[0] * b[0], a[0] * b[1] + a[1] * b[0]
            if isinstance(node.op, ast.Div):
                if b[1] or b[0] == 0:
                    raise InvalidInputError(f"payoff {expr!r} is not affine in {name}")
                return a[0] / b[0], a[1] / b[0]
            if isinstance(node.op, ast.Pow):
                if b[1] or b[0].denominator != 1 or b[0] < 0:
                    raise InvalidInputError(f"payoff {expr!r} is not affine in {name}")
                k = int(b[0])
                if k == 0:
                    return Fraction(1), Fraction(0)
                if k == 1:
                    return a
                if a[1]:
                    raise InvalidInputError(f"payoff {expr!r} is not affine in {name}")
                return a[0] ** k, Fraction(0)
        raise InvalidInputError(f"unsupported payoff expression {expr!r}")

    return walk(tree)


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TMNESolution:
    """A certified totally mixed equilibrium, given by an isolating interval.

    ``interval`` isolates the value of ``variable`` (the last variable of the
    lex order); every other coordinate is ``coordinates[v](variable)``.
    """

    variable: object
    interval: tuple[Fraction, Fraction]
    coordinates: dict

    def exact(self) -> dict | None:
        """Exact rational coordinates when the root is rational."""
        a, b = self.interval
        if a != b:
            return None
        return {v: sturm.evaluate(q, a) for v, q in self.coordinates.items()}


@dataclass(frozen=True)
class NashSolveResult:
    count: int
    eliminant: Polynomial
    solutions: tuple[TMNESolution, ...]
    degree: int


def _shape_position(G, last: int):
    """Split a lex basis into x_i - g_i(x_last) and the univariate eliminant."""
    R = G.ring
    n = R.nvars
    polys = list(G.polynomials)
    univ = [g for g in polys if g.support() <= {last}]
    if len(univ) != 1 or len(polys) != n:
        return None
    h = univ[0]
    coords = {}
    for g in polys:
        if g is h:
            continue
        lm = g.leading_monomial()
        if sum(lm) != 1:
            return None
        i = lm.index(1)
        if i == last:
            return None
        rest = g - R.var(R.variables[i])
        if not rest.support() <= {last}:
            return None
        coords[i] = -rest
    if len(coords) != n - 1:
        return None
    return h, coords


def solve_totally_mixed(game: Game, param=None, budget: int | None = None) -> NashSolveResult:
    """Count the totally mixed Nash equilibria of a game over QQ exactly.

    The equilibrium ideal must be zero-dimensional.  A lex basis in shape
    position reduces the problem to one univariate eliminant; its real roots
    are isolated with Sturm chains and each remaining coordinate is checked
    for positivity at the root by exact interval refinement.
    """
    if isinstance(game, ParametricGame):
        if param is None:
            raise InvalidInputError("parametric game needs a parameter value")
        game = specialize_parameter(game, param)
    if game.field != QQ:
        raise FieldError("totally mixed equilibria are counted over QQ only")
    R = nash_equilibrium_ring(game.format)
    J = nash_equilibrium_ideal(R, game)
    G0 = groebner_basis(J, budget=budget)
    if G0.is_unit():
        return NashSolveResult(0, R.one, (), 0)
    dd = dimension_and_degree(G0)
    if dd.dim != 0:
        raise NotZeroDimensionalError()
    n = R.nvars
    for last in range(n - 1, -1, -1):
        perm = [i for i in range(n) if i != last] + [last]
        order = MonomialOrder([("lex", perm)], n)
        G = groebner_basis(J, order=order, budget=budget)
        shape = _shape_position(G, last)
        if shape is not None:
            break
    else:
        raise CannotCertifyError("no lex basis in shape position; cannot certify the count")
    h, coords = shape
    h_dense = sturm.to_dense(h)
    h_sf = sturm.squarefree_part(h_dense)
    solutions = []
    var_last = R.variables[last]
    coord_dense = {R.variables[i]: sturm.to_dense(q) for i, q in coords.items()}
    coord_dense = {v: coord_dense[v] for v in R.variables if v in coord_dense}
    for iv in sturm.isolate_real_roots(h_sf):
        if sturm.sign_at_root([Fraction(0), Fraction(1)], h_sf, iv) <= 0:
            continue
        if all(sturm.sign_at_root(q, h_sf, iv) > 0 for q in coord_dense.values()):
            solutions.append(TMNESolution(var_last, iv, coord_dense))
    return NashSolveResult(len(solutions), h, tuple(solutions), dd.degree)


def count_totally_mixed_nash(game, param=None, budget: int | None = None) -> int:
    return solve_totally_mixed(game, param, budget).count


def eliminant(game: Game, variable=None, budget: int | None = None) -> Polynomial:
    """Generator of the equilibrium ideal intersected with one variable's ring.

    Defaults to the last Nash variable (p_{n-1, d-1}).
    """
    from .groebner import eliminate

    R = nash_equilibrium_ring(game.format, game.field)
    J = nash_equilibrium_ideal(R, game)
    target = R.variables[-1] if variable is None else R.variables[R.index(variable)]
    others = [v for v in R.variables if v != target]
    E = eliminate(J, others, budget=budget)
    if len(E.generators) != 1:
        raise CannotCertifyError("elimination ideal is not principal")
    return E.generators[0]


def is_multilinear_structure_ok(R: Ring, game: Game) -> bool:
    """Each player-i generator has degree <= n-1 and avoids player i's variables."""
    fmt = game.format
    polys = nash_multilinear_polynomials(R, game)
    k = 0
    for i, d in enumerate(fmt):
        own = set(range(sum(fmt[:i]), sum(fmt[:i]) + d))
        for _ in range(d - 1):
            f = polys[k]
            k += 1
            if f.total_degree() > len(fmt) - 1 or f.support() & own:
                return False
    return True


__all__ = [
    "BlockDerangement",
    "NashSolveResult",
    "ParametricGame",
    "TMNESolution",
    "block_derangements",
    "count_totally_mixed_nash",
    "delta_list",
    "eliminant",
    "iter_block_derangements",
    "nash_equilibrium_ideal",
    "nash_multilinear_polynomials",
    "number_tmne",
    "parse_affine",
    "solve_totally_mixed",
    "specialize_parameter",
]
