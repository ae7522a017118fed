"""Conditional independence among players: graphs, CI ideals and the Spohn CI variety."""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import InvalidInputError, RingMismatchError
from .gametensor import Game, enumerate_tensor_indices
from .groebner import groebner_basis, saturate
from .polyring import Ideal, Polynomial, ProbVar, Ring
from .spohn import marginal, spohn_ideal

ProgressFn = Callable[[str], None]


# ---------------------------------------------------------------------------
# graphs and statements
# ---------------------------------------------------------------------------


class PlayerGraph:
    """Undirected simple graph on player labels (default 1, ..., n)."""

    def __init__(self, labels: Sequence, edges: Iterable[Sequence] = ()):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise InvalidInputError("graph labels must be distinct")
        self.labels = labels
        pos = {v: k for k, v in enumerate(labels)}
        es = set()
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise InvalidInputError(f"edge {e} does not have two endpoints")
            a, b = e
            if a not in pos or b not in pos:
                raise InvalidInputError(f"edge {e} uses an unknown vertex")
            if a == b:
                raise InvalidInputError("self-loops are not allowed")
            es.add(frozenset((a, b)))
        self.edges = frozenset(es)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> PlayerGraph:
        return cls(range(1, n + 1), edges)

    def neighbors(self, v) -> set:
        return {w for e in self.edges if v in e for w in e if w != v}

    def relabel(self, mapping: dict) -> PlayerGraph:
        return PlayerGraph(
            [mapping[v] for v in self.labels], [[mapping[v] for v in e] for e in self.edges]
        )

    def __eq__(self, other):
        return isinstance(other, PlayerGraph) and (self.labels, self.edges) == (other.labels, other.edges)

    def __hash__(self):
        return hash((tuple(self.labels), self.edges))

    def __repr__(self):
        es = sorted(tuple(sorted(e, key=self.labels.index)) for e in self.edges)
        return f"PlayerGraph({self.labels}, {es})"


@dataclass(frozen=True)
class CIStatement:
    """X_A independent of X_B given X_C, over player labels."""

    A: frozenset
    B: frozenset
    C: frozenset = frozenset()

    def __post_init__(self):
        for name in "ABC":
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if not self.A or not self.B:
            raise InvalidInputError("A and B must be nonempty")
        if self.A & self.B or self.A & self.C or self.B & self.C:
            raise InvalidInputError("A, B and C must be pairwise disjoint")

    def canonical(self, labels: Sequence | None = None) -> CIStatement:
        key = labels.index if labels is not None else (lambda v: v)
        if min(map(key, self.A)) > min(map(key, self.B)):
            return CIStatement(self.B, self.A, self.C)
        return self

    def as_lists(self, labels: Sequence | None = None) -> list[list]:
        key = labels.index if labels is not None else None
        return [sorted(s, key=key) for s in (self.A, self.B, self.C)]


def as_statement(s) -> CIStatement:
    if isinstance(s, CIStatement):
        return s
    s = list(s)
    if len(s) == 2:
        s.append(())
    if len(s) != 3:
        raise InvalidInputError(f"a CI statement is a triple (A, B, C), got {s!r}")
    return CIStatement(*s)


def _components(G: PlayerGraph, vertices: set) -> list[set]:
    comps, seen = [], set()
    for v in G.labels:
        if v not in vertices or v in seen:
            continue
        comp, stack = set(), [v]
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(w for w in G.neighbors(u) if w in vertices and w not in comp)
        seen |= comp
        comps.append(comp)
    return comps


def global_markov(G: PlayerGraph) -> list[CIStatement]:
    """Every canonical (A, B, C) with C separating A from B in G."""
    labels = G.labels
    pos = {v: k for k, v in enumerate(labels)}
    out = set()
    for r in range(len(labels) + 1):
        for C in itertools.combinations(labels, r):
            rest = [v for v in labels if v not in C]
            comp_of = {}
            for k, comp in enumerate(_components(G, set(rest))):
                for v in comp:
                    comp_of[v] = k
            # 0 = unused, 1 = A, 2 = B
            for assign in itertools.product((0, 1, 2), repeat=len(rest)):
                A = {v for v, a in zip(rest, assign) if a == 1}
                B = {v for v, a in zip(rest, assign) if a == 2}
                if not A or not B:
                    continue
                if {comp_of[v] for v in A} & {comp_of[v] for v in B}:
                    continue
                out.add(CIStatement(A, B, C).canonical(labels))

    def key(s: CIStatement):
        idx = lambda S: sorted(pos[v] for v in S)
        return (len(s.C), idx(s.C), idx(s.A), idx(s.B))

    return sorted(out, key=key)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


def _ring_format(R: Ring):
    if R.format is None or not all(isinstance(v, ProbVar) for v in R.variables):
        raise RingMismatchError("expected a probability ring")
    return R.format


def _resolve_model(R: Ring, model, labels) -> tuple[list[CIStatement], list]:
    fmt = _ring_format(R)
    if isinstance(model, PlayerGraph):
        labels = list(labels) if labels is not None else model.labels
        if len(model.labels) != len(fmt):
            raise InvalidInputError("graph and ring have different numbers of players")
        if labels != model.labels:
            model = model.relabel(dict(zip(model.labels, labels)))
        statements = global_markov(model)
    else:
        labels = list(labels) if labels is not None else list(range(1, len(fmt) + 1))
        statements = [as_statement(s) for s in model]
    if len(labels) != len(fmt) or len(set(labels)) != len(labels):
        raise InvalidInputError("need one distinct label per player")
    for s in statements:
        for v in s.A | s.B | s.C:
            if v not in labels:
                raise InvalidInputError(f"label {v!r} is not a player")
    return statements, labels


def _marginal_table(R: Ring, players: Sequence[int]) -> dict[tuple, Polynomial]:
    """q indexed by the strategies of ``players``, summing over everybody else."""
    fmt = R.format
    F = R.field
    table: dict[tuple, dict] = {}
    for j in enumerate_tensor_indices(fmt):
        key = tuple(j[i] for i in players)
        e = [0] * R.nvars
        e[R.index(R.prob_var(j))] = 1
        table.setdefault(key, {})[tuple(e)] = F.one
    return {k: Polynomial(R, t) for k, t in table.items()}


def ci_ideal(R: Ring, model, labels: Sequence | None = None) -> Ideal:
    """Ideal of the 2x2 determinants encoding each CI statement.

    ``model`` is a ``PlayerGraph`` (read through the global Markov property) or
    a list of statements.  For X_A independent of X_B given X_C and each
    outcome c of C, the matrix q[a, b, c] marginalized over the other players
    must have rank one.
    """
    statements, labels = _resolve_model(R, model, labels)
    fmt = R.format
    pos = {v: k for k, v in enumerate(labels)}
    gens: list[Polynomial] = []
    seen = set()
    for s in statements:
        A = sorted(pos[v] for v in s.A)
        B = sorted(pos[v] for v in s.B)
        C = sorted(pos[v] for v in s.C)
        q = _marginal_table(R, A + B + C)
        RA = list(itertools.product(*(range(fmt[i]) for i in A)))
        RB = list(itertools.product(*(range(fmt[i]) for i in B)))
        RC = list(itertools.product(*(range(fmt[i]) for i in C)))
        for c in RC:
            for ia, ja in itertools.combinations(RA, 2):
                for ib, jb in itertools.combinations(RB, 2):
                    g = q[ia + ib + c] * q[ja + jb + c] - q[ia + jb + c] * q[ja + ib + c]
                    if g.is_zero():
                        continue
                    key = frozenset(g.monic().terms.items())
                    if key in seen:
                        continue
                    seen.add(key)
                    gens.append(g)
    return Ideal(R, gens)


def w_forms(R: Ring) -> list[Polynomial]:
    """Coordinates in profile order, then marginals by (player, strategy)."""
    fmt = _ring_format(R)
    forms = [R.prob_var(j) for j in enumerate_tensor_indices(fmt)]
    for i, d in enumerate(fmt):
        for k in range(d):
            forms.append(marginal(R, fmt, i, k))
    return forms


def saturate_by_forms(
    I: Ideal,
    forms: Sequence[Polynomial],
    phase: str | None = None,
    progress: ProgressFn | None = None,
    budget: int | None = None,
    method: str = "rabinowitsch",
) -> Ideal:
    """Saturate by each form in turn; ``progress`` gets one line per form."""
    J = I
    for k, f in enumerate(forms, 1):
        if J.generators:
            J = saturate(J, f, budget=budget, method=method)
        if progress is not None:
            progress(f"Completed step {k} of saturating {phase}")
    return J


def _stderr_line(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def intersect_with_ci_model(
    V: Ideal,
    model,
    labels: Sequence | None = None,
    verbose: bool = False,
    progress: ProgressFn | None = None,
    budget: int | None = None,
    method: str = "rabinowitsch",
) -> Ideal:
    """sat(sat(V, W) + sat(I_C, W), W) with W the coordinate and marginal forms.

    Saturating both summands before adding them keeps the final saturation
    small.  With ``verbose`` and no ``progress`` callback, progress lines go
    to standard error.
    """
    R = V.ring
    I_C = ci_ideal(R, model, labels)
    if progress is None and verbose:
        progress = _stderr_line
    if groebner_basis(V + I_C, budget=budget).is_unit():
        return Ideal(R, [R.one])
    W = w_forms(R)
    sat_ci = saturate_by_forms(I_C, W, "CI ideal", progress, budget, method)
    sat_v = saturate_by_forms(V, W, "input ideal", progress, budget, method)
    total = sat_v + sat_ci
    J = saturate_by_forms(total, W, "sum", progress, budget, method)
    return Ideal(R, groebner_basis(J, budget=budget).polynomials) if J.generators else J


def spohn_ci(
    R: Ring,
    game: Game,
    model,
    labels: Sequence | None = None,
    verbose: bool = False,
    progress: ProgressFn | None = None,
    budget: int | None = None,
    method: str = "rabinowitsch",
) -> Ideal:
    """Ideal of the Spohn CI variety of ``game`` under ``model``."""
    return intersect_with_ci_model(
        spohn_ideal(R, game), model, labels, verbose, progress, budget, method
    )


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------


def _label(token: str, labels: Sequence):
    token = token.strip()
    for v in labels:
        if str(v) == token:
            return v
    raise InvalidInputError(f"unknown player label {token!r}")


def parse_statements(text: str, labels: Sequence) -> list[CIStatement]:
    """``"1|3|2;1,2|4|"`` -> statements; C may be empty."""
    out = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        parts = chunk.split("|")
        if len(parts) not in (2, 3):
            raise InvalidInputError(f"bad statement {chunk!r}; expected A|B|C")
        sets = [
            {_label(t, labels) for t in p.split(",") if t.strip()} for p in parts
        ]
        out.append(as_statement(sets))
    if not out:
        raise InvalidInputError("no statements given")
    return out


def parse_graph(text: str, labels: Sequence) -> PlayerGraph:
    """``"1-2,2-3"`` -> graph on ``labels``."""
    edges = []
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        ends = chunk.split("-")
        if len(ends) != 2:
            raise InvalidInputError(f"bad edge {chunk!r}; expected a-b")
        edges.append([_label(t, labels) for t in ends])
    return PlayerGraph(labels, edges)
