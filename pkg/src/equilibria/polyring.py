"""Sparse multivariate polynomials over QQ or GF(p).

Polynomials are stored as ``{exponent tuple: coefficient}`` dictionaries.  Each
ring carries a monomial order; the order only affects printing, leading terms
and Groebner computations, never the polynomial value.

Text grammar (used for printing and parsing)::

    -3*p_{0,0}*p_{1,0} - p_{0,0}*p_{1,1} + 2*p_{0,1}*p_{1,1}
    12*p_{2,1}^2 - 12*p_{2,1} + 3
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import FieldError, InvalidInputError, RingMismatchError
from .fields import QQ, Field, parse_field
from .gametensor import Format, enumerate_tensor_indices

MAX_EXPONENT = 2**16 - 1
_KEY_BASE = 1 << 24


# ---------------------------------------------------------------------------
# variable names
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NashVar:
    """Probability that ``player`` plays pure strategy ``strategy``."""

    player: int
    strategy: int
    label: str = "p"

    def __str__(self):
        return f"{self.label}_{{{self.player},{self.strategy}}}"


@dataclass(frozen=True)
class ProbVar:
    """Joint probability of the pure profile ``index``."""

    index: tuple
    label: str = "p"

    def __str__(self):
        return f"{self.label}_{{{','.join(map(str, self.index))}}}"


@dataclass(frozen=True)
class KVar:
    player: int
    label: str = "k"

    def __str__(self):
        return f"{self.label}_{self.player}"


@dataclass(frozen=True)
class AuxVar:
    label: str

    def __str__(self):
        return self.label


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


class MonomialOrder:
    """Block order; each block is ordered by grevlex or lex.

    ``key(e)`` maps an exponent vector to an integer such that larger keys mean
    larger monomials, which keeps comparisons and heap operations cheap.
    """

    def __init__(self, blocks: Sequence[tuple[str, Sequence[int]]], nvars: int):
        seen = sorted(i for _, idx in blocks for i in idx)
        if seen != list(range(nvars)):
            raise InvalidInputError("order blocks must partition the variables")
        for kind, _ in blocks:
            if kind not in ("grevlex", "lex"):
                raise InvalidInputError(f"unknown monomial order {kind!r}")
        self.blocks = tuple((kind, tuple(idx)) for kind, idx in blocks)
        self.nvars = nvars
        self._cache: dict[tuple, int] = {}

    @classmethod
    def grevlex(cls, n: int) -> MonomialOrder:
        return cls([("grevlex", range(n))], n)

    @classmethod
    def lex(cls, n: int) -> MonomialOrder:
        return cls([("lex", range(n))], n)

    @classmethod
    def elimination(cls, elim: Iterable[int], n: int) -> MonomialOrder:
        """Grevlex on ``elim`` first, then grevlex on the remaining variables."""
        elim = sorted(set(elim))
        rest = [i for i in range(n) if i not in elim]
        blocks = [("grevlex", elim)] if elim else []
        if rest:
            blocks.append(("grevlex", rest))
        return cls(blocks, n)

    def key(self, e: tuple) -> int:
        k = self._cache.get(e)
        if k is not None:
            return k
        k = 0
        B = _KEY_BASE
        for kind, idx in self.blocks:
            if kind == "grevlex":
                k = k * B + sum(e[i] for i in idx)
                for i in reversed(idx):
                    k = k * B + (MAX_EXPONENT - e[i])
            else:
                for i in idx:
                    k = k * B + e[i]
        if any(x > MAX_EXPONENT for x in e):
            raise InvalidInputError("exponent exceeds 16 bits")
        self._cache[e] = k
        return k

    @property
    def is_graded(self) -> bool:
        return len(self.blocks) == 1 and self.blocks[0][0] == "grevlex"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        if len(self.blocks) == 1:
            return self.blocks[0][0]
        return "block(" + ", ".join(f"{k}{list(i)}" for k, i in self.blocks) + ")"


def _make_order(order, n: int) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        if order.nvars != n:
            raise InvalidInputError("monomial order has the wrong number of variables")
        return order
    if order in (None, "grevlex"):
        return MonomialOrder.grevlex(n)
    if order == "lex":
        return MonomialOrder.lex(n)
    raise InvalidInputError(f"unknown monomial order {order!r}")


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


class Ring:
    """Polynomial ring with an ordered, duplicate-free list of variables."""

    def __init__(self, variables: Sequence, field: Field | str = QQ, order=None, fmt=None):
        variables = tuple(variables)
        if not variables:
            raise InvalidInputError("a ring needs at least one variable")
        names = [str(v) for v in variables]
        if len(set(names)) != len(names):
            raise InvalidInputError("ring variables must have distinct names")
        self.variables = variables
        self.field = parse_field(field)
        self.order = _make_order(order, len(variables))
        self.format = Format(fmt) if fmt is not None else None
        self._index = {v: i for i, v in enumerate(variables)}
        self._names = {name: i for i, name in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Ring)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(map(str, self.variables))}] ({self.order!r})"

    def index(self, v) -> int:
        """Position of a variable given as a name, VarName object or generator."""
        if isinstance(v, Polynomial):
            if v.ring != self or len(v.terms) != 1:
                raise InvalidInputError(f"{v} is not a generator of this ring")
            (e, c), = v.terms.items()
            if c != self.field.one or sum(e) != 1:
                raise InvalidInputError(f"{v} is not a generator of this ring")
            return e.index(1)
        if v in self._index:
            return self._index[v]
        if isinstance(v, str) and v in self._names:
            return self._names[v]
        raise InvalidInputError(f"{v} is not a variable of this ring")

    def var(self, v) -> Polynomial:
        i = self.index(v)
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {e: self.field.one})

    @property
    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field.convert(c)
        if c == 0:
            return self.zero
        return Polynomial(self, {(0,) * self.nvars: c})

    def from_terms(self, terms: Mapping) -> Polynomial:
        out: dict = {}
        F = self.field
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise InvalidInputError("exponent vector has the wrong length")
            c = F.convert(c)
            out[e] = F.convert(out.get(e, F.zero) + c)
        return Polynomial(self, {e: c for e, c in out.items() if c != 0})

    def __call__(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            return x.to_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def with_order(self, order) -> Ring:
        return Ring(self.variables, self.field, order, self.format)

    def extend(self, new_vars: Sequence, order=None) -> Ring:
        return Ring(self.variables + tuple(new_vars), self.field, order, self.format)

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def prob_var(self, index) -> Polynomial:
        """Generator of a probability ring attached to a pure profile."""
        for v in self.variables:
            if isinstance(v, ProbVar) and v.index == tuple(index):
                return self.var(v)
        raise InvalidInputError(f"no probability variable for index {tuple(index)}")


def probability_ring(fmt: Sequence[int], field: Field | str = QQ, label: str = "p") -> Ring:
    """Ring of joint probabilities p_{j_0,...,j_{n-1}}, one per pure profile."""
    fmt = Format(fmt)
    field = parse_field(field)
    return Ring([ProbVar(idx, label) for idx in enumerate_tensor_indices(fmt)], field, fmt=fmt)


def nash_equilibrium_ring(fmt: Sequence[int], field: Field | str = QQ, label: str = "p") -> Ring:
    """Ring of per-player probabilities p_{i,j}, ordered by (player, strategy)."""
    fmt = Format(fmt)
    field = parse_field(field)
    return Ring(
        [NashVar(i, j, label) for i, d in enumerate(fmt) for j in range(d)], field, fmt=fmt
    )


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


def _add_terms(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        v = sign * c if v is None else v + sign * c
        if p:
            v %= p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul_terms(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            out[e] = v % p if p else v
    return {e: c for e, c in out.items() if c}


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add_terms(self.terms, other.terms, self.ring.field.characteristic))

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.convert(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(
            self.ring, _add_terms(self.terms, other.terms, self.ring.field.characteristic, -1)
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _mul_terms(self.terms, other.terms, self.ring.field.characteristic))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InvalidInputError("exponent must be a nonnegative integer")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        c = self.ring.field.convert(c)
        F = self.ring.field
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {e: F.convert(v * c) for e, v in self.terms.items()})

    # -- comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            try:
                return self.terms == self.ring.constant(other).terms
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or list(self.terms) == [(0,) * self.ring.nvars]

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise InvalidInputError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.order.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, v) -> int:
        i = self.ring.index(v)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def support(self) -> set[int]:
        """Indices of variables occurring in the polynomial."""
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def coefficient(self, monomial: tuple):
        return self.terms.get(tuple(monomial), self.ring.field.zero)

    def to_ring(self, ring: Ring) -> Polynomial:
        """Same polynomial in ``ring``, matching variables by name."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise RingMismatchError("cannot move polynomials between coefficient fields")
        pos = []
        for i, v in enumerate(self.ring.variables):
            if v in ring._index:
                pos.append(ring._index[v])
            else:
                pos.append(None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise RingMismatchError(
                            f"variable {self.ring.variables[i]} is missing from the target ring"
                        )
                    ne[pos[i]] = x
            out[tuple(ne)] = c
        return Polynomial(ring, out)

    def evaluate(self, point: Mapping) -> object:
        return evaluate(self, point)

    def substitute(self, mapping: Mapping) -> Polynomial:
        """Replace variables by polynomials of the same ring."""
        R = self.ring
        images = {}
        for k, v in mapping.items():
            images[R.index(k)] = v if isinstance(v, Polynomial) else R.constant(v)
        result = R.zero
        for e, c in self.terms.items():
            term = R.constant(c)
            rest = list(e)
            for i, x in enumerate(e):
                if x and i in images:
                    term = term * images[i] ** x
                    rest[i] = 0
            term = term * Polynomial(R, {tuple(rest): R.field.one})
            result = result + term
        return result

    # -- printing -------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _format_monomial(e: tuple, variables) -> str:
    parts = []
    for x, v in zip(e, variables):
        if x == 1:
            parts.append(str(v))
        elif x > 1:
            parts.append(f"{v}^{x}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    out = []
    for e, c in f.sorted_terms():
        q = F.to_fraction(c)
        neg = q < 0
        a = -q if neg else q
        mono = _format_monomial(e, f.ring.variables)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def evaluate(f: Polynomial, point: Mapping) -> object:
    """Exact value of ``f`` at ``point`` (keys: names, VarName objects or generators)."""
    R = f.ring
    F = R.field
    values = {}
    for k, v in point.items():
        values[R.index(k)] = F.convert(v)
    total = F.zero
    for e, c in f.terms.items():
        term = c
        for i, x in enumerate(e):
            if x:
                if i not in values:
                    raise InvalidInputError(f"no value assigned to {R.variables[i]}")
                term = term * values[i] ** x
        total = total + term
    return F.convert(total)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9]*(?:_\{[^}]*\}|_[A-Za-z0-9]+)*)"
    r"|(?P<op>[-+*^()]|−))"
)


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise InvalidInputError(f"cannot parse polynomial near {text[pos:]!r}")
            pos = m.end()
            if m.group("num"):
                self.tokens.append(("num", m.group("num")))
            elif m.group("name"):
                self.tokens.append(("name", re.sub(r"\s+", "", m.group("name"))))
            elif m.group("op"):
                op = m.group("op")
                self.tokens.append(("op", "-" if op == "−" else op))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise InvalidInputError("empty polynomial text")
        f = self.expr()
        if self.i != len(self.tokens):
            raise InvalidInputError(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        f = self.term()
        f = -f if sign < 0 else f
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.power()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                f = f * self.power()
            elif kind in ("name", "num") or (kind, val) == ("op", "("):
                f = f * self.power()
            else:
                return f

    def power(self) -> Polynomial:
        f = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise InvalidInputError("exponent must be a nonnegative integer")
            f = f ** int(val)
        return f

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(Fraction(val))
        if kind == "name":
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise InvalidInputError("unbalanced parentheses")
            return f
        raise InvalidInputError(f"unexpected token {val!r}")


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Generator list in a fixed ring.  Zero generators are dropped."""

    def __init__(self, ring: Ring, generators: Iterable = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g) if not isinstance(g, Polynomial) else g
            if g.ring != ring:
                raise RingMismatchError("ideal generators must share the ring")
            if g.terms:
                gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __add__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise RingMismatchError("ideals live in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        from .groebner import ideal_equals

        return ideal_equals(self, other)

    __hash__ = None

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def to_ring(self, ring: Ring) -> Ideal:
        return Ideal(ring, [g.to_ring(ring) for g in self.generators])

    def __str__(self):
        return "ideal(" + ", ".join(map(str, self.generators)) + ")"

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"
