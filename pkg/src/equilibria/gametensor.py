"""Payoff tensors and normal-form games.

A tensor of format ``(d_0, ..., d_{n-1})`` stores one payoff per pure strategy
profile.  Storage is sparse: index tuples that were never written read as zero.
All index tuples are enumerated lexicographically with the last coordinate
varying fastest; this is the vectorization used throughout the package.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FieldError, FormatError, InvalidInputError
from .fields import QQ, Field, parse_field

MAX_ENTRIES = 10**6
RANDOM_QQ_RANGE = 100


class Format(tuple):
    """Validated tuple of strategy counts."""

    def __new__(cls, dims: Iterable[int]):
        if isinstance(dims, Format):
            return dims
        try:
            dims = tuple(int(d) for d in dims)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"format must be a sequence of integers, got {dims!r}") from exc
        if not dims:
            raise FormatError("format must have at least one player")
        if any(d < 1 for d in dims):
            raise FormatError(f"invalid format {list(dims)}: every d_i must be >= 1")
        if math.prod(dims) > MAX_ENTRIES:
            raise FormatError(f"format {list(dims)} has more than {MAX_ENTRIES} entries")
        return super().__new__(cls, dims)

    @property
    def players(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return math.prod(self)

    def indices(self) -> list[tuple[int, ...]]:
        return enumerate_tensor_indices(self)

    def __repr__(self):
        return f"Format({list(self)})"


def enumerate_tensor_indices(fmt: Sequence[int]) -> list[tuple[int, ...]]:
    """All index tuples of ``fmt`` in lexicographic order (last index fastest)."""
    fmt = Format(fmt)
    return list(itertools.product(*(range(d) for d in fmt)))


class Tensor:
    """Sparse payoff tensor over ``QQ`` or ``GF(p)``.

    Supports ``T[idx]`` reads and ``T[idx] = value`` writes, mirroring how
    games are assembled entry by entry.
    """

    __slots__ = ("format", "field", "_entries")

    def __init__(self, fmt: Sequence[int], field: Field | str = QQ, entries=None):
        self.format = Format(fmt)
        self.field = parse_field(field)
        self._entries: dict[tuple[int, ...], object] = {}
        if entries:
            for idx, val in dict(entries).items():
                self[idx] = val

    def _check(self, idx) -> tuple[int, ...]:
        if isinstance(idx, int):
            idx = (idx,)
        idx = tuple(int(j) for j in idx)
        if len(idx) != len(self.format) or any(
            not 0 <= j < d for j, d in zip(idx, self.format)
        ):
            raise InvalidInputError(f"index {idx} out of range for format {list(self.format)}")
        return idx

    def __getitem__(self, idx):
        idx = self._check(idx)
        return self._entries.get(idx, self.field.zero)

    def __setitem__(self, idx, value):
        idx = self._check(idx)
        value = self.field.convert(value)
        if value == 0:
            self._entries.pop(idx, None)
        else:
            self._entries[idx] = value

    def items(self) -> Iterator[tuple[tuple[int, ...], object]]:
        """Nonzero entries in index order."""
        for idx in sorted(self._entries):
            yield idx, self._entries[idx]

    def values(self) -> list:
        """Dense entry list in ``enumerate_tensor_indices`` order."""
        return [self[idx] for idx in enumerate_tensor_indices(self.format)]

    def copy(self) -> Tensor:
        t = Tensor(self.format, self.field)
        t._entries = dict(self._entries)
        return t

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.format == other.format
            and self.field == other.field
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.format, self.field, frozenset(self._entries.items())))

    def __repr__(self):
        return f"Tensor(format={list(self.format)}, field={self.field!r}, nonzero={len(self._entries)})"


class Game(tuple):
    """Ordered tuple of ``n`` payoff tensors sharing one format of length ``n``."""

    def __new__(cls, tensors: Iterable[Tensor]):
        tensors = tuple(tensors)
        if not tensors:
            raise InvalidInputError("a game needs at least one payoff tensor")
        fmt, field = tensors[0].format, tensors[0].field
        for t in tensors:
            if not isinstance(t, Tensor):
                raise InvalidInputError("game entries must be Tensor objects")
            if t.format != fmt:
                raise FormatError("all payoff tensors of a game must share one format")
            if t.field != field:
                raise FieldError("all payoff tensors of a game must share one field")
        if len(tensors) != len(fmt):
            raise FormatError(
                f"a game of format {list(fmt)} needs {len(fmt)} tensors, got {len(tensors)}"
            )
        return super().__new__(cls, tensors)

    @property
    def format(self) -> Format:
        return self[0].format

    @property
    def field(self) -> Field:
        return self[0].field

    @property
    def players(self) -> int:
        return len(self)


def zero_tensor(fmt: Sequence[int], field: Field | str = QQ) -> Tensor:
    return Tensor(fmt, field)


def _fill_random(t: Tensor, rng: np.random.Generator) -> Tensor:
    n = t.format.size
    p = t.field.characteristic
    if p:
        vals = rng.integers(0, p, size=n)
    else:
        vals = rng.integers(-RANDOM_QQ_RANGE, RANDOM_QQ_RANGE + 1, size=n)
    for idx, v in zip(enumerate_tensor_indices(t.format), vals.tolist()):
        t[idx] = v
    return t


def random_tensor(fmt: Sequence[int], field: Field | str = QQ, seed: int = 0) -> Tensor:
    """Random tensor determined by ``(fmt, field, seed)``.

    Over GF(p) entries are uniform field elements; over QQ they are integers
    uniform in [-100, 100].
    """
    rng = np.random.default_rng(np.random.SeedSequence(_seed64(seed)))
    return _fill_random(Tensor(fmt, field), rng)


def random_game(fmt: Sequence[int], field: Field | str = QQ, seed: int = 0) -> Game:
    """Random game; each player's tensor uses an independent child stream of ``seed``."""
    fmt = Format(fmt)
    children = np.random.SeedSequence(_seed64(seed)).spawn(len(fmt))
    return Game(
        _fill_random(Tensor(fmt, field), np.random.default_rng(child)) for child in children
    )


def _seed64(seed: int) -> int:
    seed = int(seed)
    if not -(2**63) <= seed < 2**64:
        raise InvalidInputError("seed must fit in 64 bits")
    return seed % 2**64


def validate_profile(fmt: Sequence[int], profile, field: Field = QQ) -> list[list]:
    """Check a mixed profile against ``fmt``: right lengths, each vector sums to 1."""
    fmt = Format(fmt)
    if len(profile) != len(fmt):
        raise InvalidInputError(f"profile has {len(profile)} vectors, format has {len(fmt)} players")
    out = []
    for i, (vec, d) in enumerate(zip(profile, fmt)):
        if len(vec) != d:
            raise InvalidInputError(f"player {i} needs {d} probabilities, got {len(vec)}")
        vec = [field.convert(x) for x in vec]
        if field.convert(sum(vec, field.zero)) != field.one:
            raise InvalidInputError(f"mixed strategy of player {i} does not sum to 1")
        out.append(vec)
    return out


def expected_payoff(game: Game, i: int, profile) -> object:
    """Expected payoff of player ``i`` under independent mixed strategies."""
    if not 0 <= i < game.players:
        raise InvalidInputError(f"player index {i} out of range")
    field = game.field
    profile = validate_profile(game.format, profile, field)
    total = field.zero
    for idx, x in game[i].items():
        w = x
        for k, j in enumerate(idx):
            w = w * profile[k][j]
        total = total + w
    return field.convert(total)
