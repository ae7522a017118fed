"""JSON game files.

Layout::

    {"format": [2, 2], "field": "QQ",
     "tensors": [{"0,0": "3", "1,1": "2"}, {"0,0": "2", "1,1": "3"}]}

Omitted keys are zero.  Values are integer or ``a/b`` strings.  A value that
mentions the parameter (``"1+e"``) makes the file a parametric game.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import FormatError, InvalidInputError
from .fields import Field, parse_field
from .gametensor import Format, Game, Tensor
from .nash import ParametricGame

_NUMBER = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def _parse_key(key: str, fmt: Format) -> tuple[int, ...]:
    try:
        idx = tuple(int(x) for x in str(key).split(","))
    except ValueError as exc:
        raise FormatError(f"bad tensor key {key!r}") from exc
    if len(idx) != len(fmt) or any(not 0 <= j < d for j, d in zip(idx, fmt)):
        raise FormatError(f"tensor key {key!r} does not fit format {list(fmt)}")
    return idx


def game_from_dict(data: dict, param: str = "e") -> Game | ParametricGame:
    if not isinstance(data, dict):
        raise InvalidInputError("game file must hold a JSON object")
    for k in ("format", "tensors"):
        if k not in data:
            raise InvalidInputError(f"game file lacks the {k!r} field")
    fmt = Format(data["format"])
    field = parse_field(data.get("field", "QQ"))
    tables = data["tensors"]
    if not isinstance(tables, list) or len(tables) != len(fmt):
        raise InvalidInputError(f"need {len(fmt)} tensors for format {list(fmt)}")
    entries = []
    parametric = False
    for table in tables:
        if not isinstance(table, dict):
            raise InvalidInputError("each tensor is an object mapping keys to values")
        row = {}
        for key, val in table.items():
            idx = _parse_key(key, fmt)
            if isinstance(val, int) and not isinstance(val, bool):
                val = str(val)
            if not isinstance(val, str):
                raise InvalidInputError(f"entry {key!r} must be a string, got {val!r}")
            if not _NUMBER.match(val):
                parametric = True
            row[idx] = val
        entries.append(row)
    if parametric:
        return ParametricGame.from_entries(fmt, entries, field, param)
    tensors = []
    for row in entries:
        t = Tensor(fmt, field)
        for idx, val in row.items():
            t[idx] = field.parse(val.replace(" ", ""))
        tensors.append(t)
    return Game(tensors)


def load_game(path, param: str = "e") -> Game | ParametricGame:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read game file {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc
    return game_from_dict(data, param)


def field_tag(field: Field) -> str:
    return repr(field)


def element_str(field: Field, x) -> str:
    """File representation: ``a/b`` over QQ, the residue in [0, p) over GF(p)."""
    if field.characteristic:
        return str(int(x))
    return str(Fraction(x))


def game_to_dict(game: Game) -> dict:
    F = game.field
    return {
        "format": list(game.format),
        "field": field_tag(F),
        "tensors": [{",".join(map(str, idx)): element_str(F, x) for idx, x in t.items()} for t in game],
    }


def dump_game(game: Game) -> str:
    return json.dumps(game_to_dict(game), indent=2) + "\n"


def save_game(game: Game, path) -> None:
    Path(path).write_text(dump_game(game), encoding="utf-8")
