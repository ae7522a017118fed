"""Coefficient fields: the rationals and prime fields GF(p).

Rational elements are ``fractions.Fraction``; elements of GF(p) are plain
``int`` values in ``range(p)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldError

_PRIME_LIMIT = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface for the two supported coefficient fields."""

    characteristic: int = 0

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        raise NotImplementedError

    def parse(self, s: str):
        s = s.strip()
        try:
            return self.convert(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse {s!r} as a field element") from exc

    def inv(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def to_fraction(self, x) -> Fraction:
        """Signed rational representative of ``x`` (symmetric for GF(p))."""
        raise NotImplementedError

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)


class RationalField(Field):
    characteristic = 0

    def convert(self, x):
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot convert {x!r} to a rational number")

    def inv(self, x):
        return 1 / Fraction(x)

    def format(self, x) -> str:
        return str(Fraction(x))

    def to_fraction(self, x) -> Fraction:
        return Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int):
        if not (2 <= p < _PRIME_LIMIT) or not _is_prime(p):
            raise FieldError(f"characteristic must be a prime below 2^31, got {p}")
        self.characteristic = p

    def convert(self, x):
        p = self.characteristic
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot convert {x!r} to GF({p})")

    def inv(self, x):
        if x % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.characteristic)

    def symmetric(self, x: int) -> int:
        p = self.characteristic
        return x - p if x > p // 2 else x

    def format(self, x) -> str:
        return str(self.symmetric(x))

    def to_fraction(self, x) -> Fraction:
        return Fraction(self.symmetric(x))

    def __repr__(self):
        return f"ZZ/{self.characteristic}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


_FIELD_RE = re.compile(r"^\s*(?:ZZ|GF)\s*/?\s*\(?\s*(\d+)\s*\)?\s*$")


def parse_field(tag) -> Field:
    """Field from a tag such as ``"QQ"``, ``"ZZ/32003"`` or ``"GF(7)"``."""
    if isinstance(tag, Field):
        return tag
    if tag is None:
        return QQ
    text = str(tag).strip()
    if text.upper() in ("QQ", "Q"):
        return QQ
    m = _FIELD_RE.match(text.upper())
    if m:
        return PrimeField(int(m.group(1)))
    if text.upper() in ("RR", "CC", "R", "C"):
        raise FieldError(
            f"unsupported coefficient field {text!r}: only exact fields QQ and ZZ/p are available"
        )
    raise FieldError(f"unknown coefficient field {text!r}")
