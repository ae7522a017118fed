"""Exact real-root counting and isolation for univariate rational polynomials.

Dense coefficient lists are stored lowest degree first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..errors import CannotCertifyError, InvalidInputError
from ..polyring import Polynomial

MAX_BISECTIONS = 128

Dense = list


def to_dense(f) -> Dense:
    """Coefficients of a univariate polynomial (a ``Polynomial`` or a sequence)."""
    if isinstance(f, Polynomial):
        if f.ring.field.characteristic:
            raise InvalidInputError("Sturm sequences need rational coefficients")
        support = f.support()
        if len(support) > 1:
            raise InvalidInputError(f"{f} is not univariate")
        i = support.pop() if support else 0
        deg = max((e[i] for e in f.terms), default=0)
        out = [Fraction(0)] * (deg + 1)
        for e, c in f.terms.items():
            out[e[i]] = Fraction(c)
        return trim(out)
    return trim([Fraction(c) for c in f])


def trim(f: Dense) -> Dense:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Dense) -> int:
    return len(f) - 1


def evaluate(f: Dense, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: Dense) -> Dense:
    return trim([k * c for k, c in enumerate(f)][1:])


def divmod_dense(f: Dense, g: Dense) -> tuple[Dense, Dense]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    lg = g[-1]
    while len(f) >= len(g) and f:
        k = len(f) - len(g)
        c = f[-1] / lg
        q[k] = c
        for i, gc in enumerate(g):
            f[i + k] -= c * gc
        f = trim(f)
    return trim(q), f


def monic(f: Dense) -> Dense:
    return [c / f[-1] for c in f] if f else f


def gcd(f: Dense, g: Dense) -> Dense:
    f, g = trim(f), trim(g)
    while g:
        f, g = g, divmod_dense(f, g)[1]
    return monic(f)


def squarefree_part(f: Dense) -> Dense:
    f = trim(f)
    if degree(f) < 1:
        return monic(f)
    return monic(divmod_dense(f, gcd(f, derivative(f)))[0])


def sturm_chain(f: Dense) -> list[Dense]:
    chain = [trim(f), derivative(f)]
    while chain[-1]:
        r = divmod_dense(chain[-2], chain[-1])[1]
        chain.append([-c for c in r])
    return chain[:-1]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_right_of(g: Dense, a) -> int:
    """Sign of g just to the right of a (first nonzero Taylor coefficient)."""
    d = g
    while d:
        s = _sign(evaluate(d, a))
        if s:
            return s
        d = derivative(d)
    return 0


def _sign_left_of(g: Dense, b) -> int:
    d, k = g, 0
    while d:
        s = _sign(evaluate(d, b))
        if s:
            return s if k % 2 == 0 else -s
        d = derivative(d)
        k += 1
    return 0


def _sign_at_infinity(g: Dense, positive: bool) -> int:
    if not g:
        return 0
    s = _sign(g[-1])
    return s if positive or degree(g) % 2 == 0 else -s


def _variations(signs: Sequence[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def _check_endpoint(x):
    if x is None or _is_inf(x):
        return x
    if isinstance(x, float):
        raise InvalidInputError("finite interval endpoints must be exact (int or Fraction)")
    return Fraction(x)


def count_roots(chain: list[Dense], a, b) -> int:
    """Distinct real roots of chain[0] in the open interval (a, b)."""
    if a is None or (_is_inf(a) and a < 0):
        va = _variations([_sign_at_infinity(g, False) for g in chain])
    else:
        va = _variations([_sign_right_of(g, a) for g in chain])
    if b is None or (_is_inf(b) and b > 0):
        vb = _variations([_sign_at_infinity(g, True) for g in chain])
    else:
        vb = _variations([_sign_left_of(g, b) for g in chain])
    return va - vb


def sturm_count(f, interval=(None, None)) -> int:
    """Number of distinct real roots of ``f`` in the open interval.

    Endpoints are ints, Fractions, ``None`` or ``±math.inf``.
    """
    dense = to_dense(f)
    if not dense:
        raise InvalidInputError("sturm_count of the zero polynomial")
    a, b = (_check_endpoint(x) for x in interval)
    if a is not None and b is not None and not _is_inf(a) and not _is_inf(b) and a >= b:
        return 0
    chain = sturm_chain(squarefree_part(dense))
    return count_roots(chain, a, b)


def root_bound(f: Dense) -> Fraction:
    """Cauchy bound: every real root lies in (-M, M)."""
    lc = f[-1]
    return 1 + max((abs(c / lc) for c in f[:-1]), default=Fraction(0))


def isolate_real_roots(f) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals, one per distinct real root, in increasing order.

    An interval ``(a, b)`` with ``a < b`` holds exactly one root in its
    open interior; ``(r, r)`` marks an exact
    rational root ``r``.
    """
    dense = squarefree_part(to_dense(f))
    if not dense:
        raise InvalidInputError("cannot isolate the roots of the zero polynomial")
    if degree(dense) < 1:
        return []
    if degree(dense) == 1:
        r = -dense[0] / dense[1]
        return [(r, r)]
    chain = sturm_chain(dense)
    M = root_bound(dense)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-M, M)]
    while stack:
        a, b = stack.pop()
        k = count_roots(chain, a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if evaluate(dense, m) == 0:
            out.append((m, m))
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    return out


def refine(f_sf: Dense, chain: list[Dense], interval) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval of a square-free polynomial once."""
    a, b = interval
    if a == b:
        return interval
    m = (a + b) / 2
    if evaluate(f_sf, m) == 0:
        return (m, m)
    if count_roots(chain, a, m) == 1:
        return (a, m)
    return (m, b)


def sign_at_root(q: Dense, f_sf: Dense, interval, max_bisections: int = MAX_BISECTIONS) -> int:
    """Sign of ``q`` at the unique root of square-free ``f_sf`` in ``interval``."""
    q = trim(q)
    a, b = interval
    if not q:
        return 0
    if a == b:
        return _sign(evaluate(q, a))
    g = gcd(q, f_sf)
    if degree(g) >= 1 and count_roots(sturm_chain(g), a, b) > 0:
        return 0
    chain = sturm_chain(f_sf)
    q_chain = sturm_chain(squarefree_part(q)) if degree(q) >= 1 else None
    for _ in range(max_bisections + 1):
        if a == b:
            return _sign(evaluate(q, a))
        if q_chain is None or count_roots(q_chain, a, b) == 0:
            return _sign(evaluate(q, (a + b) / 2))
        a, b = refine(f_sf, chain, (a, b))
    raise CannotCertifyError(f"could not separate root from sign changes in {max_bisections} bisections")
