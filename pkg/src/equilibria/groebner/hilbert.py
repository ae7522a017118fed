"""Krull dimension and degree from the initial monomial ideal."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from ..errors import InvalidInputError
from ..polyring import Ideal
from .basis import GroebnerBasis, groebner_basis
from .buchberger import divides

MAX_SUBSET_VARS = 24


@dataclass(frozen=True)
class DimDegree:
    """Affine Krull dimension of R/I and its degree (``None`` when undefined)."""

    dim: int
    degree: Optional[int]

    def __iter__(self):
        return iter((self.dim, self.degree))

    def codim(self, nvars: int) -> int:
        return nvars - self.dim


def minimalize(gens: Iterable[tuple]) -> list[tuple]:
    """Minimal generators of a monomial ideal."""
    out: list[tuple] = []
    for m in sorted(set(gens), key=sum):
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


def independent_dimension(monos: list[tuple], n: int) -> int:
    """Largest set of variables no generator is supported on (-1 for the unit ideal)."""
    monos = minimalize(monos)
    if any(not any(m) for m in monos):
        return -1
    if n > MAX_SUBSET_VARS:
        raise InvalidInputError(f"dimension search limited to {MAX_SUBSET_VARS} variables")
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in monos]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            S = frozenset(S)
            if not any(sup <= S for sup in supports):
                return size
    return 0


def hilbert_numerator(monos: list[tuple], n: int) -> list[int]:
    """Numerator K(t) of the Hilbert series K(t)/(1-t)^n of k[x]/(monos).

    Pivot recursion: K(I) = K(I + (x)) + t * K(I : x) for a variable x that
    occurs in a generator which is not a pure power.
    """
    gens = minimalize(monos)
    nontrivial = [m for m in gens if sum(1 for x in m if x) > 1]
    if not nontrivial:
        poly = [1]
        for m in gens:
            a = sum(m)
            poly = _poly_sub(poly, _shift(poly, a))
        return poly
    counts = [0] * n
    for m in nontrivial:
        for i, x in enumerate(m):
            if x:
                counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    xv = tuple(1 if i == v else 0 for i in range(n))
    left = gens + [xv]
    right = [tuple(max(x - 1, 0) if i == v else x for i, x in enumerate(m)) for m in gens]
    return _poly_add(hilbert_numerator(left, n), _shift(hilbert_numerator(right, n), 1))


def _shift(p: list[int], k: int) -> list[int]:
    return [0] * k + p


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    return _poly_add(a, [-x for x in b])


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _divide_one_minus_t(p: list[int]) -> list[int]:
    # synthetic division by (1 - t); caller guarantees p(1) == 0
    q = []
    acc = 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    return _trim(q or [0])


def series_dim_degree(monos: list[tuple], n: int) -> tuple[int, int]:
    """(dim, degree) read off the reduced Hilbert series of a monomial ideal."""
    K = hilbert_numerator(monos, n)
    if K == [0]:
        return -1, 0
    codim = 0
    while sum(K) == 0:
        K = _divide_one_minus_t(K)
        codim += 1
    return n - codim, sum(K)


def count_standard_monomials(monos: list[tuple], n: int, limit: int = 10**6) -> int:
    """Number of monomials outside a zero-dimensional monomial ideal."""
    gens = minimalize(monos)
    seen = set()
    frontier = [(0,) * n]
    while frontier:
        m = frontier.pop()
        if m in seen or any(divides(g, m) for g in gens):
            continue
        seen.add(m)
        if len(seen) > limit:
            raise InvalidInputError("too many standard monomials")
        for i in range(n):
            frontier.append(m[:i] + (m[i] + 1,) + m[i + 1:])
    return len(seen)


def dimension_and_degree(I, budget: int | None = None) -> DimDegree:
    """Krull dimension of R/I, with degree for homogeneous or zero-dimensional I."""
    G = I if isinstance(I, GroebnerBasis) else groebner_basis(I, budget=budget)
    n = G.ring.nvars
    if G.is_unit():
        return DimDegree(-1, None)
    homogeneous = all(g.is_homogeneous() for g in G.polynomials)
    if G.is_zero():
        return DimDegree(n, 1)
    monos = G.leading_monomials
    d = independent_dimension(monos, n)
    if d == 0:
        return DimDegree(0, count_standard_monomials(monos, n))
    if homogeneous:
        sd, deg = series_dim_degree(monos, n)
        assert sd == d, "Hilbert series and independent sets disagree on dimension"
        return DimDegree(d, deg)
    return DimDegree(d, None)


def krull_dimension(I: Ideal, budget: int | None = None) -> int:
    return dimension_and_degree(I, budget).dim


def codimension(I: Ideal, budget: int | None = None) -> int:
    return I.ring.nvars - krull_dimension(I, budget)
