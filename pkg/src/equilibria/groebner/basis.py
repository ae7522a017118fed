"""Groebner bases of ideals in a ``Ring`` and the services built on them."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidInputError, RingMismatchError
from ..polyring import Ideal, MonomialOrder, Polynomial, Ring
from .buchberger import buchberger, reduce_full


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced, sorted by leading monomial."""

    ring: Ring
    polynomials: tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.polynomials)

    def __len__(self):
        return len(self.polynomials)

    def __getitem__(self, k):
        return self.polynomials[k]

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.polynomials]

    def is_unit(self) -> bool:
        return len(self.polynomials) == 1 and self.polynomials[0].is_constant()

    def is_zero(self) -> bool:
        return not self.polynomials

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.polynomials)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def _raw(self) -> list[tuple[tuple, dict]]:
        return [(g.leading_monomial(), g.terms) for g in self.polynomials]

    def __str__(self):
        return "{" + ", ".join(map(str, self.polynomials)) + "}"


def _ring_for(I: Ideal, order) -> Ring:
    R = I.ring
    if order is None:
        return R
    if isinstance(order, str):
        order = MonomialOrder.grevlex(R.nvars) if order == "grevlex" else MonomialOrder.lex(R.nvars)
    return R.with_order(order)


def groebner_basis(I: Ideal, order=None, budget: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` w.r.t. the ring's order (or ``order``)."""
    if not isinstance(I, Ideal):
        raise InvalidInputError("groebner_basis expects an Ideal")
    R = _ring_for(I, order)
    key = R.order.key
    p = R.field.characteristic
    raw = [g.to_ring(R).terms for g in I.generators]
    out = buchberger(raw, key, p, budget)
    return GroebnerBasis(R, tuple(Polynomial(R, g) for g in out))


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring.variables != G.ring.variables or f.ring.field != G.ring.field:
        raise RingMismatchError("polynomial and basis live in different rings")
    R = G.ring
    g = f.to_ring(R)
    rem = reduce_full(g.terms, G._raw(), R.order.key, R.field.characteristic)
    return Polynomial(R, rem).to_ring(f.ring)


def ideal_equals(I: Ideal, J: Ideal, budget: int | None = None) -> bool:
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    return groebner_basis(I, budget=budget).polynomials == groebner_basis(J, budget=budget).polynomials


def ideal_contains(I: Ideal, J: Ideal, budget: int | None = None) -> bool:
    """True iff every generator of ``J`` lies in ``I``."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    G = groebner_basis(I, budget=budget)
    return all(G.contains(g) for g in J.generators)
