"""Elimination and saturation."""

from __future__ import annotations

from typing import Iterable

from ..errors import InvalidInputError, RingMismatchError
from ..polyring import AuxVar, Ideal, MonomialOrder, Polynomial, Ring
from .basis import groebner_basis


def _aux_name(R: Ring, base: str = "t") -> AuxVar:
    names = {str(v) for v in R.variables}
    name, k = base, 0
    while name in names:
        k += 1
        name = f"{base}{k}"
    return AuxVar(name)


def eliminate(I: Ideal, variables: Iterable, budget: int | None = None) -> Ideal:
    """Generators of I intersected with the subring free of ``variables``.

    The generators returned are the reduced Groebner basis of the elimination
    ideal for the block order (eliminated block first), moved back to ``I.ring``.
    """
    R = I.ring
    elim = sorted({R.index(v) for v in variables})
    if not elim:
        return Ideal(R, groebner_basis(I, budget=budget).polynomials)
    order = MonomialOrder.elimination(elim, R.nvars)
    G = groebner_basis(I, order=order, budget=budget)
    keep = [g for g in G.polynomials if not (g.support() & set(elim))]
    return Ideal(R, [g.to_ring(R) for g in keep])


def saturate(
    I: Ideal, f: Polynomial, budget: int | None = None, method: str = "rabinowitsch"
) -> Ideal:
    """Saturation (I : f^infinity).

    ``method="rabinowitsch"`` adjoins an auxiliary variable t, adds 1 - t*f and
    eliminates t.  ``method="linear"`` handles a homogeneous ideal and a linear
    form f: after a linear change of coordinates that turns f into the smallest
    grevlex variable, the saturation is obtained by dividing every basis
    element by the largest power of that variable.  ``method="auto"`` picks
    ``linear`` when it applies.
    """
    R = I.ring
    if f.ring != R:
        raise RingMismatchError("saturating polynomial lives in a different ring")
    if f.is_zero():
        raise InvalidInputError("cannot saturate by the zero polynomial")
    if not I.generators:
        return Ideal(R, [])
    if f.is_constant():
        return Ideal(R, groebner_basis(I, budget=budget).polynomials)
    if method == "auto":
        linear = f.total_degree() == 1 and f.is_homogeneous() and I.is_homogeneous()
        method = "linear" if linear else "rabinowitsch"
    if method == "rabinowitsch":
        return _saturate_rabinowitsch(I, f, budget)
    if method == "linear":
        return _saturate_linear(I, f, budget)
    raise InvalidInputError(f"unknown saturation method {method!r}")


def _saturate_rabinowitsch(I: Ideal, f: Polynomial, budget) -> Ideal:
    R = I.ring
    t = _aux_name(R)
    S = R.extend([t], order=MonomialOrder.elimination([R.nvars], R.nvars + 1))
    tv = S.var(t)
    gens = [g.to_ring(S) for g in I.generators] + [S.one - tv * f.to_ring(S)]
    G = groebner_basis(Ideal(S, gens), budget=budget)
    keep = [g for g in G.polynomials if g.degree_in(t) <= 0]
    return Ideal(R, groebner_basis(Ideal(R, [g.to_ring(R) for g in keep]), budget=budget).polynomials)


def _saturate_linear(I: Ideal, f: Polynomial, budget) -> Ideal:
    if f.total_degree() != 1 or not f.is_homogeneous():
        raise InvalidInputError("linear saturation needs a homogeneous linear form")
    if not I.is_homogeneous():
        raise InvalidInputError("linear saturation needs a homogeneous ideal")
    R = I.ring
    F = R.field
    n = R.nvars
    # pivot: the last variable occurring in f
    lin = {e.index(1): c for e, c in f.terms.items()}
    piv = max(lin)
    c = lin[piv]
    cinv = F.inv(c)
    # new coordinates: y = f replaces x_piv; x_piv = (y - sum_{i != piv} c_i x_i) / c
    y = _aux_name(R, "y")
    others = [v for i, v in enumerate(R.variables) if i != piv]
    S = Ring(others + [y], F)
    Sy = S.var(y)
    image = Sy.scale(cinv)
    for i, ci in lin.items():
        if i != piv:
            image = image - S.var(R.variables[i]).scale(F.convert(ci * cinv))
    subst_vals = [S.var(v) if i != piv else image for i, v in enumerate(R.variables)]
    gens = [_compose(g, subst_vals, S) for g in I.generators]
    G = groebner_basis(Ideal(S, gens), budget=budget)
    yi = S.nvars - 1
    divided = []
    for g in G.polynomials:
        k = min(e[yi] for e in g.terms)
        if k:
            g = Polynomial(S, {e[:yi] + (e[yi] - k,): cc for e, cc in g.terms.items()})
        divided.append(g)
    # back to the original coordinates: y -> f
    fS = [R.var(v) for v in others] + [f]
    back = [_compose(g, fS, R) for g in divided]
    return Ideal(R, groebner_basis(Ideal(R, back), budget=budget).polynomials)


def _compose(g: Polynomial, images: list[Polynomial], target: Ring) -> Polynomial:
    """Substitute ``images[i]`` for the i-th variable of ``g.ring``."""
    result = target.zero
    powers: dict[tuple[int, int], Polynomial] = {}
    for e, c in g.terms.items():
        term = target.constant(c)
        for i, x in enumerate(e):
            if x:
                pw = powers.get((i, x))
                if pw is None:
                    pw = images[i] ** x
                    powers[(i, x)] = pw
                term = term * pw
        result = result + term
    return result


def quotient(I: Ideal, f: Polynomial, budget: int | None = None) -> Ideal:
    """Ideal quotient (I : f) via the intersection I ∩ (f) = t*I + (1-t)*f."""
    R = I.ring
    if f.is_zero():
        return Ideal(R, [R.one])
    t = _aux_name(R)
    S = R.extend([t], order=MonomialOrder.elimination([R.nvars], R.nvars + 1))
    tv = S.var(t)
    fS = f.to_ring(S)
    gens = [tv * g.to_ring(S) for g in I.generators] + [(S.one - tv) * fS]
    G = groebner_basis(Ideal(S, gens), budget=budget)
    inter = [g.to_ring(R) for g in G.polynomials if g.degree_in(t) <= 0]
    # each element of I ∩ (f) is divisible by f
    out = []
    for h in inter:
        q, r = _divide_exact(h, f)
        if not r.is_zero():
            raise AssertionError("intersection element not divisible by f")
        out.append(q)
    return Ideal(R, groebner_basis(Ideal(R, out), budget=budget).polynomials)


def _divide_exact(h: Polynomial, f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division of ``h`` by the single polynomial ``f``."""
    R = h.ring
    F = R.field
    key = R.order.key
    lf = f.leading_monomial()
    lc = f.terms[lf]
    q: dict = {}
    r = dict(h.terms)
    rem: dict = {}
    p = F.characteristic
    while r:
        m = max(r, key=key)
        c = r[m]
        if all(x <= y for x, y in zip(lf, m)):
            mq = tuple(y - x for x, y in zip(lf, m))
            cq = F.convert(c * F.inv(lc))
            q[mq] = cq
            for fm, fc in f.terms.items():
                nm = tuple(a + b for a, b in zip(fm, mq))
                v = r.get(nm, F.zero) - cq * fc
                v = v % p if p else v
                if v:
                    r[nm] = v
                else:
                    r.pop(nm, None)
        else:
            rem[m] = r.pop(m)
    return Polynomial(R, q), Polynomial(R, rem)
