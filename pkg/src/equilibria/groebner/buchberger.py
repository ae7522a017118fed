"""Buchberger's algorithm on raw term dictionaries.

Polynomials inside the engine are ``{exponent tuple: coefficient}`` dicts with
coefficients in ``QQ`` (``Fraction``) or ``GF(p)`` (``int``).  ``p == 0`` marks
the rational case.  The monomial order is passed as a key function returning
integers (larger key = larger monomial).

Pairs are chosen by sugar degree, ties broken by the normal strategy (smallest
lcm).  Useless pairs are discarded with the Gebauer-Moeller installation of
both Buchberger criteria.  Every division step is charged against a budget so
that runaway computations fail loudly instead of hanging.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Callable

from ..errors import BudgetExceededError

DEFAULT_BUDGET = 10**6


def _env_budget() -> int:
    raw = os.environ.get("GT_GB_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


_budget = _env_budget()


def set_default_budget(steps: int | None) -> None:
    """Set the default step budget; ``None`` restores the environment default."""
    global _budget
    _budget = _env_budget() if steps is None else int(steps)


def get_default_budget() -> int:
    return _budget


class StepCounter:
    __slots__ = ("steps", "budget")

    def __init__(self, budget: int | None = None):
        self.steps = 0
        self.budget = _budget if budget is None else budget

    def tick(self, n: int = 1) -> None:
        self.steps += n
        if self.steps > self.budget:
            raise BudgetExceededError(
                f"Groebner basis budget of {self.budget} reduction steps exceeded"
            )


def divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def disjoint(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def lead(f: dict, key: Callable) -> tuple:
    return max(f, key=key)


def make_monic(f: dict, key: Callable, p: int) -> tuple[tuple, dict]:
    lm = max(f, key=key)
    lc = f[lm]
    if p:
        inv = pow(lc, -1, p)
        return lm, {m: c * inv % p for m, c in f.items()}
    return lm, {m: c / lc for m, c in f.items()}


def reduce_full(
    f: dict,
    basis: list[tuple[tuple, dict]],
    key: Callable,
    p: int,
    counter: StepCounter | None = None,
) -> dict:
    """Remainder of ``f`` on division by the monic polynomials ``basis``."""
    if not f or not basis:
        return dict(f)
    f = dict(f)
    heap = [(-key(m), m) for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    push = heapq.heappush
    pop = heapq.heappop
    steps = 0
    while heap:
        _, m = pop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        for lm, g in basis:
            if divides(lm, m):
                q = mono_div(m, lm)
                steps += 1
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    nm = mono_mul(gm, q)
                    v = f.get(nm)
                    if v is None:
                        v = -c * gc
                        if p:
                            v %= p
                        f[nm] = v
                        push(heap, (-key(nm), nm))
                    else:
                        v = v - c * gc
                        if p:
                            v %= p
                        if v:
                            f[nm] = v
                        else:
                            del f[nm]
                break
        else:
            rem[m] = c
    if counter is not None:
        counter.tick(steps)
    return rem


def spoly(lf: tuple, f: dict, lg: tuple, g: dict, p: int) -> dict:
    """S-polynomial of two monic polynomials."""
    L = mono_lcm(lf, lg)
    a = mono_div(L, lf)
    b = mono_div(L, lg)
    out: dict = {}
    for m, c in f.items():
        if m != lf:
            out[mono_mul(m, a)] = c
    for m, c in g.items():
        if m == lg:
            continue
        nm = mono_mul(m, b)
        v = out.get(nm, 0) - c
        if p:
            v %= p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


@dataclass
class _Elem:
    lm: tuple
    poly: dict
    sugar: int


def buchberger(
    polys: list[dict], key: Callable, p: int, budget: int | None = None
) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by increasing leading monomial)."""
    counter = StepCounter(budget)
    polys = [f for f in polys if f]
    if not polys:
        return []
    elems: list[_Elem] = []
    active: list[int] = []
    live: dict[tuple[int, int], tuple] = {}
    heap: list = []

    def basis() -> list[tuple[tuple, dict]]:
        return [(elems[i].lm, elems[i].poly) for i in active]

    def install(h: dict, sugar: int) -> bool:
        """Add ``h`` to the basis; returns True if it is a unit."""
        nonlocal active
        lm, h = make_monic(h, key, p)
        idx = len(elems)
        elems.append(_Elem(lm, h, sugar))
        if not any(lm):
            active = [idx]
            live.clear()
            return True
        # Gebauer-Moeller update
        cands = [(g, mono_lcm(elems[g].lm, lm)) for g in active]
        kept = []
        for k, (g1, l1) in enumerate(cands):
            if disjoint(elems[g1].lm, lm):
                kept.append((g1, l1))
                continue
            redundant = any(
                divides(l2, l1) for g2, l2 in cands[k + 1:]
            ) or any(divides(l2, l1) for _, l2 in kept)
            if not redundant:
                kept.append((g1, l1))
        new_pairs = [(g1, l1) for g1, l1 in kept if not disjoint(elems[g1].lm, lm)]
        for (a, b), L in list(live.items()):
            if divides(lm, L):
                la = mono_lcm(elems[a].lm, lm)
                lb = mono_lcm(elems[b].lm, lm)
                if la != L and lb != L:
                    del live[(a, b)]
        for g1, L in new_pairs:
            e1 = elems[g1]
            s = max(e1.sugar + sum(L) - sum(e1.lm), sugar + sum(L) - sum(lm))
            live[(g1, idx)] = L
            heapq.heappush(heap, (s, key(L), g1, idx))
        active = [g for g in active if not divides(lm, elems[g].lm)] + [idx]
        return False

    for f in sorted(polys, key=lambda f: key(lead(f, key))):
        h = reduce_full(f, basis(), key, p, counter)
        if h:
            if install(h, max(sum(m) for m in f)):
                return [elems[active[0]].poly]

    while heap:
        s, _, a, b = heapq.heappop(heap)
        if live.pop((a, b), None) is None:
            continue
        ea, eb = elems[a], elems[b]
        sp = spoly(ea.lm, ea.poly, eb.lm, eb.poly, p)
        counter.tick()
        h = reduce_full(sp, basis(), key, p, counter)
        if h:
            if install(h, s):
                return [elems[active[0]].poly]

    # interreduce the (already minimal) active set
    final = [(elems[i].lm, elems[i].poly) for i in active]
    out = []
    for k, (lm, g) in enumerate(final):
        others = final[:k] + final[k + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = reduce_full(tail, others, key, p, counter)
        tail[lm] = 1 if p else g[lm]
        out.append((lm, tail))
    out.sort(key=lambda t: key(t[0]))
    return [g for _, g in out]
