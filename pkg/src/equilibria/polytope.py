"""Exact rational polytopes: H/V conversion by the double description method.

Both conversions run the same cone algorithm.  Vertices of an H-polytope are
the extreme rays of its homogenization ``{(x, t) : a.x <= b t, t >= 0}``;
facets of a V-polytope are the extreme rays of the cone of valid inequalities
``{(a, b) : a.v <= b for every v}``, whose lineality space holds the affine
hull equations.  All arithmetic is on integers or ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError, UnboundedPolyhedronError

Vector = tuple


# ---------------------------------------------------------------------------
# small exact linear algebra
# ---------------------------------------------------------------------------


def _frac_vec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def _integral(v: Sequence) -> list[int]:
    """Positive multiple of a rational vector with coprime integer entries."""
    den = 1
    for x in v:
        den = math.lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    return _primitive(ints)


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g > 1:
        return [x // g for x in v]
    return list(v)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def _rref(rows: Sequence[Sequence], col_order: Sequence[int]) -> list[tuple[int, list[Fraction]]]:
    """Reduced row echelon form, pivoting through columns in ``col_order``."""
    m = [list(map(Fraction, r)) for r in rows]
    out: list[tuple[int, list[Fraction]]] = []
    for c in col_order:
        piv = next((i for i in range(len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        row = m.pop(piv)
        row = [x / row[c] for x in row]
        m = [[a - r[c] * b for a, b in zip(r, row)] if r[c] else r for r in m]
        out = [(pc, [a - pr[c] * b for a, b in zip(pr, row)] if pr[c] else pr) for pc, pr in out]
        out.append((c, row))
    return out


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------


def double_description(
    inequalities: Sequence[Sequence[int]], equations: Sequence[Sequence[int]], dim: int
) -> tuple[list[list[int]], list[list[int]]]:
    """Lineality basis and extreme rays of ``{y : h.y <= 0 (ineq), h.y = 0 (eq)}``.

    Constraints are inserted one at a time (equations first).  Rays carry the
    set of constraints they make tight; a pair of rays on opposite sides of a
    new hyperplane is combined only if no third ray is tight on every
    constraint the pair shares (combinatorial adjacency test).
    """
    cons = [(_integral(h), True) for h in equations] + [(_integral(h), False) for h in inequalities]
    lin: list[list[int]] = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    rays: list[tuple[list[int], frozenset]] = []
    for idx, (h, is_eq) in enumerate(cons):
        if not any(h):
            continue
        vals = [_dot(h, l) for l in lin]
        k0 = next((k for k, v in enumerate(vals) if v), None)
        if k0 is not None:
            l0, a0 = lin[k0], vals[k0]
            new_lin = []
            for k, l in enumerate(lin):
                if k == k0:
                    continue
                v = vals[k]
                if v:
                    l = _primitive([a0 * x - v * y for x, y in zip(l, l0)])
                new_lin.append(l)
            sgn = 1 if a0 > 0 else -1
            new_rays = []
            for r, Z in rays:
                v = _dot(h, r)
                if v:
                    r = _primitive([abs(a0) * x - sgn * v * y for x, y in zip(r, l0)])
                new_rays.append((r, Z | {idx}))
            if not is_eq:
                d0 = l0 if a0 < 0 else [-x for x in l0]
                new_rays.append((_primitive(list(d0)), frozenset(range(idx))))
            lin, rays = new_lin, new_rays
            continue
        pos, neg, zero = [], [], []
        for r, Z in rays:
            v = _dot(h, r)
            (pos if v > 0 else neg if v < 0 else zero).append((r, Z, v))
        new_rays = [(r, Z | {idx}) for r, Z, _ in zero]
        if not is_eq:
            new_rays += [(r, Z) for r, Z, _ in neg]
        for rp, Zp, vp in pos:
            for rn, Zn, vn in neg:
                Z = Zp & Zn
                if any(Z <= Zo for ro, Zo in rays if ro is not rp and ro is not rn):
                    continue
                combo = _primitive([vp * x - vn * y for x, y in zip(rn, rp)])
                new_rays.append((combo, Z | {idx}))
        rays = new_rays
    return lin, [r for r, _ in rays]


# ---------------------------------------------------------------------------
# polytopes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HPolytope:
    """``{x : a.x <= b for (a, b) in inequalities, c.x = g for (c, g) in equations}``."""

    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    equations: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    ambient: int

    @classmethod
    def from_rows(cls, inequalities=(), equations=(), ambient: int | None = None) -> HPolytope:
        ineqs = tuple((_frac_vec(a), Fraction(b)) for a, b in inequalities)
        eqs = tuple((_frac_vec(c), Fraction(g)) for c, g in equations)
        widths = {len(a) for a, _ in ineqs + eqs}
        if ambient is None:
            if len(widths) != 1:
                raise InvalidInputError("cannot infer ambient dimension")
            ambient = widths.pop()
        if widths - {ambient}:
            raise InvalidInputError("constraint rows must have the ambient width")
        return cls(ineqs, eqs, ambient)

    def contains(self, x: Sequence) -> bool:
        x = _frac_vec(x)
        if len(x) != self.ambient:
            raise InvalidInputError("point has the wrong dimension")
        return all(_dot(a, x) <= b for a, b in self.inequalities) and all(
            _dot(c, x) == g for c, g in self.equations
        )


class VPolytope:
    """Convex hull of finitely many rational points."""

    def __init__(self, points: Iterable[Sequence], ambient: int | None = None):
        pts = sorted({_frac_vec(p) for p in points})
        widths = {len(p) for p in pts}
        if len(widths) > 1:
            raise InvalidInputError("points must share one dimension")
        if ambient is None:
            if not widths:
                raise InvalidInputError("empty V-polytope needs an ambient dimension")
            ambient = widths.pop()
        elif widths and widths != {ambient}:
            raise InvalidInputError("points have the wrong dimension")
        self.points: tuple[tuple[Fraction, ...], ...] = tuple(pts)
        self.ambient = ambient
        self._facets: FacetDescription | None = None
        self._vertices: tuple | None = None

    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Irredundant vertex list in lexicographic order."""
        if self._vertices is None:
            if len(self.points) <= 1:
                self._vertices = self.points
            else:
                fd = facet_enumeration(self)
                tight = [
                    frozenset(k for k, p in enumerate(self.points) if _dot(a, p) == b)
                    for a, b in fd.facets
                ]
                verts = []
                for k, p in enumerate(self.points):
                    common = frozenset(range(len(self.points)))
                    for T in tight:
                        if k in T:
                            common &= T
                    if common == {k}:
                        verts.append(p)
                self._vertices = tuple(verts)
        return self._vertices

    def is_empty(self) -> bool:
        return not self.points

    def __eq__(self, other):
        return isinstance(other, VPolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"VPolytope({len(self.points)} points in R^{self.ambient})"


@dataclass(frozen=True)
class FacetDescription:
    """Irredundant facets ``a.x <= b`` and affine hull equations ``c.x = g``."""

    facets: tuple[tuple[tuple[int, ...], int], ...]
    hull: tuple[tuple[tuple[int, ...], int], ...]

    def as_hpolytope(self, ambient: int) -> HPolytope:
        return HPolytope.from_rows(self.facets, self.hull, ambient)


def vertex_enumeration(H: HPolytope) -> VPolytope:
    """Vertices of a bounded H-polytope; raises for unbounded nonempty input."""
    m = H.ambient
    eqs = [list(c) + [-g] for c, g in H.equations]
    ineqs = [[0] * m + [-1]] + [list(a) + [-b] for a, b in H.inequalities]
    lin, rays = double_description(ineqs, eqs, m + 1)
    verts = [r for r in rays if r[m] > 0]
    if not verts:
        return VPolytope([], ambient=m)
    if lin or any(r[m] == 0 for r in rays):
        raise UnboundedPolyhedronError("polyhedron is unbounded")
    return VPolytope([[Fraction(x, r[m]) for x in r[:m]] for r in verts], ambient=m)


def _as_vpolytope(P) -> VPolytope:
    if isinstance(P, VPolytope):
        return P
    if isinstance(P, HPolytope):
        return vertex_enumeration(P)
    raise InvalidInputError("expected an HPolytope or VPolytope")


def facet_enumeration(P) -> FacetDescription:
    """Facets (primitive integer rows, reduced modulo the hull) and hull equations."""
    V = _as_vpolytope(P)
    if isinstance(P, VPolytope) and P._facets is not None:
        return P._facets
    if V.is_empty():
        raise InvalidInputError("the empty polytope has no facet description")
    m = V.ambient
    pts = V.points
    ineqs = [list(p) + [-1] for p in pts]
    lin, rays = double_description(ineqs, [], m + 1)
    # canonical coset representatives: eliminate beta first, then coordinates
    red = _rref(lin, [m] + list(range(m)))
    hull = []
    for _, row in red:
        r = _integral(row)
        hull.append((tuple(r[:m]), r[m]))
    facets = set()
    for r in rays:
        if not any(_dot(r[:m], p) == r[m] for p in pts):
            continue
        v = [Fraction(x) for x in r]
        for c, row in red:
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        v = _integral(v)
        facets.add((tuple(v[:m]), v[m]))
    fd = FacetDescription(tuple(sorted(facets)), tuple(sorted(hull)))
    V._facets = fd
    return fd


def dim(P) -> int:
    """Affine dimension; -1 for the empty polytope."""
    V = _as_vpolytope(P)
    return affine_rank(V.points)


def f_vector(P, max_faces: int = 100000) -> list[int]:
    """Face counts by dimension 0..dim(P), from vertex-facet incidences."""
    V = _as_vpolytope(P)
    if V.is_empty():
        raise InvalidInputError("f-vector of the empty polytope")
    verts = V.vertices
    d = affine_rank(verts)
    if d == 0:
        return [1]
    fd = facet_enumeration(VPolytope(verts))
    facet_sets = {frozenset(k for k, v in enumerate(verts) if _dot(a, v) == b) for a, b in fd.facets}
    faces = set(facet_sets)
    frontier = list(facet_sets)
    while frontier:
        S = frontier.pop()
        for F in facet_sets:
            T = S & F
            if T and T not in faces:
                faces.add(T)
                frontier.append(T)
                if len(faces) > max_faces:
                    raise InvalidInputError("too many faces for the closed-set enumeration")
    counts = [0] * (d + 1)
    for S in faces:
        counts[affine_rank([verts[k] for k in sorted(S)])] += 1
    counts[d] = 1
    return counts


def contains_point(P, x: Sequence) -> bool:
    x = _frac_vec(x)
    if isinstance(P, HPolytope):
        return P.contains(x)
    V = _as_vpolytope(P)
    if len(x) != V.ambient:
        raise InvalidInputError("point has the wrong dimension")
    if V.is_empty():
        return False
    fd = facet_enumeration(V)
    return fd.as_hpolytope(V.ambient).contains(x)
