import itertools
import random
from fractions import Fraction

import pytest
import sympy

from equilibria.errors import InvalidInputError, UnboundedPolyhedronError
from equilibria.polytope import (
    HPolytope,
    VPolytope,
    contains_point,
    dim,
    f_vector,
    facet_enumeration,
    vertex_enumeration,
)

from helpers import fr


def simplex_h(m):
    ineqs = [([-1 if j == i else 0 for j in range(m)], 0) for i in range(m)]
    return HPolytope.from_rows(ineqs, [([1] * m, 1)], m)


def cube_points(d):
    return list(itertools.product([0, 1], repeat=d))


def brute_force_vertices(H):
    """Vertices by solving every square subsystem of tight constraints (sympy, exact)."""
    m = H.ambient
    eqs = [(list(c), g) for c, g in H.equations]
    ineqs = [(list(a), b) for a, b in H.inequalities]
    out = set()
    for k in range(0, m + 1):
        for S in itertools.combinations(range(len(ineqs)), k):
            rows = eqs + [ineqs[s] for s in S]
            if not rows:
                continue
            A = sympy.Matrix([[sympy.Rational(x) for x in r] for r, _ in rows])
            b = sympy.Matrix([sympy.Rational(v) for _, v in rows])
            if A.rank() != m:
                continue
            sol, params = A.gauss_jordan_solve(b)
            x = tuple(Fraction(int(v.p), int(v.q)) for v in sol)
            if H.contains(x):
                out.add(x)
    return out


def random_bounded_h(rng, m, k):
    ineqs = []
    for i in range(m):
        e = [0] * m
        e[i] = 1
        ineqs.append((e, rng.randint(2, 6)))
        ineqs.append(([-x for x in e], rng.randint(2, 6)))
    for _ in range(k):
        a = [rng.randint(-3, 3) for _ in range(m)]
        ineqs.append((a, rng.randint(1, 6)))
    return HPolytope.from_rows(ineqs, (), m)


# -- fixtures ----------------------------------------------------------------


def test_simplex_vertices_and_facets():
    H = simplex_h(4)
    V = vertex_enumeration(H)
    assert set(V.vertices) == {fr(r) for r in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]}
    fd = facet_enumeration(V)
    assert set(fd.facets) == {(tuple(-1 if j == i else 0 for j in range(4)), 0) for i in range(4)}
    assert fd.hull == (((1, 1, 1, 1), 1),)
    assert dim(H) == 3
    assert f_vector(V) == [4, 6, 4, 1]


def test_simplex_membership():
    H = simplex_h(4)
    assert contains_point(H, (1, 0, 0, 0))
    assert not contains_point(H, (2, 0, 0, -1))
    V = vertex_enumeration(H)
    assert contains_point(V, (Fraction(1, 4),) * 4)
    assert not contains_point(V, (2, 0, 0, -1))
    with pytest.raises(InvalidInputError):
        contains_point(V, (1, 0))


def test_infeasible_is_empty():
    H = HPolytope.from_rows([([1], -1), ([-1], 0)])
    V = vertex_enumeration(H)
    assert V.is_empty() and V.vertices == ()
    assert dim(H) == -1
    assert not contains_point(V, (0,))
    with pytest.raises(InvalidInputError):
        facet_enumeration(V)


def test_unbounded_detected():
    with pytest.raises(UnboundedPolyhedronError):
        vertex_enumeration(HPolytope.from_rows([([-1, 0], 0), ([0, -1], 0)]))
    with pytest.raises(UnboundedPolyhedronError):
        vertex_enumeration(HPolytope.from_rows([([1, 0], 1), ([-1, 0], 0)]))


def test_point_and_segment():
    P = VPolytope([(1, 2)])
    fd = facet_enumeration(P)
    assert fd.facets == ()
    assert len(fd.hull) == 2
    assert dim(P) == 0 and f_vector(P) == [1]
    S = VPolytope([(0, 0), (1, 1)])
    assert dim(S) == 1 and f_vector(S) == [2, 1]


def test_redundant_points_pruned():
    P = VPolytope(cube_points(2) + [(Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), 0)])
    assert set(P.vertices) == {fr(p) for p in cube_points(2)}
    assert f_vector(P) == [4, 4, 1]


@pytest.mark.parametrize(
    "points,expected",
    [
        (cube_points(3), [8, 12, 6, 1]),
        ([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], [6, 12, 8, 1]),
        (cube_points(4), [16, 32, 24, 8, 1]),
    ],
)
def test_f_vectors(points, expected):
    assert f_vector(VPolytope(points)) == expected


# -- properties --------------------------------------------------------------


def _euler(f):
    return sum((-1) ** i * x for i, x in enumerate(f))


def test_vertex_enumeration_matches_brute_force():
    rng = random.Random(1)
    for trial in range(15):
        m = rng.randint(2, 3)
        H = random_bounded_h(rng, m, rng.randint(1, 4))
        assert set(vertex_enumeration(H).vertices) == brute_force_vertices(H)


def test_round_trip_h_v_h():
    rng = random.Random(2)
    for trial in range(15):
        m = rng.randint(2, 3)
        H = random_bounded_h(rng, m, rng.randint(1, 4))
        V = vertex_enumeration(H)
        H2 = facet_enumeration(V).as_hpolytope(m)
        assert set(vertex_enumeration(H2).vertices) == set(V.vertices)
        for v in V.vertices:
            assert H.contains(v) and H2.contains(v)
        for _ in range(30):
            x = [Fraction(rng.randint(-14, 14), 2) for _ in range(m)]
            assert H.contains(x) == H2.contains(x)


def test_round_trip_v_h_v_random_points():
    rng = random.Random(3)
    for trial in range(15):
        m = rng.randint(2, 4)
        pts = [tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(rng.randint(m + 1, 9))]
        P = VPolytope(pts)
        fd = facet_enumeration(P)
        H = fd.as_hpolytope(m)
        assert set(vertex_enumeration(H).vertices) == set(P.vertices)
        assert set(brute_force_vertices(H)) == set(P.vertices)
        f = f_vector(P)
        assert f[0] == len(P.vertices) and f[-1] == 1
        assert len(f) - 1 == dim(P)
        assert _euler(f) == 1


def test_vertices_tight_on_enough_constraints():
    rng = random.Random(4)
    for trial in range(10):
        m = 3
        H = random_bounded_h(rng, m, 3)
        d = dim(H)
        for v in vertex_enumeration(H).vertices:
            tight = [list(a) for a, b in H.inequalities if sum(x * y for x, y in zip(a, v)) == b]
            assert sympy.Matrix(tight).rank() >= d


def test_lower_dimensional_polytope_in_space():
    # a triangle inside a plane of R^3
    P = VPolytope([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    fd = facet_enumeration(P)
    assert len(fd.facets) == 3 and fd.hull == (((1, 1, 1), 1),)
    assert dim(P) == 2 and f_vector(P) == [3, 3, 1]
    assert contains_point(P, (Fraction(1, 3),) * 3)
    assert not contains_point(P, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
