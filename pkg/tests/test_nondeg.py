import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topzeta.family import FamilyParams, family_polynomial
from topzeta.nondeg import (
    Verdict,
    _unimodular_completion,
    check_face,
    edge_polynomial,
    face_polynomial,
    flatten_face,
    is_nondegenerate,
    resultant_v,
    ugcd,
)
from topzeta.parse import parse_polynomial
from topzeta.polytope import SupportedPoly, build_polytope


def test_verdict_names():
    assert [str(v) for v in Verdict] == ["Nondegenerate", "PossiblyDegenerate", "Degenerate"]


def test_family_edge_face_polynomial():
    f = family_polynomial(FamilyParams(2, 3))
    P = build_polytope(f)
    (edge,) = P.faces(1)
    assert face_polynomial(f, edge).terms == {(2, 3, 0): 1, (0, 0, 5): 1}
    assert check_face(face_polynomial(f, edge), edge).verdict == Verdict.NONDEGENERATE


def test_family_two_roots_nondegenerate():
    f = family_polynomial(FamilyParams(2, 3, r=2, roots=(1, 2)))
    assert is_nondegenerate(f).overall == Verdict.NONDEGENERATE


def test_square_is_degenerate():
    rep = is_nondegenerate(parse_polynomial("x^2+2*x*y+y^2"))
    assert rep.overall == Verdict.DEGENERATE
    assert rep.certification == "degenerate"
    (edge,) = [fv for fv in rep.faces if fv.face.dim == 1]
    assert [F(c) for c in edge.witness] == [1, 1]  # t + 1


def test_vertices_always_nondegenerate():
    f = parse_polynomial("x^2+2*x*y+y^2")
    for v in build_polytope(f).faces(0):
        assert check_face(face_polynomial(f, v), v).verdict == Verdict.NONDEGENERATE


@pytest.mark.parametrize("text", ["x", "x*y", "x^2+y^3", "x^2+y^2", "x*y*z", "x^2*y^3+z^5"])
def test_certified_examples(text):
    assert is_nondegenerate(parse_polynomial(text)).certification == "certified"


# -- edges: brute-force multiplicity oracle --


def expand(roots, lead=1):
    """Ascending coefficients of lead * prod (t - r)."""
    p = [F(lead)]
    for r in roots:
        q = [F(0)] * (len(p) + 1)
        for e, c in enumerate(p):
            q[e + 1] += c
            q[e] -= r * c
        p = q
    return p


def lift_edge(coeffs, n=3):
    """f = sum c_t x^(P + t w) along an edge from (0,...,0,g) with w = (1,...,1,-1)."""
    g = len(coeffs) - 1
    terms = {}
    for t, c in enumerate(coeffs):
        if c:
            terms[tuple([t] * (n - 1) + [g - t])] = c
    return SupportedPoly(n, terms)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.sampled_from([F(-3), F(-2), F(-1), F(1), F(2), F(1, 2), F(-5, 3)]),
             min_size=1, max_size=6),
    st.integers(1, 7),
    st.sampled_from([2, 3]),
)
def test_edge_verdict_matches_root_multiplicities(roots, lead, n):
    coeffs = expand(roots, lead)
    f = lift_edge(coeffs, n)
    P = build_polytope(f)
    edges = [e for e in P.faces(1) if len(e.points) == len(f.terms)]
    if len(roots) == 1:
        assert not edges or check_face(f, edges[0]).verdict == Verdict.NONDEGENERATE
        return
    (edge,) = edges
    assert edge_polynomial(f, edge) in (coeffs, coeffs[::-1])
    repeated = len(set(roots)) < len(roots)
    want = Verdict.DEGENERATE if repeated else Verdict.NONDEGENERATE
    assert check_face(f, edge).verdict == want


def test_square_on_an_edge():
    # g(t)^2 with g irreducible over Q
    g = [F(1), F(0), F(1)]
    sq = [sum(g[u] * g[e - u] for u in range(3) if 0 <= e - u < 3) for e in range(5)]
    f = lift_edge(sq)
    (edge,) = [e for e in build_polytope(f).faces(1) if len(e.points) == 3]
    fv = check_face(f, edge)
    assert fv.verdict == Verdict.DEGENERATE
    assert [F(c) for c in fv.witness] == [1, 0, 1]


# -- two-dimensional faces --


def triangle(*terms):
    f = SupportedPoly(3, dict(terms))
    (face,) = build_polytope(f).faces(2)
    return f, face


def test_plane_is_certified():
    f, face = triangle(((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1))
    assert check_face(f, face).verdict == Verdict.NONDEGENERATE


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=3, max_size=3))
def test_diagonal_quadric_is_certified(cs):
    f, face = triangle(((2, 0, 0), cs[0]), ((0, 2, 0), cs[1]), ((0, 0, 2), -cs[2]))
    assert check_face(f, face).verdict == Verdict.NONDEGENERATE


def test_square_of_plane_is_flagged():
    f = parse_polynomial("x^2+y^2+z^2+2*x*y+2*y*z+2*x*z")
    (face,) = build_polytope(f).faces(2)
    assert check_face(f, face).verdict == Verdict.POSSIBLY_DEGENERATE
    assert is_nondegenerate(f).overall == Verdict.DEGENERATE  # its edges are squares too


def homogenize(g, D):
    """Lift g(u, v) to x^a y^b z^(D-a-b), so g is the face with normal (1,1,1)."""
    return SupportedPoly(3, {(a, b, D - a - b): c for (a, b), c in g.items() if c})


def force_singular(g, u0, v0):
    """g - g(p) - g_u(p)(u - u0) - g_v(p)(v - v0): singular at p = (u0, v0)."""
    val = sum(c * u0**a * v0**b for (a, b), c in g.items())
    du = sum(c * a * u0 ** (a - 1) * v0**b for (a, b), c in g.items() if a)
    dv = sum(c * b * u0**a * v0 ** (b - 1) for (a, b), c in g.items() if b)
    out = dict(g)
    for key, delta in (((0, 0), -val + du * u0 + dv * v0), ((1, 0), -du), ((0, 1), -dv)):
        out[key] = out.get(key, 0) + delta
    return out


def random_g(rng, deg):
    g = {(a, b): F(rng.randint(-5, 5)) for a in range(deg + 1) for b in range(deg + 1 - a)}
    g[(deg, 0)] = g[(0, deg)] = F(1)
    g[(0, 0)] = F(rng.randint(1, 5))
    return g


def top_face(f):
    faces = [fc for fc in build_polytope(f).faces(2) if fc.facet.normal == (1, 1, 1)]
    return faces[0] if faces else None


def test_torus_singularity_never_certified():
    rng = random.Random(3)
    done = 0
    while done < 25:
        u0 = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        v0 = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        g = force_singular(random_g(rng, rng.randint(2, 3)), u0, v0)
        D = 4
        f = homogenize(g, D)
        face = top_face(f)
        if face is None or len(face.vertices) < 3:
            continue
        assert check_face(face_polynomial(f, face), face).verdict != Verdict.NONDEGENERATE
        done += 1


def test_generic_faces_are_certified():
    rng = random.Random(8)
    for _ in range(15):
        f = homogenize(random_g(rng, 3), 4)
        face = top_face(f)
        assert check_face(face_polynomial(f, face), face).verdict == Verdict.NONDEGENERATE


def test_verdict_invariant_under_basis_change():
    rng = random.Random(21)
    checked = 0
    while checked < 10:
        singular = checked % 2 == 0
        g = random_g(rng, 2)
        if singular:
            g = force_singular(g, F(rng.choice([1, 2, -1])), F(rng.choice([1, 3, -2])))
        f = homogenize(g, 3)
        face = top_face(f)
        if face is None:
            continue
        fs = face_polynomial(f, face)
        cols = _unimodular_completion(face.facet.normal)
        b1, b2 = tuple(cols[1]), tuple(cols[2])
        plus = tuple(x + y for x, y in zip(b1, b2))
        minus2 = tuple(x - 2 * y for x, y in zip(b2, b1))
        base = check_face(fs, face).verdict
        for basis in ((b2, b1), (plus, b2), (b1, minus2)):
            assert check_face(fs, face, basis).verdict == base
        checked += 1


def test_flatten_is_a_polynomial_in_the_lattice():
    f = parse_polynomial("x^2+y^2+z^2")
    (face,) = build_polytope(f).faces(2)
    g = flatten_face(f, face)
    assert len(g) == 3 and all(c == 1 for c in g.values())
    # a lattice triangle of normalized area 4 flattens to one of area 4
    (p, q, w) = sorted(g)
    assert abs((q[0] - p[0]) * (w[1] - p[1]) - (q[1] - p[1]) * (w[0] - p[0])) == 4


def test_resultant_of_simple_pair():
    # Res_v(v - u, v + u - 2) = -(2u - 2) up to sign; vanishes at u = 1 only
    g = {(0, 1): F(1), (1, 0): F(-1)}
    h = {(0, 1): F(1), (1, 0): F(1), (0, 0): F(-2)}
    res = resultant_v(g, h)
    assert ugcd(res, [F(-1), F(1)]) == [F(-1), F(1)]
