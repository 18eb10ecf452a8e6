"""Local topological zeta function of a Newton-nondegenerate polynomial.

Vertices contribute their J-term directly; a positive-dimensional compact
face contributes (-1)^dim * (normalized volume) * J * s/(s+1).
"""
from __future__ import annotations

from .algebra import (
    LinearFactor,
    Poly,
    ZetaExpr,
    ZetaTerm,
    lf,
    pole_table,
    zeta_combine,
)
from .errors import BrokenFan, WrongDim
from .nondeg import is_nondegenerate
from .polytope import (
    CompactFace,
    FacetData,
    NewtonPolytope,
    SupportedPoly,
    build_polytope,
    mult2,
    mult3,
    normalized_volume,
    order_facets_around_vertex,
)

S_PLUS_ONE = lf(1, 1)


def factor_of(facet: FacetData) -> LinearFactor:
    return lf(facet.N, facet.nu)


def _term(coefficient, *facets) -> ZetaTerm:
    return ZetaTerm(Poly.const(coefficient), 0, tuple(factor_of(g) for g in facets))


def j_facet(face: CompactFace, n: int) -> ZetaExpr:
    if face.dim != n - 1 or face.facet is None:
        raise WrongDim(f"J for a top-dimensional face, got dim {face.dim} in n={n}")
    return ZetaExpr([_term(1, face.facet)])


def j_edge(face: CompactFace) -> ZetaExpr:
    if face.dim != 1 or len(face.containing_facets) != 2:
        raise WrongDim("edge J-term needs a 1-dimensional face on exactly two facets")
    g1, g2 = face.containing_facets
    return ZetaExpr([_term(mult2(g1.normal, g2.normal), g1, g2)])


def fan_terms(cycle) -> ZetaExpr:
    """J-term of a vertex from its cyclically ordered facets, fanned from cycle[0]."""
    apex = cycle[0]
    terms = []
    for t in range(2, len(cycle)):
        prev, cur = cycle[t - 1], cycle[t]
        m = mult3(apex.normal, prev.normal, cur.normal)
        if m:
            terms.append(_term(m, apex, prev, cur))
    return ZetaExpr(terms)


def j_vertex(face: CompactFace, n: int, cycle=None) -> ZetaExpr:
    """J-term of a vertex.  For n = 3, ``cycle`` may supply another cyclic order
    (any rotation or reflection gives the same rational function)."""
    if face.dim != 0:
        raise WrongDim(f"vertex J-term needs dim 0, got {face.dim}")
    if n == 2:
        if len(face.containing_facets) != 2:
            raise BrokenFan(f"vertex {face.vertices} lies on {len(face.containing_facets)} edges")
        g1, g2 = face.containing_facets
        return ZetaExpr([_term(mult2(g1.normal, g2.normal), g1, g2)])
    if cycle is None:
        cycle = order_facets_around_vertex(face, n)
    return fan_terms(cycle)


def j_term(face: CompactFace, n: int) -> ZetaExpr:
    if face.dim == 0:
        return j_vertex(face, n)
    if face.dim == n - 1:
        return j_facet(face, n)
    return j_edge(face)


def zeta_from_polytope(polytope: NewtonPolytope) -> ZetaExpr:
    n = polytope.n
    terms = []
    for face in polytope.compact_faces:
        J = j_term(face, n)
        if face.dim == 0:
            terms.extend(J.terms)
            continue
        weight = (-1) ** face.dim * normalized_volume(face)
        for t in J.terms:
            terms.append(
                ZetaTerm(t.coefficient * weight, 1, (S_PLUS_ONE,) + t.denominator)
            )
    return ZetaExpr(terms)


def zeta_local(f: SupportedPoly, check: bool = True) -> ZetaExpr:
    """Local topological zeta function of f at 0 from its Newton polyhedron.

    The result's ``certification`` is "certified", "uncertified" or
    "degenerate" when ``check`` is on, and "skipped" otherwise.
    """
    polytope = build_polytope(f)
    z = zeta_from_polytope(polytope)
    status = is_nondegenerate(f, polytope).certification if check else "skipped"
    return ZetaExpr(z.terms, certification=status)


def poles(z) -> set:
    rf = zeta_combine(z) if isinstance(z, ZetaExpr) else z
    return {p.value for p in pole_table(rf)}


def theorem3_check(Z: ZetaExpr, Z1: ZetaExpr, Z2: ZetaExpr) -> bool:
    """Every pole of Z is -1 or a pole of Z1 or Z2."""
    return poles(Z) <= poles(Z1) | poles(Z2) | {-1}
