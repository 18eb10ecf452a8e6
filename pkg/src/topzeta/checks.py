"""Self-checks shared by the verify-paper command and the test suite."""
from __future__ import annotations

import random
from fractions import Fraction

from .algebra import ZetaExpr, ZetaTerm, lf, ratfunc_equal, zeta_combine
from .family import FamilyParams, family_polynomial
from .polytope import SupportedPoly, build_polytope, order_facets_around_vertex
from .zeta import fan_terms


def two_pole_difference(alpha, beta) -> ZetaExpr:
    """1/(s + alpha) - 1/(s + beta)."""
    return ZetaExpr([ZetaTerm(1, 0, (lf(1, alpha),)), ZetaTerm(-1, 0, (lf(1, beta),))])


def two_pole_identity_holds(alpha, beta) -> bool:
    """The difference combines to the constant (beta - alpha) over (s+alpha)(s+beta)."""
    rf = zeta_combine(two_pole_difference(alpha, beta)).monic()
    want = {lf(1, alpha), lf(1, beta)}
    got = {f for f, _ in rf.denominator}
    return (
        rf.numerator.is_constant()
        and rf.numerator.constant_value() == Fraction(beta) - Fraction(alpha)
        and got == want
        and all(m == 1 for _, m in rf.denominator)
    )


def random_rational(rng: random.Random, bound=20) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def two_pole_identity_check(pairs=100, seed=0) -> bool:
    rng = random.Random(seed)
    done = 0
    while done < pairs:
        alpha, beta = random_rational(rng), random_rational(rng)
        if alpha == beta:
            continue
        if not two_pole_identity_holds(alpha, beta):
            return False
        done += 1
    return True


def cycle_variants(cycle):
    """Every rotation of the cycle and of its reversal."""
    r = len(cycle)
    for seq in (list(cycle), list(reversed(cycle))):
        for t in range(r):
            yield seq[t:] + seq[:t]


def vertex_partition_independent(face) -> bool:
    cycle = order_facets_around_vertex(face)
    base = fan_terms(cycle)
    return all(ratfunc_equal(fan_terms(v), base) for v in cycle_variants(cycle))


def polytope_partition_independent(f: SupportedPoly):
    """(all vertices agree, number of vertices with at least four facets)."""
    poly = build_polytope(f)
    wide = 0
    for face in poly.faces(0):
        if len(face.containing_facets) >= 4:
            wide += 1
        if not vertex_partition_independent(face):
            return False, wide
    return True, wide


def random_support(rng: random.Random, points=(3, 7), box=5) -> SupportedPoly:
    count = rng.randint(*points)
    terms = {}
    while len(terms) < count:
        p = tuple(rng.randint(0, box) for _ in range(3))
        if any(p):
            terms[p] = rng.randint(1, 9)
    return SupportedPoly(3, terms)


def partition_independence_check(samples=20, seed=0, params=None) -> bool:
    """Family vertex Q plus ``samples`` random supports, each with some vertex
    on four or more facets."""
    params = params or FamilyParams(2, 3)
    poly = build_polytope(family_polynomial(params))
    q = poly.vertex((params.i, params.j, params.k + params.c * params.r))
    if not vertex_partition_independent(q):
        return False
    rng = random.Random(seed)
    done = 0
    while done < samples:
        ok, wide = polytope_partition_independent(random_support(rng))
        if not ok:
            return False
        if wide:
            done += 1
    return True
