import random
from fractions import Fraction as F

import pytest

from topzeta.algebra import Poly, ZetaExpr, ZetaTerm, pole_table, zeta_combine
from topzeta.errors import InvalidParams
from topzeta.family import (
    FamilyParams,
    check_instance,
    end_to_end_instance_check,
    family_polynomial,
    jq_expressions,
    singular_local_equations,
    sweep,
    symbolic_quadruple,
    verify_cancellation,
    verify_jq_equivalence,
)
from topzeta.parse import parse_polynomial
from topzeta.polytope import build_polytope
from topzeta.zeta import zeta_local


def test_family_polynomial_examples():
    f = family_polynomial(FamilyParams(2, 3))
    assert f.terms == {(2, 3, 0): 1, (0, 0, 5): 1}
    f = family_polynomial(FamilyParams(2, 3, r=2, roots=(1, 2)))
    assert f.terms == {(4, 6, 0): 1, (2, 3, 5): 3, (0, 0, 10): 2}
    p = FamilyParams(1, 1, 1, 1, 1, 1)
    assert family_polynomial(p) == parse_polynomial("x^2*y^2*z + x*y*z^3")
    assert p.d == 5


def test_default_roots():
    assert FamilyParams(2, 3, r=3).roots == (1, 2, 3)


def test_support_on_segment_and_degree():
    for p in (FamilyParams(2, 3, 3), FamilyParams(1, 4, 2, 1, 0, 1), FamilyParams(3, 1, 1, 0, 1, 1)):
        f = family_polynomial(p)
        P = (p.i + p.a * p.r, p.j + p.b * p.r, p.k)
        Q = (p.i, p.j, p.k + p.c * p.r)
        assert {sum(e) for e in f.support} == {p.d}
        for e in f.support:
            # e = P + t (Q - P) for a rational t
            t = {F(x - y, q - y) for x, y, q in zip(e, P, Q) if q != y}
            assert len(t) == 1 and 0 <= t.pop() <= 1
        assert P in f.support and Q in f.support


@pytest.mark.parametrize("kw", [
    dict(a=2, b=4), dict(a=0, b=1), dict(a=2, b=3, i=2),
    dict(a=2, b=3, r=2, roots=(1, 1)), dict(a=2, b=3, r=2, roots=(1,)),
    dict(a=2, b=3, roots=(0,)),
])
def test_invalid_params(kw):
    with pytest.raises(InvalidParams):
        FamilyParams(**kw)


def test_singular_equations():
    h1, h2 = singular_local_equations(FamilyParams(2, 3))
    assert h1 == parse_polynomial("x^2 + y^5")
    assert h2 == parse_polynomial("x^3 + y^5")
    (e1,) = build_polytope(h1).faces(1)
    (e2,) = build_polytope(h2).faces(1)
    assert (e1.facet.normal, e1.facet.N, e1.facet.nu) == ((5, 2), 10, 7)
    assert (e2.facet.normal, e2.facet.N, e2.facet.nu) == ((5, 3), 15, 8)


def test_quadruple_shape():
    q = symbolic_quadruple()
    assert [len(e.terms) for e in (q.Z, q.Z1, q.Z2, q.R)] == [4, 3, 3, 1]
    used = set()
    for e in (q.Z, q.Z1, q.Z2, q.R):
        for t in e.terms:
            used.update(t.numerator().used_vars())
            for g in t.denominator:
                used.update(g.N.used_vars() + g.nu.used_vars())
    assert used <= set("sabijkr")


def test_r_at_zero_is_one():
    R = symbolic_quadruple().R.subs({"i": 0, "j": 0})
    rf = zeta_combine(R)
    assert rf.numerator == 1 and rf.denominator == ()


def test_z1_specialized():
    q = symbolic_quadruple().specialize(FamilyParams(2, 3))
    assert str(zeta_combine(q.Z1)) == "(6*s+7)/((s+1)*(10*s+7))"


def test_cancellation():
    assert verify_cancellation()


def test_cancellation_detects_broken_r():
    q = symbolic_quadruple()
    (t,) = q.R.terms
    broken = type(q)(q.Z, q.Z1, q.Z2, ZetaExpr([ZetaTerm(2, 0, t.denominator)]))
    assert not verify_cancellation(broken)


def test_cancellation_numeric_instance():
    q = symbolic_quadruple().specialize(FamilyParams(2, 3))
    total = zeta_combine(q.Z1 + q.Z2 + q.R)
    s = Poly.var("s")
    assert total.numerator == 150 * s**3 + 495 * s**2 + 523 * s + 168
    assert str(zeta_combine(q.Z)) == "(30*s^2+81*s+56)/((s+1)*(10*s+7)*(15*s+8))"


def test_jq_equivalence():
    assert verify_jq_equivalence()
    lhs, rhs = jq_expressions()
    b = Poly.var("b")
    t = rhs.terms[0]
    bad = ZetaExpr([ZetaTerm(t.coefficient.subs({"b": b + 1}), 0, t.denominator), rhs.terms[1]])
    assert not verify_jq_equivalence(lhs, bad)


def test_jq_random_evaluation_oracle():
    rng = random.Random(4)

    def sides(s, a, b, i, j, k, r):
        c = a + b
        m, n = c * i + a * k + a * c * r, c * j + b * k + b * c * r
        I, J, M, N = i * s + 1, j * s + 1, m * s + a + c, n * s + b + c
        return b / (I * J * N) + a * c / (N * M * I), b * c / (J * N * M) + a / (M * I * J)

    for _ in range(5):
        s = F(rng.randint(1, 50), rng.randint(1, 50))
        lhs, rhs = sides(s, 2, 3, 0, 0, 0, 1)
        assert lhs == rhs
        args = [rng.randint(1, 6) for _ in range(6)]
        lhs, rhs = sides(s, *args)
        assert lhs == rhs


def test_instance_end_to_end():
    p = FamilyParams(2, 3)
    rep = check_instance(p)
    assert rep.ok and rep.nondegenerate
    assert [(x.value, x.order) for x in rep.poles] == [(F(-8, 15), 1), (F(-7, 10), 1), (-1, 1)]
    assert end_to_end_instance_check(p)


def test_coinciding_pole_instance():
    # a = b = 1, i = j: -3/d equals -(a+c)/m, a genuine double pole of Z
    p = FamilyParams(1, 1, 1, 1, 1, 1)
    rep = check_instance(p)
    assert rep.facets_ok and rep.zeta_ok and rep.charts_ok and rep.theorem3_ok
    assert (F(-3, 5), 2) in [(x.value, x.order) for x in rep.poles]
    assert not rep.cancellation_ok


def test_minus_three_over_d_never_new():
    # for d >= 3, whenever -3/d is a pole of Z it is already -1 or a pole of Z1 or Z2
    for p in sweep(3, 3, 2):
        rep = check_instance(p)
        if rep.cancellation_ok or p.d < 3:
            continue
        h1, h2 = singular_local_equations(p)
        known = {F(-1)}
        for h in (h1, h2):
            known |= {x.value for x in pole_table(zeta_combine(zeta_local(h, check=False)))}
        assert F(-3, p.d) in known


def test_smooth_conic_is_the_exception():
    # d = 2: f = xy + z^2 has an A1 point, both charts are smooth
    rep = check_instance(FamilyParams(1, 1))
    assert [(x.value, x.order) for x in rep.poles] == [(-1, 1), (F(-3, 2), 1)]
    assert not rep.theorem3_ok and not rep.cancellation_ok
    assert [p.d for p in sweep(4, 4, 4) if p.d < 3] == [2]


def test_sweep_order_and_count():
    params = list(sweep(2, 2, 1))
    # coprime (a, b): (1,1), (1,2), (2,1); eight (i,j,k) each
    assert len(params) == 24
    assert params[0] == FamilyParams(1, 1, 1, 0, 0, 0)
    assert params[-1] == FamilyParams(2, 1, 1, 1, 1, 1)


def test_facet_sets_and_nondegeneracy_small_sweep():
    for p in sweep(3, 3, 2):
        rep = check_instance(p)
        assert rep.facets_ok and rep.zeta_ok and rep.charts_ok and rep.nondegenerate


def test_nondegenerate_with_other_roots():
    p = FamilyParams(3, 2, 3, 1, 0, 1, roots=(F(-1), F(1, 2), F(7)))
    rep = check_instance(p)
    assert rep.nondegenerate and rep.zeta_ok and rep.charts_ok
