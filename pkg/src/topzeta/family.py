"""The extremely degenerate curve family f = x^i y^j z^k prod_t (x^a y^b + l_t z^c).

Its Newton diagram is a single segment from P = (i+ar, j+br, k) to
Q = (i, j, k+cr).  This module builds the closed-form zeta functions of f and of
its two singular points, checks the identity by which the candidate pole -3/d
cancels, and compares everything against the polytope computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import (
    NotDivisible,
    Poly,
    ZetaExpr,
    ZetaTerm,
    divide_by_linear,
    lf,
    pole_table,
    ratfunc_equal,
    zeta_combine,
)
from .errors import InvalidParams
from .nondeg import Verdict, is_nondegenerate
from .polytope import SupportedPoly, build_polytope
from .zeta import theorem3_check, zeta_local

PARAMS = ("a", "b", "i", "j", "k", "r")
a, b, i, j, k, r = (Poly.var(v) for v in PARAMS)
c = a + b
d = i + j + k + c * r
m = c * i + a * k + a * c * r
n = c * j + b * k + b * c * r


@dataclass(frozen=True)
class FamilyParams:
    a: int
    b: int
    r: int = 1
    i: int = 0
    j: int = 0
    k: int = 0
    roots: tuple = field(default=())  # lambda_1..lambda_r; defaults to 1..r

    def __post_init__(self):
        for name in ("a", "b", "r"):
            v = getattr(self, name)
            if not isinstance(v, int) or v <= 0:
                raise InvalidParams(f"{name} must be a positive integer, got {v!r}")
        if gcd(self.a, self.b) != 1:
            raise InvalidParams(f"a={self.a} and b={self.b} are not coprime")
        for name in ("i", "j", "k"):
            if getattr(self, name) not in (0, 1):
                raise InvalidParams(f"{name} must be 0 or 1")
        roots = tuple(Fraction(x) for x in self.roots) or tuple(
            Fraction(t) for t in range(1, self.r + 1)
        )
        if len(roots) != self.r:
            raise InvalidParams(f"need {self.r} root ratios, got {len(roots)}")
        if any(x == 0 for x in roots) or len(set(roots)) != len(roots):
            raise InvalidParams("root ratios must be nonzero and pairwise distinct")
        object.__setattr__(self, "roots", roots)

    @property
    def c(self):
        return self.a + self.b

    @property
    def d(self):
        return self.i + self.j + self.k + self.c * self.r

    @property
    def m(self):
        return self.c * self.i + self.a * self.k + self.a * self.c * self.r

    @property
    def n(self):
        return self.c * self.j + self.b * self.k + self.b * self.c * self.r

    def values(self) -> dict:
        return {v: getattr(self, v) for v in PARAMS}

    def facet_table(self) -> dict:
        """Expected primitive normal -> (N, nu) for the five facets."""
        a_, b_, c_ = self.a, self.b, self.c
        return {
            (1, 0, 0): (self.i, 1),
            (0, 1, 0): (self.j, 1),
            (0, 0, 1): (self.k, 1),
            (c_, 0, a_): (self.m, a_ + c_),
            (0, c_, b_): (self.n, b_ + c_),
        }

    def __str__(self):
        lam = ",".join(str(x) for x in self.roots)
        return (
            f"(a,b,i,j,k,r)=({self.a},{self.b},{self.i},{self.j},{self.k},{self.r}) "
            f"lambda=({lam})"
        )


def family_polynomial(p: FamilyParams) -> SupportedPoly:
    x, y, z = Poly.var("x"), Poly.var("y"), Poly.var("z")
    f = x ** p.i * y ** p.j * z ** p.k
    for lam in p.roots:
        f = f * (x ** p.a * y ** p.b + lam * z ** p.c)
    f = f.with_vars(("x", "y", "z"))
    return SupportedPoly(3, f.terms)


def singular_local_equations(p: FamilyParams):
    """Local equations at [0:1:0] (set y = 1; variables x, z) and [1:0:0] (x = 1; y, z)."""
    f = family_polynomial(p)
    h1, h2 = {}, {}
    for (ex, ey, ez), v in f.terms.items():
        h1[(ex, ez)] = h1.get((ex, ez), 0) + v
        h2[(ey, ez)] = h2.get((ey, ez), 0) + v
    return SupportedPoly(2, h1), SupportedPoly(2, h2)


@dataclass(frozen=True)
class SymbolicQuadruple:
    Z: ZetaExpr
    Z1: ZetaExpr
    Z2: ZetaExpr
    R: ZetaExpr

    def specialize(self, p: FamilyParams) -> "SymbolicQuadruple":
        vals = p.values()
        return SymbolicQuadruple(*(e.subs(vals) for e in (self.Z, self.Z1, self.Z2, self.R)))


def _t(coef, *factors, s_power=0):
    return ZetaTerm(Poly.coerce(coef), s_power, factors)


_S1 = lf(1, 1)
_FM = lf(m, a + c)
_FN = lf(n, b + c)
_FI = lf(i, 1)
_FJ = lf(j, 1)
_FK = lf(k, 1)


def symbolic_quadruple() -> SymbolicQuadruple:
    """Z, Z1, Z2 and the remainder R over Q[s, a, b, i, j, k, r]."""
    Z = ZetaExpr([
        _t(-c * r, _S1, _FM, _FN, s_power=1),
        _t(b, _FI, _FJ, _FN),
        _t(a * c, _FN, _FM, _FI),
        _t(c * c, _FK, _FN, _FM),
    ])
    Z1 = ZetaExpr([
        _t(-r, _S1, _FM, s_power=1),
        _t(c, _FM, _FK),
        _t(a, _FM, _FI),
    ])
    Z2 = ZetaExpr([
        _t(-r, _S1, _FN, s_power=1),
        _t(c, _FN, _FK),
        _t(b, _FN, _FJ),
    ])
    R = ZetaExpr([_t(1, _FI, _FJ)])
    return SymbolicQuadruple(Z, Z1, Z2, R)


def jq_expressions():
    """The two fan triangulations of the normal cone at Q (apex x-facet, apex y-facet)."""
    lhs = ZetaExpr([_t(b, _FI, _FJ, _FN), _t(a * c, _FN, _FM, _FI)])
    rhs = ZetaExpr([_t(b * c, _FJ, _FN, _FM), _t(a, _FM, _FI, _FJ)])
    return lhs, rhs


def verify_cancellation(quad: SymbolicQuadruple | None = None) -> bool:
    """Z1 + Z2 + R has numerator divisible by d*s + 3 and the quotient is Z."""
    quad = quad or symbolic_quadruple()
    total = zeta_combine(quad.Z1 + quad.Z2 + quad.R)
    try:
        quotient = divide_by_linear(total, lf(d, 3))
    except NotDivisible:
        return False
    return ratfunc_equal(quotient, quad.Z)


def verify_jq_equivalence(lhs: ZetaExpr | None = None, rhs: ZetaExpr | None = None) -> bool:
    if lhs is None or rhs is None:
        lhs0, rhs0 = jq_expressions()
        lhs, rhs = lhs or lhs0, rhs or rhs0
    return ratfunc_equal(lhs, rhs)


@dataclass
class InstanceReport:
    params: FamilyParams
    facets_ok: bool = False
    zeta_ok: bool = False
    charts_ok: bool = False
    theorem3_ok: bool = False
    cancellation_ok: bool = False
    nondegenerate: bool = False
    poles: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all((self.facets_ok, self.zeta_ok, self.charts_ok, self.theorem3_ok,
                    self.cancellation_ok))

    def failures(self) -> list:
        names = ("facets_ok", "zeta_ok", "charts_ok", "theorem3_ok", "cancellation_ok")
        return [nm for nm in names if not getattr(self, nm)]


_QUAD = None


def _quad():
    global _QUAD
    if _QUAD is None:
        _QUAD = symbolic_quadruple()
    return _QUAD


def check_instance(p: FamilyParams) -> InstanceReport:
    rep = InstanceReport(p)
    f = family_polynomial(p)
    poly = build_polytope(f)
    table = {g.normal: (g.N, g.nu) for g in poly.facets}
    rep.facets_ok = len(poly.facets) == 5 and table == p.facet_table()

    spec = _quad().specialize(p)
    Z = zeta_local(f, check=False)
    rep.zeta_ok = ratfunc_equal(Z, spec.Z)
    h1, h2 = singular_local_equations(p)
    Z1, Z2 = zeta_local(h1, check=False), zeta_local(h2, check=False)
    rep.charts_ok = ratfunc_equal(Z1, spec.Z1) and ratfunc_equal(Z2, spec.Z2)
    rep.theorem3_ok = theorem3_check(Z, Z1, Z2)
    rep.poles = pole_table(zeta_combine(Z))
    rep.cancellation_ok = all(pl.value != Fraction(-3, p.d) for pl in rep.poles)
    rep.nondegenerate = is_nondegenerate(f, poly).overall == Verdict.NONDEGENERATE
    return rep


def end_to_end_instance_check(p: FamilyParams) -> bool:
    return check_instance(p).ok


def sweep(amax: int, bmax: int, rmax: int):
    """Every valid parameter set with a <= amax, b <= bmax, r <= rmax, in a fixed order."""
    for a_ in range(1, amax + 1):
        for b_ in range(1, bmax + 1):
            if gcd(a_, b_) != 1:
                continue
            for r_ in range(1, rmax + 1):
                for i_ in (0, 1):
                    for j_ in (0, 1):
                        for k_ in (0, 1):
                            yield FamilyParams(a_, b_, r_, i_, j_, k_)
