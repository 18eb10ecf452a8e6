"""Newton nondegeneracy of f at the origin, checked face by face.

Vertices are always fine.  On an edge the face polynomial is a monomial times
a univariate p(t), and f is degenerate there exactly when p has a repeated
root.  On a 2-face we flatten to g(u, v) by a unimodular change of the
exponent lattice and use resultants: a nonconstant common factor of
Res_v(g, g_u) and Res_v(g, g_v) (powers of u stripped) is required for a
singular point of g in the torus.  That test only ever certifies; when it
fails the face is reported as possibly degenerate.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .polytope import CompactFace, NewtonPolytope, SupportedPoly, build_polytope


class Verdict(enum.IntEnum):
    NONDEGENERATE = 0
    POSSIBLY_DEGENERATE = 1
    DEGENERATE = 2

    def __str__(self):
        return {0: "Nondegenerate", 1: "PossiblyDegenerate", 2: "Degenerate"}[self.value]


CERTIFICATION = {
    Verdict.NONDEGENERATE: "certified",
    Verdict.POSSIBLY_DEGENERATE: "uncertified",
    Verdict.DEGENERATE: "degenerate",
}


# -- univariate polynomials over Q, coefficient lists lowest degree first --


def utrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def uderiv(p):
    return utrim([k * c for k, c in enumerate(p)][1:])


def udivmod(p, q):
    p, q = utrim(p), utrim(q)
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    rem = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        c = rem[-1] / lead
        quot[shift] = c
        for k, qc in enumerate(q):
            rem[shift + k] -= c * qc
        rem = utrim(rem)
    return utrim(quot), rem


def ugcd(p, q):
    """Monic gcd; the zero polynomial for gcd(0, 0)."""
    p, q = utrim(p), utrim(q)
    while q:
        p, q = q, udivmod(p, q)[1]
    if not p:
        return []
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def ueval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def umul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return utrim(out)


def _det(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            if m[r][col]:
                ratio = m[r][col] / m[col][col]
                m[r] = [a - ratio * b for a, b in zip(m[r], m[col])]
    return det


def _interpolate(xs, ys):
    """Coefficients of the unique polynomial of degree < len(xs) through the points."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for level in range(1, n):
        for k in range(n - 1, level - 1, -1):
            coef[k] = (coef[k] - coef[k - 1]) / (xs[k] - xs[k - level])
    poly = [coef[-1]]
    for k in range(n - 2, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + poly
        for t, c in enumerate(poly):
            shifted[t] -= xs[k] * c
        shifted[0] += coef[k]
        poly = shifted
    return utrim(poly)


# -- bivariate polynomials: {(i, j): c} meaning c u^i v^j --


def _bi_deriv(g, var):
    out = {}
    for (i, j), c in g.items():
        e = (i, j)[var]
        if e:
            key = (i - 1, j) if var == 0 else (i, j - 1)
            out[key] = c * e
    return out


def _bi_degrees(g):
    return max(i for i, _ in g), max(j for _, j in g)


def resultant_v(g, h):
    """Res_v(g, h) as a polynomial in u, by evaluation and interpolation."""
    if not g or not h:
        return []
    du_g, m = _bi_degrees(g)
    du_h, k = _bi_degrees(h)
    if m + k == 0:
        return [Fraction(1)]
    bound = m * du_h + k * du_g
    xs = list(range(bound + 1))
    ys = []
    for x in xs:
        gv = [Fraction(0)] * (m + 1)
        hv = [Fraction(0)] * (k + 1)
        for (i, j), c in g.items():
            gv[j] += c * Fraction(x) ** i
        for (i, j), c in h.items():
            hv[j] += c * Fraction(x) ** i
        size = m + k
        rows = []
        for t in range(k):
            row = [0] * size
            for j, c in enumerate(reversed(gv)):
                row[t + j] = c
            rows.append(row)
        for t in range(m):
            row = [0] * size
            for j, c in enumerate(reversed(hv)):
                row[t + j] = c
            rows.append(row)
        ys.append(_det(rows))
    return _interpolate(xs, ys)


def _strip_u(p):
    p = utrim(p)
    k = 0
    while k < len(p) and not p[k]:
        k += 1
    return p[k:]


# -- lattice helpers --


def _unimodular_completion(normal):
    """Integer matrix U (list of columns) with det ±1 and normal . U = (1, 0, 0)."""
    w = list(normal)
    cols = [[int(r == c) for r in range(3)] for c in range(3)]
    while sum(1 for x in w if x) > 1:
        p = min((t for t in range(3) if w[t]), key=lambda t: abs(w[t]))
        for q in range(3):
            if q != p and w[q]:
                k = w[q] // w[p]
                w[q] -= k * w[p]
                cols[q] = [a - k * b for a, b in zip(cols[q], cols[p])]
    p = next(t for t in range(3) if w[t])
    cols[0], cols[p] = cols[p], cols[0]
    w[0], w[p] = w[p], w[0]
    if w[0] < 0:
        cols[0] = [-a for a in cols[0]]
    return cols


def _solve2(b1, b2, d):
    """Integer (alpha, beta) with alpha*b1 + beta*b2 = d, for a lattice basis b1, b2."""
    for (x, y) in ((0, 1), (0, 2), (1, 2)):
        det = b1[x] * b2[y] - b1[y] * b2[x]
        if det:
            alpha = Fraction(d[x] * b2[y] - d[y] * b2[x], det)
            beta = Fraction(b1[x] * d[y] - b1[y] * d[x], det)
            assert alpha.denominator == 1 and beta.denominator == 1
            return int(alpha), int(beta)
    raise ValueError("degenerate lattice basis")


def flatten_face(f_sigma: SupportedPoly, face: CompactFace, basis=None):
    """g(u, v) with f_sigma = monomial * g(x^b1, x^b2) for a basis (b1, b2) of the face's
    direction lattice; ``basis`` overrides the default Hermite-style one."""
    normal = face.facet.normal
    if basis is None:
        cols = _unimodular_completion(normal)
        basis = (tuple(cols[1]), tuple(cols[2]))
    b1, b2 = basis
    base = min(f_sigma.terms)
    coords = {}
    for p, c in f_sigma.terms.items():
        d = tuple(x - y for x, y in zip(p, base))
        coords[_solve2(b1, b2, d)] = c
    amin = min(a for a, _ in coords)
    bmin = min(b for _, b in coords)
    return {(a - amin, b - bmin): c for (a, b), c in coords.items()}


def edge_polynomial(f_sigma: SupportedPoly, face: CompactFace):
    """p(t) with f_sigma = x^P * p(x^w), w the primitive edge direction from P."""
    P, Q = face.vertices
    diff = [q - p for p, q in zip(P, Q)]
    g = reduce(gcd, (abs(x) for x in diff))
    w = [x // g for x in diff]
    coeffs = [Fraction(0)] * (g + 1)
    for pt, c in f_sigma.terms.items():
        steps = {(x - p) // s for x, p, s in zip(pt, P, w) if s}
        (t,) = steps
        coeffs[t] = c
    return coeffs


# -- the checks --


@dataclass(frozen=True)
class FaceVerdict:
    face: CompactFace
    verdict: Verdict
    witness: tuple | None = None  # repeated factor or resultant gcd, lowest degree first

    def __str__(self):
        text = f"dim {self.face.dim} {list(self.face.vertices)}: {self.verdict}"
        if self.witness:
            text += f" (witness {[str(c) for c in self.witness]})"
        return text


@dataclass(frozen=True)
class NondegReport:
    faces: tuple

    @property
    def overall(self) -> Verdict:
        return max((fv.verdict for fv in self.faces), default=Verdict.NONDEGENERATE)

    @property
    def certification(self) -> str:
        return CERTIFICATION[self.overall]

    def __str__(self):
        lines = [str(fv) for fv in self.faces]
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)


def face_polynomial(f: SupportedPoly, face: CompactFace) -> SupportedPoly:
    return SupportedPoly(f.n, {p: c for p, c in f.terms.items() if p in face.points})


def check_face(f_sigma: SupportedPoly, face: CompactFace, basis=None) -> FaceVerdict:
    if face.dim == 0:
        return FaceVerdict(face, Verdict.NONDEGENERATE)
    if face.dim == 1:
        p = edge_polynomial(f_sigma, face)
        common = ugcd(p, uderiv(p))
        if len(common) > 1:
            return FaceVerdict(face, Verdict.DEGENERATE, tuple(common))
        return FaceVerdict(face, Verdict.NONDEGENERATE)
    g = flatten_face(f_sigma, face, basis)
    r1 = _strip_u(resultant_v(g, _bi_deriv(g, 0)))
    r2 = _strip_u(resultant_v(g, _bi_deriv(g, 1)))
    common = ugcd(r1, r2)
    if len(common) == 1:
        return FaceVerdict(face, Verdict.NONDEGENERATE)
    return FaceVerdict(face, Verdict.POSSIBLY_DEGENERATE, tuple(common))


def is_nondegenerate(f: SupportedPoly, polytope: NewtonPolytope | None = None) -> NondegReport:
    polytope = polytope or build_polytope(f)
    return NondegReport(
        tuple(check_face(face_polynomial(f, fc), fc) for fc in polytope.compact_faces)
    )
