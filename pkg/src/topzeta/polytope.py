"""Newton polyhedron at the origin and the lattice invariants read off from it."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, reduce
from itertools import combinations
from math import gcd
from typing import Mapping

from .errors import (
    BrokenFan,
    DependentNormals,
    EmptySupport,
    NotAVertex,
    NotCompact,
    OriginInSupport,
)


@dataclass(frozen=True)
class SupportedPoly:
    """f = sum c_p x^p in n = 2 or 3 variables, with f(0) = 0."""

    n: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError(f"ambient dimension must be 2 or 3, got {self.n}")
        clean = {}
        for p, c in self.terms.items():
            p = tuple(int(e) for e in p)
            if len(p) != self.n or min(p) < 0:
                raise ValueError(f"bad exponent {p} for n={self.n}")
            c = Fraction(c)
            if c:
                clean[p] = clean.get(p, 0) + c
        clean = {p: c for p, c in clean.items() if c}
        if not clean:
            raise EmptySupport("polynomial has no terms")
        if (0,) * self.n in clean:
            raise OriginInSupport("f(0) != 0: origin lies in the support")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @property
    def support(self) -> tuple:
        return tuple(self.terms)

    def scaled(self, c) -> "SupportedPoly":
        return SupportedPoly(self.n, {p: v * Fraction(c) for p, v in self.terms.items()})

    def __str__(self):
        names = "xyz"[: self.n]
        parts = []
        for p, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            mono = "*".join(
                names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(p) if e
            )
            mag = abs(c)
            body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out


@dataclass(frozen=True)
class FacetData:
    normal: tuple
    N: int
    nu: int
    compact: bool
    points: frozenset = field(compare=False, repr=False)
    recession: frozenset = field(compare=False, repr=False)  # coordinate rays in the facet


@dataclass(frozen=True)
class CompactFace:
    dim: int
    vertices: tuple
    points: frozenset = field(repr=False)  # every support point on the face
    containing_facets: tuple = field(repr=False)
    facet: FacetData | None = None  # set when dim == n - 1


@dataclass(frozen=True)
class NewtonPolytope:
    n: int
    support: tuple
    facets: tuple
    compact_faces: tuple

    def faces(self, dim: int) -> list:
        return [f for f in self.compact_faces if f.dim == dim]

    def vertex(self, point) -> CompactFace:
        point = tuple(point)
        for face in self.compact_faces:
            if face.dim == 0 and face.vertices[0] == point:
                return face
        raise NotAVertex(f"{point} is not a vertex of the Newton polyhedron")

    def facet(self, normal) -> FacetData:
        normal = tuple(normal)
        for f in self.facets:
            if f.normal == normal:
                return f
        raise KeyError(normal)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _unit(n, k):
    return tuple(int(t == k) for t in range(n))


def rank(vectors) -> int:
    """Rank of a list of integer vectors, by exact elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors if any(v)]
    r = 0
    if not rows:
        return 0
    width = len(rows[0])
    for col in range(width):
        pivot = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                ratio = rows[k][col] / rows[r][col]
                rows[k] = [a - ratio * b for a, b in zip(rows[k], rows[r])]
        r += 1
    return r


def _affine_dim(points, directions=()) -> int:
    points = list(points)
    if not points:
        return -1
    p0 = points[0]
    return rank([_sub(p, p0) for p in points[1:]] + list(directions))


def primitive(v) -> tuple | None:
    """Primitive nonnegative representative of ±v, or None if v has mixed signs or is 0."""
    if not any(v):
        return None
    if all(x <= 0 for x in v):
        v = tuple(-x for x in v)
    if any(x < 0 for x in v):
        return None
    g = reduce(gcd, v)
    return tuple(x // g for x in v)


def _candidate_normals(n, support):
    cands = {_unit(n, k) for k in range(n)}
    units = [_unit(n, k) for k in range(n)]
    pts = list(support)
    if n == 2:
        for p, q in combinations(pts, 2):
            d = _sub(q, p)
            cands.add(primitive((d[1], -d[0])))
    else:
        for p, q in combinations(pts, 2):
            d = _sub(q, p)
            for e in units:
                cands.add(primitive(_cross(d, e)))
        for p, q, t in combinations(pts, 3):
            cands.add(primitive(_cross(_sub(q, p), _sub(t, p))))
    cands.discard(None)
    return sorted(cands)


def _make_facet(n, support, normal):
    values = [_dot(normal, p) for p in support]
    N = min(values)
    points = frozenset(p for p, v in zip(support, values) if v == N)
    rec = frozenset(k for k in range(n) if normal[k] == 0)
    if _affine_dim(points, [_unit(n, k) for k in rec]) != n - 1:
        return None
    return FacetData(normal, N, sum(normal), compact=not rec, points=points, recession=rec)


def build_polytope(f: SupportedPoly) -> NewtonPolytope:
    """Facets and compact faces of the Newton polyhedron of f at the origin.

    Facets come from exhaustive candidate normals (coordinate directions and
    normals spanned by pairs/triples of support points and coordinate rays);
    compact faces are the intersections of facets with no common recession ray.
    """
    n = f.n
    support = f.support
    facets = []
    for normal in _candidate_normals(n, support):
        facet = _make_facet(n, support, normal)
        if facet is not None:
            facets.append(facet)
    facets = tuple(facets)

    found = {}
    for size in range(1, n + 1):
        for group in combinations(facets, size):
            pts = frozenset.intersection(*(g.points for g in group))
            rec = frozenset.intersection(*(g.recession for g in group))
            if pts and not rec and pts not in found:
                found[pts] = _affine_dim(pts)
    vertex_points = {next(iter(p)) for p, d in found.items() if d == 0}

    faces = []
    for pts, dim in found.items():
        containing = tuple(g for g in facets if pts <= g.points)
        vertices = tuple(sorted(pts & vertex_points))
        own = None
        if dim == n - 1:
            own = next(g for g in containing if g.points == pts)
        faces.append(CompactFace(dim, vertices, pts, containing, own))
    faces.sort(key=lambda fc: (fc.dim, fc.vertices))
    return NewtonPolytope(n, support, facets, tuple(faces))


def _det3(a, b, c):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _polygon_order(vertices):
    """Vertices of a planar convex lattice polygon in R^3, in cyclic order from the smallest."""
    apex = min(vertices)
    rest = [v for v in vertices if v != apex]
    normal = _cross(_sub(rest[0], apex), _sub(rest[1], apex)) if len(rest) > 1 else (0, 0, 0)
    if len(rest) > 1 and not any(normal):
        normal = next(
            _cross(_sub(p, apex), _sub(q, apex))
            for p, q in combinations(rest, 2)
            if any(_cross(_sub(p, apex), _sub(q, apex)))
        )

    def cmp(p, q):
        side = _dot(_cross(_sub(p, apex), _sub(q, apex)), normal)
        return -1 if side > 0 else (1 if side < 0 else 0)

    return [apex] + sorted(rest, key=cmp_to_key(cmp))


def normalized_volume(face: CompactFace, apex=None) -> int:
    """dim! * lattice volume of a compact face.

    For 2-faces the polygon is fanned from ``apex`` (default: smallest vertex).
    """
    if face is None or not isinstance(face, CompactFace):
        raise NotCompact("normalized volume is defined for compact faces only")
    if face.dim == 0:
        return 1
    if face.dim == 1:
        p, q = face.vertices
        return reduce(gcd, (abs(x) for x in _sub(q, p)))
    if face.facet is None:
        raise NotCompact("2-face without its facet data")
    ring = _polygon_order(face.vertices)
    if apex is not None:
        k = ring.index(tuple(apex))
        ring = ring[k:] + ring[:k]
    total = sum(
        abs(_det3(ring[0], ring[t], ring[t + 1])) for t in range(1, len(ring) - 1)
    )
    N = face.facet.N
    if total % N:
        raise ArithmeticError(f"determinant sum {total} not divisible by N={N}")
    return total // N


def mult2(l1, l2) -> int:
    """Lattice multiplicity of two normals: |det| for n=2, gcd of 2x2 minors for n=3."""
    if len(l1) == 2:
        value = abs(l1[0] * l2[1] - l1[1] * l2[0])
    else:
        minors = (
            l1[0] * l2[1] - l1[1] * l2[0],
            l1[0] * l2[2] - l1[2] * l2[0],
            l1[1] * l2[2] - l1[2] * l2[1],
        )
        value = reduce(gcd, (abs(m) for m in minors))
    if value == 0:
        raise DependentNormals(f"{l1} and {l2} are linearly dependent")
    return value


def mult3(l1, l2, l3) -> int:
    return abs(_det3(l1, l2, l3))


def _adjacent(f1: FacetData, f2: FacetData, n: int) -> bool:
    pts = f1.points & f2.points
    rec = f1.recession & f2.recession
    return bool(pts) and _affine_dim(pts, [_unit(n, k) for k in rec]) == 1


def order_facets_around_vertex(v: CompactFace, n: int = 3) -> list:
    """Cyclic order of the facets through a vertex (n = 3).

    Consecutive facets share an edge of the polyhedron.  The cycle starts at the
    lexicographically smallest normal and continues to its smaller neighbour.
    """
    if v.dim != 0:
        raise NotAVertex(f"face of dimension {v.dim} is not a vertex")
    facets = sorted(v.containing_facets, key=lambda g: g.normal)
    r = len(facets)
    if r < 3:
        raise BrokenFan(f"vertex {v.vertices} lies on only {r} facets")
    nbrs = {
        g.normal: [h for h in facets if h is not g and _adjacent(g, h, n)] for g in facets
    }
    if any(len(x) != 2 for x in nbrs.values()):
        raise BrokenFan(f"facets around {v.vertices} do not form a cycle")
    start = facets[0]
    second = min(nbrs[start.normal], key=lambda g: g.normal)
    cycle = [start, second]
    while len(cycle) < r:
        prev, cur = cycle[-2], cycle[-1]
        nxt = next(g for g in nbrs[cur.normal] if g is not prev)
        if nxt is start:
            break
        cycle.append(nxt)
    closes = start in nbrs[cycle[-1].normal]
    if len(cycle) != r or not closes:
        raise BrokenFan(f"facets around {v.vertices} form more than one cycle")
    return cycle
