"""Exact arithmetic: sparse polynomials over Q and factored rational functions in s.

Polynomials may carry the zeta variable ``s`` together with free parameters
(``a, b, i, j, k, r`` for the curve family).  A rational function whose
coefficients and denominator factors involve no parameter is said to be in
*numeric mode*; otherwise it is *symbolic* and no cancellation is attempted.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Union

from .errors import NotDivisible, ZetaError

Rational = Fraction

# canonical variable order; unknown names go after these, alphabetically
VAR_ORDER = ("s", "a", "b", "i", "j", "k", "r", "x", "y", "z")
_RANK = {v: n for n, v in enumerate(VAR_ORDER)}

Number = Union[int, Fraction]


def _var_key(name):
    return (_RANK.get(name, len(VAR_ORDER)), name)


def _ordered(names: Iterable[str]) -> tuple:
    return tuple(sorted(set(names), key=_var_key))


class Poly:
    """Immutable sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    Fractions.  Polynomials over different variable sets are aligned
    automatically by every binary operation.
    """

    __slots__ = ("vars", "terms", "_key")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"repeated variable in {vars}")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars) or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps} for {vars}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.vars = vars
        self.terms = {e: c for e, c in clean.items() if c}
        self._key = None

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._key = None
        return p

    @classmethod
    def const(cls, c: Number) -> "Poly":
        c = Fraction(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def used_vars(self) -> tuple:
        used = set()
        for exps in self.terms:
            used.update(v for v, e in zip(self.vars, exps) if e)
        return _ordered(used)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        if name not in self.vars:
            return 0
        idx = self.vars.index(name)
        return max(e[idx] for e in self.terms)

    def key(self):
        """Hashable canonical form, independent of unused variables."""
        if self._key is None:
            self._key = frozenset(
                (tuple((v, e) for v, e in zip(self.vars, exps) if e), c)
                for exps, c in self.terms.items()
            )
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        return self.key() == other.key()

    def __bool__(self):
        return bool(self.terms)

    # -- alignment ----------------------------------------------------------

    def with_vars(self, vars: tuple) -> "Poly":
        if vars == self.vars:
            return self
        pos = {v: n for n, v in enumerate(vars)}
        idx = []
        for v in self.vars:
            if v in pos:
                idx.append(pos[v])
            else:
                idx.append(None)
        out = {}
        width = len(vars)
        for exps, c in self.terms.items():
            new = [0] * width
            for src, dst in enumerate(idx):
                if dst is None:
                    if exps[src]:
                        raise ValueError(f"variable {self.vars[src]} dropped but used")
                    continue
                new[dst] = exps[src]
            out[tuple(new)] = c
        return Poly._raw(vars, out)

    def _align(self, other: "Poly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = _ordered(self.vars + other.vars)
        return vars, self.with_vars(vars).terms, other.with_vars(vars).terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        vars, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly._raw(self.vars, {})
            return Poly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        vars, a, b = self._align(other)
        out = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Poly._raw(vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- evaluation and substitution ---------------------------------------

    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Substitute numbers or polynomials for variables."""
        mapping = {k: Poly.coerce(v) for k, v in mapping.items() if k in self.vars}
        if not mapping:
            return self
        keep = tuple(v for v in self.vars if v not in mapping)
        keep_idx = [self.vars.index(v) for v in keep]
        sub_idx = [(self.vars.index(v), p) for v, p in mapping.items()]
        powers = {}
        result = Poly.const(0)
        for exps, c in self.terms.items():
            mono = Poly._raw(keep, {tuple(exps[n] for n in keep_idx): c})
            for n, p in sub_idx:
                e = exps[n]
                if e:
                    pw = powers.get((n, e))
                    if pw is None:
                        pw = powers[(n, e)] = p ** e
                    mono = mono * pw
            result = result + mono
        return result

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        p = self.subs(values)
        if not p.is_constant():
            raise ValueError(f"variables {p.used_vars()} left unassigned")
        return p.constant_value()

    def coeffs_in(self, name: str) -> dict:
        """View as a polynomial in ``name``: {exponent: coefficient Poly}."""
        if name not in self.vars:
            return {0: self} if self.terms else {}
        idx = self.vars.index(name)
        rest = self.vars[:idx] + self.vars[idx + 1:]
        groups = {}
        for exps, c in self.terms.items():
            groups.setdefault(exps[idx], {})[exps[:idx] + exps[idx + 1:]] = c
        return {k: Poly._raw(rest, t) for k, t in groups.items()}

    @classmethod
    def from_coeffs(cls, name: str, coeffs: Mapping[int, "Poly"]) -> "Poly":
        coeffs = {k: Poly.coerce(c) for k, c in coeffs.items() if c}
        if not coeffs:
            return cls.const(0)
        rest = _ordered(v for c in coeffs.values() for v in c.vars if v != name)
        vars = _ordered(rest + (name,))
        idx = vars.index(name)
        out = {}
        for k, c in coeffs.items():
            for exps, v in c.with_vars(rest).terms.items():
                out[exps[:idx] + (k,) + exps[idx:]] = v
        return cls._raw(vars, out)

    def exact_div(self, other: "Poly") -> "Poly":
        """Exact quotient self/other; raises NotDivisible if other does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        vars, num, den = self._align(other)
        if other.is_constant():
            c = other.constant_value()
            return Poly._raw(vars, {e: v / c for e, v in num.items()})
        lead_e = max(den)
        lead_c = den[lead_e]
        rem = dict(num)
        quot = {}
        while rem:
            e = max(rem)
            diff = tuple(x - y for x, y in zip(e, lead_e))
            if min(diff) < 0:
                raise NotDivisible(f"{other} does not divide {self}")
            q = rem[e] / lead_c
            quot[diff] = q
            for de, dc in den.items():
                t = tuple(x + y for x, y in zip(de, diff))
                v = rem.get(t, 0) - q * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly._raw(vars, quot)

    # -- printing -----------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        order = _ordered(self.vars)
        p = self.with_vars(order)
        return p.vars, sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        vars, items = self.sorted_terms()
        parts = []
        for exps, c in items:
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(vars, exps) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"Poly({str(self)!r})"


S = Poly.var("s")


def as_poly(x) -> Poly:
    return Poly.coerce(x)


@dataclass(frozen=True)
class LinearFactor:
    """The factor N*s + nu with N, nu free of s."""

    N: Poly
    nu: Poly

    def __post_init__(self):
        object.__setattr__(self, "N", Poly.coerce(self.N))
        object.__setattr__(self, "nu", Poly.coerce(self.nu))
        if "s" in self.N.used_vars() or "s" in self.nu.used_vars():
            raise ValueError("factor coefficients must not involve s")

    def __eq__(self, other):
        if not isinstance(other, LinearFactor):
            return NotImplemented
        return self.N == other.N and self.nu == other.nu

    def __hash__(self):
        return hash((self.N.key(), self.nu.key()))

    def is_numeric(self) -> bool:
        return self.N.is_constant() and self.nu.is_constant()

    def is_identity(self) -> bool:
        return self.N.is_zero() and self.nu == 1

    def as_poly(self) -> Poly:
        return self.N * S + self.nu

    def pole(self) -> Fraction:
        N = self.N.constant_value()
        if not N:
            raise ZetaError(f"factor {self} has no pole")
        return -self.nu.constant_value() / N

    def subs(self, mapping) -> "LinearFactor":
        return LinearFactor(self.N.subs(mapping), self.nu.subs(mapping))

    def normalized(self):
        """Numeric factors only: (scale, primitive factor or None) with
        1/(N s + nu) == scale / (N' s + nu'), N' > 0 or the factor trivial."""
        N, nu = self.N.constant_value(), self.nu.constant_value()
        if not N and not nu:
            raise ZeroDivisionError("zero denominator factor")
        L = lcm(N.denominator, nu.denominator)
        Ni, nui = int(N * L), int(nu * L)
        g = gcd(Ni, nui)
        if Ni < 0 or (Ni == 0 and nui < 0):
            g = -g
        Ni, nui = Ni // g, nui // g
        scale = Fraction(L, g)
        if Ni == 0:
            return scale, None
        return scale, LinearFactor(Poly.const(Ni), Poly.const(nui))

    def sort_key(self):
        if self.is_numeric():
            return (0, self.N.constant_value(), self.nu.constant_value(), "")
        return (1, 0, 0, f"{self.N}|{self.nu}")

    def __str__(self):
        if self.is_numeric():
            N, nu = self.N.constant_value(), self.nu.constant_value()
            if not N:
                return str(nu)
            head = "s" if N == 1 else f"{N}*s"
            if not nu:
                return head
            return f"{head}{'+' if nu > 0 else '-'}{abs(nu)}"
        N = str(self.N)
        if len(self.N.terms) > 1:
            N = f"({N})"
        return f"{N}*s+{self.nu}" if len(self.nu.terms) <= 1 else f"{N}*s+({self.nu})"

    def __repr__(self):
        return f"LinearFactor({self})"


def lf(N, nu) -> LinearFactor:
    return LinearFactor(Poly.coerce(N), Poly.coerce(nu))


@dataclass(frozen=True)
class ZetaTerm:
    """coefficient * s**s_power / prod(denominator)."""

    coefficient: Poly
    s_power: int = 0
    denominator: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Poly.coerce(self.coefficient))
        object.__setattr__(
            self, "denominator", tuple(f for f in self.denominator if not f.is_identity())
        )
        if self.s_power not in (0, 1):
            raise ValueError("s_power must be 0 or 1")

    def is_numeric(self) -> bool:
        return set(self.coefficient.used_vars()) <= {"s"} and all(
            f.is_numeric() for f in self.denominator
        )

    def numerator(self) -> Poly:
        return self.coefficient * S if self.s_power else self.coefficient

    def subs(self, mapping) -> "ZetaTerm":
        return ZetaTerm(
            self.coefficient.subs(mapping),
            self.s_power,
            tuple(f.subs(mapping) for f in self.denominator),
        )

    def __str__(self):
        num = str(self.coefficient)
        if len(self.coefficient.terms) > 1:
            num = f"({num})"
        if self.s_power:
            num = "s" if num == "1" else ("-s" if num == "-1" else f"{num}*s")
        if not self.denominator:
            return num
        return num + "/" + "/".join(f"({f})" for f in self.denominator)


@dataclass(frozen=True)
class ZetaExpr:
    """Formal sum of ZetaTerms.  ``certification`` records the Newton
    nondegeneracy status of the polynomial it came from, when known."""

    terms: tuple = ()
    certification: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __add__(self, other):
        if not isinstance(other, ZetaExpr):
            return NotImplemented
        return ZetaExpr(self.terms + other.terms)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def scaled(self, c) -> "ZetaExpr":
        c = Poly.coerce(c)
        return ZetaExpr(
            [ZetaTerm(t.coefficient * c, t.s_power, t.denominator) for t in self.terms],
            self.certification,
        )

    def is_numeric(self) -> bool:
        return all(t.is_numeric() for t in self.terms)

    def subs(self, mapping) -> "ZetaExpr":
        return ZetaExpr([t.subs(mapping) for t in self.terms], self.certification)

    def __str__(self):
        if not self.terms:
            return "0"
        out = str(self.terms[0])
        for t in self.terms[1:]:
            txt = str(t)
            out += f" - {txt[1:]}" if txt.startswith("-") else f" + {txt}"
        return out


@dataclass(frozen=True)
class RatFunc:
    """numerator / prod(factor**mult) with the denominator kept factored."""

    numerator: Poly
    denominator: tuple = ()  # sorted ((LinearFactor, multiplicity), ...)
    cleared: bool = False

    def factors(self):
        for f, m in self.denominator:
            for _ in range(m):
                yield f

    def is_numeric(self) -> bool:
        return set(self.numerator.used_vars()) <= {"s"} and all(
            f.is_numeric() for f, _ in self.denominator
        )

    def denominator_poly(self) -> Poly:
        return reduce(lambda acc, f: acc * f.as_poly(), self.factors(), Poly.const(1))

    def evaluate(self, s: Number) -> Fraction:
        val = self.numerator.evaluate({"s": s})
        for f in self.factors():
            val /= f.as_poly().evaluate({"s": s})
        return val

    def monic(self) -> "RatFunc":
        """Numeric mode: rescale so every denominator factor is s + nu/N."""
        num = self.numerator
        dens = []
        for f, m in self.denominator:
            N = f.N.constant_value()
            num = num * (Fraction(1) / N) ** m
            dens.append((LinearFactor(Poly.const(1), Poly.const(f.nu.constant_value() / N)), m))
        return RatFunc(num, tuple(dens), self.cleared)

    def __str__(self):
        num = str(self.numerator)
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        if not self.denominator:
            return num
        parts = [f"({f})" + (f"^{m}" if m > 1 else "") for f, m in self.denominator]
        den = parts[0] if len(parts) == 1 else "(" + "*".join(parts) + ")"
        return f"{num}/{den}"


NormalizedRatFunc = RatFunc


def _sorted_counter(counter: Counter) -> tuple:
    return tuple(
        sorted(((f, m) for f, m in counter.items() if m > 0), key=lambda fm: fm[0].sort_key())
    )


def _term_parts(term: ZetaTerm, numeric: bool):
    """Coefficient polynomial and factor multiset, numeric factors made primitive."""
    num = term.numerator()
    dens = Counter()
    for f in term.denominator:
        if numeric:
            scale, f = f.normalized()
            num = num * scale
            if f is None:
                continue
        dens[f] += 1
    return num, dens


def _combine_raw(z: ZetaExpr):
    numeric = z.is_numeric()
    parts = [_term_parts(t, numeric) for t in z.terms]
    common = Counter()
    for _, dens in parts:
        for f, m in dens.items():
            common[f] = max(common[f], m)
    fpolys = {f: f.as_poly() for f in common}
    powers = {}

    def power(f, e):
        if (f, e) not in powers:
            powers[(f, e)] = fpolys[f] ** e
        return powers[(f, e)]

    numerator = Poly.const(0)
    for num, dens in parts:
        if num.is_zero():
            continue
        for f, m in common.items():
            missing = m - dens.get(f, 0)
            if missing:
                num = num * power(f, missing)
        numerator = numerator + num
    return numerator, common, numeric


def _divide_linear(p: Poly, N: Poly, nu: Poly) -> Poly:
    """Exact quotient p / (N s + nu) in s with coefficients polynomial in parameters."""
    if N.is_zero():
        raise ZetaError("divisor must have nonzero s-coefficient")
    if p.is_zero():
        return p
    coeffs = p.coeffs_in("s")
    top = max(coeffs)
    zero = Poly.const(0)
    if top == 0:
        raise NotDivisible("nonzero polynomial of degree 0 in s")
    q = {}
    if nu.is_constant() and nu:
        c = nu.constant_value()
        prev = zero
        for k in range(top):
            q[k] = (coeffs.get(k, zero) - N * prev) * (1 / c)
            prev = q[k]
        if coeffs[top] != N * prev:
            raise NotDivisible(f"nonzero remainder dividing by ({N})*s+{nu}")
    else:
        if N.is_constant():
            inv = 1 / N.constant_value()
            div = lambda x: x * inv  # noqa: E731
        else:
            div = lambda x: x.exact_div(N)  # noqa: E731
        prev = zero
        for k in range(top, 0, -1):
            q[k - 1] = div(coeffs.get(k, zero) - nu * prev)
            prev = q[k - 1]
        if coeffs.get(0, zero) != nu * prev:
            raise NotDivisible(f"nonzero remainder dividing by ({N})*s+({nu})")
    return Poly.from_coeffs("s", q)


def _clear(numerator: Poly, common: Counter):
    common = Counter(common)
    if numerator.is_zero():
        return numerator, Counter()
    for f in sorted(common, key=LinearFactor.sort_key):
        while common[f] > 0:
            try:
                numerator = _divide_linear(numerator, f.N, f.nu)
            except NotDivisible:
                break
            common[f] -= 1
    return numerator, common


def zeta_combine(z: ZetaExpr) -> RatFunc:
    """Bring every term over the least common multiset of denominator factors.

    Numeric expressions have common linear factors cancelled; symbolic ones
    are left as they are (``cleared`` False).
    """
    numerator, common, numeric = _combine_raw(z)
    if numeric:
        numerator, common = _clear(numerator, common)
    return RatFunc(numerator, _sorted_counter(common), cleared=numeric)


def _as_parts(x):
    if isinstance(x, ZetaExpr):
        num, common, _ = _combine_raw(x)
        return num, common
    if isinstance(x, RatFunc):
        return x.numerator, Counter(dict(x.denominator))
    raise TypeError(f"expected ZetaExpr or RatFunc, got {type(x).__name__}")


def ratfunc_equal(x, y) -> bool:
    """Exact equality of rational functions by cross-multiplication."""
    nx, dx = _as_parts(x)
    ny, dy = _as_parts(y)
    only_x = dx - dy
    only_y = dy - dx
    lhs = nx
    for f, m in only_y.items():
        lhs = lhs * f.as_poly() ** m
    rhs = ny
    for f, m in only_x.items():
        rhs = rhs * f.as_poly() ** m
    return lhs == rhs


def divide_by_linear(f: RatFunc, divisor: LinearFactor) -> RatFunc:
    """Divide the numerator of ``f`` exactly by N*s + nu (raises NotDivisible)."""
    q = _divide_linear(f.numerator, divisor.N, divisor.nu)
    return RatFunc(q, f.denominator, f.cleared)


@dataclass(frozen=True)
class Pole:
    value: Fraction
    order: int

    def __str__(self):
        return f"{self.value} (order {self.order})"


def vanishing_order(p: Poly, factor: LinearFactor) -> int:
    if p.is_zero():
        raise ZetaError("the zero polynomial vanishes to infinite order")
    order = 0
    while True:
        try:
            p = _divide_linear(p, factor.N, factor.nu)
        except NotDivisible:
            return order
        order += 1


def pole_table(f: RatFunc) -> list:
    """Poles of a numeric rational function with their orders, largest pole first."""
    if not f.is_numeric():
        raise ZetaError("pole_table needs a numeric rational function")
    if f.numerator.is_zero():
        return []
    mults = Counter()
    for fac, m in f.denominator:
        scale, prim = fac.normalized()
        if prim is not None:
            mults[prim] += m
    table = []
    for fac, m in mults.items():
        order = m - vanishing_order(f.numerator, fac)
        if order > 0:
            table.append(Pole(fac.pole(), order))
    table.sort(key=lambda p: p.value, reverse=True)
    return table
