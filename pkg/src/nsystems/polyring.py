"""Sparse multivariate polynomials and rational functions over Q.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
so polynomials over different variable sets combine without declaring a
common universe first. Rational functions are never reduced (no
multivariate gcd); equality is decided by cross-multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .exactnum import PoleError, Rat, as_rat, format_rat

Monomial = tuple  # tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

_SPLIT = re.compile(r"^(.*?)(\d*)$")


def var_key(name: str):
    """Sort ``x_2`` before ``x_10``."""
    stem, digits = _SPLIT.match(name).groups()
    return (stem, int(digits) if digits else -1, name)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: var_key(t[0])))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = as_rat(c)
            if c:
                m = tuple(sorted(((v, e) for v, e in m if e), key=lambda t: var_key(t[0])))
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self.terms: dict[Monomial, Rat] = clean

    # construction -----------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    # queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Rat:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(_mono_degree(m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def coefficient(self, monomial: Mapping[str, int]) -> Rat:
        key = tuple(sorted(((v, e) for v, e in monomial.items() if e),
                           key=lambda t: var_key(t[0])))
        return self.terms.get(key, Fraction(0))

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = Poly._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = Poly._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = Poly._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = Poly._coerce(other)
        if o is NotImplemented:
            return o
        out: dict[Monomial, Rat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(Poly.const(1), self ** -k)
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise PoleError("division by the zero constant")
            return self * (Fraction(1) / other)
        if isinstance(other, (Poly, RatFunc)):
            return RatFunc(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly.const(other), self)
        return NotImplemented

    def __eq__(self, other):
        o = Poly._coerce(other)
        if o is NotImplemented:
            if isinstance(other, RatFunc):
                return other == self
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # calculus and substitution ---------------------------------------------

    def diff(self, var: str) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if e:
                d[var] = e - 1
                out[tuple(d.items())] = c * e
        return Poly(out)

    def subs(self, bindings: Mapping[str, object]) -> "Poly":
        """Substitute scalars or polynomials for variables."""
        out = Poly()
        cache: dict[tuple[str, int], Poly] = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            rest = []
            for v, e in m:
                if v in bindings:
                    if (v, e) not in cache:
                        cache[(v, e)] = Poly._coerce(bindings[v]) ** e
                    term = term * cache[(v, e)]
                else:
                    rest.append((v, e))
            out = out + term * Poly({tuple(rest): 1})
        return out

    def evaluate(self, point: Mapping[str, Scalar]) -> Rat:
        missing = self.variables() - set(point)
        if missing:
            raise KeyError(f"unbound variables: {sorted(missing, key=var_key)}")
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= as_rat(point[v]) ** e
            total += t
        return total

    # printing ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Rat]]:
        """Terms in graded lexicographic order (highest first)."""
        names = sorted(self.variables(), key=var_key)

        def key(item):
            d = dict(item[0])
            return (-_mono_degree(item[0]), [-d.get(v, 0) for v in names])

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = format_rat(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rat(mag)}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self})"


class RatFunc:
    """Quotient of two polynomials. Not reduced; compared by cross-multiplying."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly._coerce(num)
        den = Poly.const(1) if den is None else Poly._coerce(den)
        if den.is_zero():
            raise PoleError("rational function with zero denominator")
        if den.is_constant():
            num, den = num / den.constant_value(), Poly.const(1)
        if num.is_zero():
            den = Poly.const(1)
        self.num: Poly = num
        self.den: Poly = den

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (Poly, int, Fraction)):
            return RatFunc(x)
        return NotImplemented

    def __add__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise PoleError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __eq__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None  # equality is not structural

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    def diff(self, var: str) -> "RatFunc":
        return RatFunc(self.num.diff(var) * self.den - self.num * self.den.diff(var),
                       self.den * self.den)

    def evaluate(self, point: Mapping[str, Scalar]) -> Rat:
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleError(f"denominator {self.den} vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    def __str__(self):
        if self.den == Poly.const(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def specialize(f, bindings: Mapping[str, object]):
    """Substitute values for some variables of a Poly or RatFunc."""
    if isinstance(f, Poly):
        return f.subs(bindings)
    num, den = f.num.subs(bindings), f.den.subs(bindings)
    if den.is_zero():
        raise PoleError(f"pole under specialization: denominator {f.den} vanishes")
    return RatFunc(num, den)


def constant_term(f: Poly, wrt: Iterable[str]) -> Poly:
    """Part of ``f`` free of every variable in ``wrt``."""
    wrt = set(wrt)
    return Poly({m: c for m, c in f.terms.items() if not any(v in wrt for v, _ in m)})


def variables(names: Iterable[str]) -> list[Poly]:
    return [Poly.var(v) for v in names]
