"""Finite generalized continued fractions ``f_0 + e_1/(f_1 + e_2/(f_2 + ...))``.

The convergents follow ``E_k = f_k E_{k-1} + e_k E_{k-2}`` (and likewise for
F) with ``E_{-1} = 1, F_{-1} = 0, E_0 = f_0, F_0 = 1``. Entries may be
Fractions or polynomials; nothing here divides except :meth:`ratio`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactnum import format_rat
from .exponents import closed_forms_paper, mnuv
from .nsystem import Params
from .polyring import Poly, constant_term

STANDARD = "standard"
PRINTED = "printed"  # E_{k+1} = e_{k+1} E_k + f_{k+1} E_{k-1}, roles swapped


@dataclass(frozen=True)
class CFData:
    e: tuple  # e_1 .. e_m
    f: tuple  # f_0 .. f_m

    def __post_init__(self):
        if len(self.f) != len(self.e) + 1:
            raise ValueError("need exactly one more partial denominator than numerators")

    @property
    def depth(self) -> int:
        return len(self.e)


@dataclass(frozen=True)
class ConvergentSeq:
    E: tuple  # E_{-1}, E_0, ..., E_m
    F: tuple

    def numerator(self, k: int):
        return self.E[k + 1]

    def denominator(self, k: int):
        return self.F[k + 1]

    def ratio(self, k: int | None = None):
        k = len(self.E) - 2 if k is None else k
        den = self.denominator(k)
        if den == 0:
            raise ZeroDivisionError(f"convergent {k} has zero denominator")
        return self.numerator(k) / den


def convergents(d: CFData, recurrence: str = STANDARD) -> ConvergentSeq:
    E = [1, d.f[0]]
    F = [0, 1]
    for k in range(1, d.depth + 1):
        e, f = d.e[k - 1], d.f[k]
        if recurrence == STANDARD:
            E.append(f * E[-1] + e * E[-2])
            F.append(f * F[-1] + e * F[-2])
        elif recurrence == PRINTED:
            E.append(e * E[-1] + f * E[-2])
            F.append(e * F[-1] + f * F[-2])
        else:
            raise ValueError(f"unknown recurrence {recurrence!r}")
    return ConvergentSeq(tuple(E), tuple(F))


def nested_value(d: CFData):
    """Evaluate the fraction from the bottom up."""
    x = d.f[-1]
    for k in range(d.depth, 0, -1):
        x = d.f[k - 1] + d.e[k - 1] / x
    return x


def cf_inputs(p: Params, specialize_c: bool = True) -> CFData:
    """Partial numerators W_k (at C = 1) and denominators What_{k+1} - 1, V_1."""
    n = p.n
    if specialize_c:
        p = Params(n, p.A, p.B, Fraction(1), p.D)
    table = closed_forms_paper(p)
    e = tuple(table.ordinary[k] for k in range(1, n - 1))
    f = tuple(table.uniform[k + 1] - 1 for k in range(n - 2)) + ((1 - 2 * p.a(2)) / p.a(2),)
    return CFData(e, f)


def symbolic_inputs(m: int) -> CFData:
    """Plain indeterminates e_1..e_m and f_0..f_m."""
    return CFData(tuple(Poly.var(f"e_{k}") for k in range(1, m + 1)),
                  tuple(Poly.var(f"f_{k}") for k in range(m + 1)))


def exponent_inputs(n: int) -> CFData:
    """The fraction written in exponent variables W_k, What_k and V_1."""
    e = tuple(Poly.var(f"W_{k}") for k in range(1, n - 1))
    f = tuple(Poly.var(f"What_{k + 1}") - 1 for k in range(n - 2)) + (Poly.var("V_1"),)
    return CFData(e, f)


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class CFCheck:
    name: str
    lhs: Any
    rhs: Any

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        def s(x):
            if isinstance(x, bool):
                return str(x).lower()
            return format_rat(x) if isinstance(x, (int, Fraction)) else str(x)
        return {"name": self.name, "lhs": s(self.lhs), "rhs": s(self.rhs), "pass": self.passed}


@dataclass
class CFReport:
    name: str
    checks: list[CFCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def cf_identity_check(p: Params, specialize_c: bool = True) -> CFReport:
    """Final convergent against the closed-form What_0 = V_{n-1}, all at C = 1."""
    n = p.n
    rep = CFReport(f"cf_identity n={n}" + ("" if specialize_c else " (C not specialized)"))
    data = cf_inputs(p, specialize_c)
    seq = convergents(data)
    at_one = Params(n, p.A, p.B, Fraction(1), p.D)
    table = closed_forms_paper(at_one)
    rep.checks.append(CFCheck(f"E_{n - 2}/F_{n - 2} = What_0", seq.ratio(), table.uniform[0]))
    rep.checks.append(CFCheck("recurrence ratio = nested evaluation", seq.ratio(), nested_value(data)))
    q = mnuv(p)
    rep.checks.append(CFCheck(f"What_0 = V_{n - 1}", table.uniform[0], q.V[n - 1]))
    for k in range(2, n):
        rep.checks.append(CFCheck(
            f"V_{k} = What_{n - k} - 1 + U_{k}/V_{k - 1}",
            q.V[k], table.uniform[n - k] - 1 + q.U[k] / q.V[k - 1]))
    return rep


def constant_term_check(n: int, recurrence: str = STANDARD) -> CFReport:
    """Constant terms of E_{n-2}, F_{n-2} in the partial numerators."""
    m = n - 2
    rep = CFReport(f"constant_terms n={n} ({recurrence})")

    sym = symbolic_inputs(m)
    seq = convergents(sym, recurrence)
    e_names = [f"e_{k}" for k in range(1, m + 1)]
    prod_all, prod_tail = Poly.const(1), Poly.const(1)
    for k, fk in enumerate(sym.f):
        prod_all = prod_all * fk
        if k >= 1:
            prod_tail = prod_tail * fk
    rep.checks.append(CFCheck(f"const E_{m} = prod f_0..f_{m}",
                              constant_term(seq.numerator(m), e_names), prod_all))
    rep.checks.append(CFCheck(f"const F_{m} = prod f_1..f_{m}",
                              constant_term(seq.denominator(m), e_names), prod_tail))

    ex = convergents(exponent_inputs(n), recurrence)
    E, F = ex.numerator(m), ex.denominator(m)
    rep.checks.append(CFCheck("E, F free of What_0",
                              "What_0" in (E.variables() | F.variables()), False))
    w_names = [f"W_{k}" for k in range(n - 1)]
    w0hat = Poly.var("What_0")
    expected = (w0hat - Poly.var("What_1") + 1) * Poly.var("V_1")
    for k in range(1, n - 2):
        expected = expected * (Poly.var(f"What_{k + 1}") - 1)
    rep.checks.append(CFCheck("const(F*What_0 - E) factorization",
                              constant_term(F * w0hat - E, w_names), expected))
    return rep


def symbolic_identity(n: int) -> CFCheck:
    """E/F of the exponent-variable fraction equals the nested form, as rational functions."""
    data = exponent_inputs(n)
    return CFCheck("symbolic ratio = nested", convergents(data).ratio(), nested_value(data))

