"""The 2n exponents of a system, computed two ways.

``trajectory_exponents`` reads the extrema of ``S_k(q)/q`` (with
``S_k = P_1 + ... + P_k``) off the breakpoints of the geometry. This is the
ground truth. ``closed_forms_paper`` evaluates the published rational
formulas verbatim, and :func:`compare` lines the two up entry by entry.

Indexing: ``uniform[d]`` is What_d and ``ordinary[d]`` is W_d, with
``d = n - k``.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactnum import Rat, format_rat
from .nsystem import (HALF, Params, SystemGeometry, build_geometry, telescope,
                      validate_params)
from .report import Report

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Attainment:
    label: str
    q: Rat
    strict: bool  # no other division point in [1, C) ties the extremum


@dataclass(frozen=True)
class ExponentTuple:
    n: int
    uniform: tuple
    ordinary: tuple
    uniform_at: tuple[Attainment, ...] | None = None
    ordinary_at: tuple[Attainment, ...] | None = None

    def names(self) -> list[str]:
        return ([f"What_{d}" for d in range(self.n)]
                + [f"W_{d}" for d in range(self.n)])

    def values(self) -> list:
        return [*self.uniform, *self.ordinary]

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "uniform": [format_rat(x) for x in self.uniform],
            "ordinary": [format_rat(x) for x in self.ordinary],
        }
        if self.uniform_at is not None:
            out["uniform_at"] = [_att_json(a) for a in self.uniform_at]
            out["ordinary_at"] = [_att_json(a) for a in self.ordinary_at]
        return out


def _att_json(a: Attainment) -> dict:
    return {"label": a.label, "q": format_rat(a.q), "strict": a.strict}


def _partial_sum(values: Sequence, k: int):
    s = values[0]
    for v in values[1:k]:
        s = s + v
    return s


def _extremum(ratios: list, pick_max: bool) -> tuple[int, bool]:
    """Index of the extremum (first one on ties) and whether it is strict."""
    best = max(ratios) if pick_max else min(ratios)
    hits = [i for i, r in enumerate(ratios) if r == best]
    return hits[0], len(hits) == 1


def trajectory_exponents(g: SystemGeometry) -> ExponentTuple:
    """Exponents from the extrema of ``S_k(q)/q`` over the division points.

    Only ``[q_start, q_end)`` is scanned: the end point repeats the start
    point up to the factor C. The geometry may be a shifted copy.
    """
    n = g.n
    pts = g.breakpoints[:-1]
    uniform, ordinary = [None] * n, [None] * n
    u_at, o_at = [None] * n, [None] * n
    for k in range(1, n + 1):
        sums = [_partial_sum(bp.values, k) for bp in pts]
        ratios = [s / bp.q for s, bp in zip(sums, pts)]
        imax, smax = _extremum(ratios, True)
        imin, smin = _extremum(ratios, False)
        d = n - k
        for i, strict, store, at in ((imax, smax, uniform, u_at), (imin, smin, ordinary, o_at)):
            bp = pts[i]
            value = 1 / ratios[i] - 1
            rest = sum(bp.values[k:], Fraction(0))
            if rest / sums[i] != value:
                raise ArithmeticError(f"quotient cross-check failed at {bp.label}")
            store[d] = value
            at[d] = Attainment(bp.labels[0], bp.q, strict)
    return ExponentTuple(n, tuple(uniform), tuple(ordinary), tuple(u_at), tuple(o_at))


def branch_of(t: ExponentTuple) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Breakpoint labels where each exponent is attained (What_d, W_d order)."""
    return tuple(a.label for a in t.uniform_at), tuple(a.label for a in t.ordinary_at)


def branch_exponents(p: Params, branch) -> list:
    """Exponents as rational expressions of the parameters on a fixed branch.

    ``branch`` is the output of :func:`branch_of`. Works over any scalar type
    the construction accepts, which is how the certificates differentiate.
    """
    n = p.n
    by_label = {}
    for labels, q, vals, _, _ in telescope(p):
        for lab in labels:
            by_label[lab] = vals
    u_lab, o_lab = branch
    out = []
    for labs in (u_lab, o_lab):
        for d in range(n):
            k = n - d
            vals = by_label[labs[d]]
            rest = _partial_sum(vals[k:], n + 1 - k)
            out.append(rest / _partial_sum(vals, k))
    return out


def closed_forms_paper(p: Params) -> ExponentTuple:
    """The published closed-form table, evaluated as printed."""
    n = p.n
    A2 = p.a(2)

    def a_tail(upto):  # 2A_2 + A_3 + ... + A_upto
        s = 2 * A2
        for i in range(3, upto + 1):
            s = s + p.a(i)
        return s

    def b_sum(upto):  # B_2 + ... + B_upto
        s = 0 * A2
        for i in range(2, upto + 1):
            s = s + p.b(i)
        return s

    uniform = [None] * n
    ordinary = [None] * n
    uniform[n - 1] = 1 / A2 - 1
    uniform[0] = (1 - a_tail(n)) / (A2 + b_sum(n - 1))
    for k in range(2, n):
        uniform[n - k] = (1 - a_tail(k + 1) + p.b(k)) / (A2 + b_sum(k))
    for k in range(2, n + 1):
        ordinary[n - k] = p.C * (1 - a_tail(k)) / (A2 + b_sum(k))
    ordinary[n - 1] = (p.D + p.C * (1 - 2 * A2)) / A2
    return ExponentTuple(n, tuple(uniform), tuple(ordinary))


@dataclass(frozen=True)
class DerivedQuantities:
    M: dict  # k -> M_k, 2 <= k <= n+1
    N: dict  # k -> N_k, 1 <= k <= n
    U: dict  # k -> U_k, 2 <= k <= n
    V: dict  # k -> V_k, 1 <= k <= n-1

    def to_json(self) -> dict:
        return {name: {str(k): format_rat(v) for k, v in d.items()}
                for name, d in (("M", self.M), ("N", self.N), ("U", self.U), ("V", self.V))}


def mnuv(p: Params) -> DerivedQuantities:
    n = p.n
    M, N = {}, {}
    acc = p.a(1)
    for k in range(2, n + 2):
        acc = acc + p.a(k)
        M[k] = 1 - acc
    N[1] = p.a(1)
    for k in range(2, n + 1):
        N[k] = N[k - 1] + p.b(k)
    U = {k: M[k] / N[k] for k in range(2, n + 1)}
    V = {1: (1 - 2 * p.a(2)) / p.a(2)}
    for k in range(2, n):
        V[k] = M[k + 1] / N[k]
    return DerivedQuantities(M, N, U, V)


def hat_w0_trajectory_formula(p: Params):
    """What_0 of the figure's geometry, ``M_n / (N_{n-1} + M_n)``."""
    q = mnuv(p)
    return q.M[p.n] / (q.N[p.n - 1] + q.M[p.n])


# ---------------------------------------------------------------------------
# criterion and attainment


def criterion_lhs(g: SystemGeometry, k: int) -> Rat:
    """``S_k(delta_{k,1}) / delta_{k,1}``, compared against 1/2 to place the maximum."""
    if not 2 <= k <= g.n:
        raise ValueError(f"no such division point: delta({k},1) exists only for 2 <= k <= n")
    bp = g.find(f"delta({k},1)")
    return _partial_sum(bp.values, k) / bp.q


def _side(x: Rat) -> str:
    return ">" if x > HALF else "<" if x < HALF else "="


@dataclass(frozen=True)
class CriterionEntry:
    k: int
    lhs: Rat
    observed: str  # side of 1/2: ">", "<" or "="
    claimed: str   # the published pattern: ">" for k <= n-1, "<" for k = n

    @property
    def agrees(self) -> bool:
        return self.observed == self.claimed

    def to_json(self) -> dict:
        return {"k": self.k, "lhs": format_rat(self.lhs), "observed": self.observed,
                "claimed": self.claimed, "agrees": self.agrees}


def criterion_report(g: SystemGeometry) -> list[CriterionEntry]:
    n = g.n
    out = []
    for k in range(2, n + 1):
        lhs = criterion_lhs(g, k)
        out.append(CriterionEntry(k, lhs, _side(lhs), ">" if k <= n - 1 else "<"))
    return out


def check_attainment(g: SystemGeometry, t: ExponentTuple) -> Report:
    """Minimum of S_k/q at mu(k); maximum at start or delta(k,1|2) on the side
    of 1/2 given by the criterion."""
    rep = Report("check_attainment")
    n = g.n
    for k in range(1, n + 1):
        d = n - k
        if t.ordinary_at[d].label != f"mu({k})":
            rep.add("minimum at mu(k)", f"k={k}", f"found {t.ordinary_at[d].label}")
        where = t.uniform_at[d].label
        if k == 1:
            if where != "start":
                rep.add("maximum at q=1", "k=1", f"found {where}")
            continue
        expected = f"delta({k},1)" if criterion_lhs(g, k) >= HALF else f"delta({k},2)"
        if where != expected:
            rep.add("maximum matches criterion", f"k={k}", f"found {where}, expected {expected}")
    return rep


# ---------------------------------------------------------------------------
# comparison and chains


@dataclass(frozen=True)
class DiffEntry:
    name: str
    trajectory: Rat
    paper: Rat

    @property
    def equal(self) -> bool:
        return self.trajectory == self.paper


@dataclass(frozen=True)
class DiffReport:
    n: int
    entries: tuple[DiffEntry, ...]
    criteria: tuple[CriterionEntry, ...] = ()

    @property
    def mismatches(self) -> list[str]:
        return [e.name for e in self.entries if not e.equal]

    @property
    def n_equal(self) -> int:
        return sum(e.equal for e in self.entries)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [{"name": e.name, "trajectory": format_rat(e.trajectory),
                         "paper": format_rat(e.paper), "equal": e.equal}
                        for e in self.entries],
            "equal": self.n_equal,
            "differ": len(self.entries) - self.n_equal,
            "mismatches": self.mismatches,
            "criteria": [c.to_json() for c in self.criteria],
        }


def compare(t: ExponentTuple, c: ExponentTuple,
            criteria: Sequence[CriterionEntry] = ()) -> DiffReport:
    if t.n != c.n:
        raise ValueError(f"cannot compare tuples for n={t.n} and n={c.n}")
    entries = tuple(DiffEntry(name, a, b) for name, a, b in zip(t.names(), t.values(), c.values()))
    return DiffReport(t.n, entries, tuple(criteria))


def check_chains(t: ExponentTuple) -> Report:
    rep = Report("check_chains")
    n = t.n
    for d in range(n - 1):
        if t.uniform[d] > t.uniform[d + 1]:
            rep.add("What chain", f"d={d}", f"What_{d} > What_{d + 1}")
        if t.ordinary[d] > t.ordinary[d + 1]:
            rep.add("W chain", f"d={d}", f"W_{d} > W_{d + 1}")
    for d in range(n):
        if t.ordinary[d] < t.uniform[d]:
            rep.add("W ≥ Ŵ", f"d={d}",
                    f"W_{d} = {format_rat(t.ordinary[d])} < What_{d} = {format_rat(t.uniform[d])}")
        bound = Fraction(d + 1, n - d)
        if t.uniform[d] < bound:
            rep.add("Ŵ ≥ (d+1)/(n-d)", f"d={d}",
                    f"What_{d} = {format_rat(t.uniform[d])} < {format_rat(bound)}")
    return rep


# ---------------------------------------------------------------------------
# neighborhood sampling


class NeighborhoodTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Sample:
    index: int
    params: Params
    exponents: ExponentTuple


_GRID = 1 << 16


def perturbed(center: Params, radius: Rat, seed: int, index: int) -> Params:
    """Candidate ``index`` of the seeded stream; depends on (seed, index) only."""
    rng = np.random.default_rng([seed, index])
    steps = rng.integers(-_GRID, _GRID, size=2 * center.n, endpoint=True)
    free = [x + radius * Fraction(int(s), _GRID) for x, s in zip(center.free(), steps)]
    return Params.from_free(center.n, free)


def sample_neighborhood(center: Params, radius: Rat, count: int, seed: int,
                        max_attempts: int | None = None) -> list[Sample]:
    """Seeded rational perturbations of the free parameters within ``±radius``.

    Candidates that fail validation are skipped. Raises
    :class:`NeighborhoodTooLarge` if no candidate survives; if the attempt
    budget runs out with some survivors, the shorter list is returned.
    """
    radius = Fraction(radius)
    if count <= 0:
        return []
    if max_attempts is None:
        max_attempts = 50 * count + 100
    out = []
    for index in range(max_attempts):
        p = perturbed(center, radius, seed, index)
        if not validate_params(p).ok:
            continue
        t = trajectory_exponents(build_geometry(p))
        out.append(Sample(index, p, t))
        if len(out) == count:
            return out
    if not out:
        raise NeighborhoodTooLarge(
            f"neighborhood too large: no valid point in {max_attempts} attempts")
    log.warning("only %d of %d samples valid after %d attempts", len(out), count, max_attempts)
    return out


def csv_header(n: int) -> list[str]:
    return (["n", "seed", "index", "C"] + [f"A_{k}" for k in range(2, n + 1)] + ["D"]
            + [f"B_{k}" for k in range(2, n + 1)]
            + [f"What_{d}" for d in range(n)] + [f"W_{d}" for d in range(n)])


def samples_to_csv(n: int, seed: int, samples: Sequence[Sample]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_header(n))
    for s in samples:
        p = s.params
        row = [n, seed, s.index, p.C, *p.A[1:n], p.D, *p.B,
               *s.exponents.uniform, *s.exponents.ordinary]
        w.writerow([x if isinstance(x, int) else format_rat(x) for x in row])
    return buf.getvalue()
