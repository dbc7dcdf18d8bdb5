"""The 2n-parameter family of generalized (n+1)-systems.

A system is described on its fundamental interval ``[1, C]`` by a list of
breakpoints. Between two consecutive breakpoints exactly one "rising unit"
moves: either one component with slope 1, or two equal components with
slope 1/2 each. Breakpoint positions follow from the parameters because the
length of every interval equals the total rise on it.

Scalars are generic: the construction only adds, subtracts and multiplies,
so it runs unchanged over Fractions, :class:`~nsystems.exactnum.DualRat`
(for gradients) and :class:`~nsystems.polyring.Poly` (for symbolic checks).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .exactnum import DualRat, Rat, as_rat, format_rat, parse_rat
from .polyring import Poly
from .report import Report

HALF = Fraction(1, 2)


class UnsupportedDimension(ValueError):
    pass


class InvalidParams(ValueError):
    def __init__(self, report: Report):
        self.report = report
        msg = "; ".join(str(v) for v in report.violations)
        super().__init__(f"invalid parameters: {msg}")


class GeometryError(RuntimeError):
    """The construction produced something that is not a valid system."""


def free_names(n: int) -> list[str]:
    """Names of the 2n free parameters, in Jacobian column order."""
    return ([f"A_{k}" for k in range(2, n + 1)]
            + [f"B_{k}" for k in range(2, n + 1)]
            + ["C", "D"])


@dataclass(frozen=True)
class Params:
    """Parameter point. ``A`` holds A_1..A_{n+1} and ``B`` holds B_2..B_n."""

    n: int
    A: tuple
    B: tuple
    C: Any
    D: Any

    def __post_init__(self):
        if len(self.A) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} values for A, got {len(self.A)}")
        if len(self.B) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} values for B, got {len(self.B)}")

    def a(self, k: int):
        return self.A[k - 1]

    def b(self, k: int):
        return self.B[k - 2]

    @classmethod
    def from_free(cls, n: int, free: Sequence) -> "Params":
        """Build from (A_2..A_n, B_2..B_n, C, D); A_1 and A_{n+1} are derived."""
        if len(free) != 2 * n:
            raise ValueError(f"expected {2 * n} free parameters, got {len(free)}")
        a_mid = list(free[: n - 1])
        b = tuple(free[n - 1: 2 * n - 2])
        c, d = free[2 * n - 2], free[2 * n - 1]
        a_last = 1 - a_mid[0]
        for x in a_mid:
            a_last = a_last - x
        return cls(n, (a_mid[0], *a_mid, a_last), b, c, d)

    def free(self) -> tuple:
        return (*self.A[1:self.n], *self.B, self.C, self.D)

    def lift_dual(self) -> "Params":
        size = 2 * self.n
        free = [DualRat.variable(x, i, size) for i, x in enumerate(self.free())]
        return Params.from_free(self.n, free)

    @classmethod
    def symbolic(cls, n: int) -> "Params":
        return cls.from_free(n, [Poly.var(name) for name in free_names(n)])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "C": format_rat(self.C),
            "A": [format_rat(x) for x in self.A],
            "B": [format_rat(x) for x in self.B],
            "D": format_rat(self.D),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Params":
        """Parse the parameter-file format.

        ``A`` may list all of A_1..A_{n+1}, or only the free A_2..A_n.
        """
        n = int(obj["n"])
        if n < 3:
            raise UnsupportedDimension(f"unsupported dimension n={n} (need n >= 3)")
        a = [_rat_field(x) for x in obj["A"]]
        b = [_rat_field(x) for x in obj["B"]]
        c, d = _rat_field(obj["C"]), _rat_field(obj["D"])
        if len(a) == n - 1:
            return cls.from_free(n, [*a, *b, c, d])
        return cls(n, tuple(a), tuple(b), c, d)


def _rat_field(x) -> Rat:
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise ValueError(f"rationals must be given as \"p/q\" strings or integers, got {x!r}")


def canonical_params(n: int) -> Params:
    if n < 3:
        raise UnsupportedDimension(f"unsupported dimension n={n} (need n >= 3)")
    two = Fraction(2)
    a = [two ** -n, two ** -n] + [two ** (-n + k - 2) for k in range(3, n + 2)]
    b = [Fraction(5, 4) * two ** (-n + k - 1) for k in range(2, n + 1)]
    d = Fraction(11, 8) * two ** (-n + 1)
    return Params(n, tuple(a), tuple(b), Fraction(3), d)


def validate_params(p: Params) -> Report:
    """List every violated condition of the admissible parameter set."""
    n = p.n
    if n < 3:
        raise UnsupportedDimension(f"unsupported dimension n={n} (need n >= 3)")
    rep = Report("validate_params")

    def need(cond, name):
        if not cond:
            rep.add(name)

    for k in range(1, n + 2):
        need(p.a(k) > 0, f"A_{k} > 0")
    for k in range(2, n + 1):
        need(p.b(k) > 0, f"B_{k} > 0")
    need(p.C > 0, "C > 0")
    need(p.D > 0, "D > 0")
    need(p.a(1) == p.a(2), "A_1 = A_2")
    need(sum(p.A, Fraction(0)) == 1, "A_1 + ... + A_{n+1} = 1")
    for k in range(2, n + 1):
        need(p.a(k) < p.a(k + 1), f"A_{k} < A_{k + 1}")
    for k in range(2, n):
        need(p.b(k) < p.b(k + 1), f"B_{k} < B_{k + 1}")
    need(p.b(2) < p.D, "B_2 < D")
    need(p.D < p.C * p.a(2), "D < C·A_2")
    for k in range(2, n + 1):
        need(p.a(k + 1) < p.b(k), f"A_{k + 1} < B_{k}")
        if k + 2 <= n + 1:
            need(p.b(k) < p.a(k + 2), f"B_{k} < A_{k + 2}")
        need(p.b(k) < p.C * p.a(k), f"B_{k} < C·A_{k}")
    return rep


# ---------------------------------------------------------------------------
# Geometry


@dataclass(frozen=True)
class Breakpoint:
    q: Any
    values: tuple
    labels: tuple[str, ...]
    kind: str  # "ordinary" | "switch"

    @property
    def label(self) -> str:
        return "=".join(self.labels)


@dataclass(frozen=True)
class Interval:
    rising: tuple[int, ...]  # 1-based component ranks
    slope: Rat


@dataclass(frozen=True)
class SystemGeometry:
    params: Params
    breakpoints: tuple[Breakpoint, ...]
    intervals: tuple[Interval, ...]

    @property
    def n(self) -> int:
        return self.params.n

    def find(self, label: str) -> Breakpoint:
        for bp in self.breakpoints:
            if label in bp.labels:
                return bp
        raise KeyError(label)

    def index_of(self, label: str) -> int:
        for i, bp in enumerate(self.breakpoints):
            if label in bp.labels:
                return i
        raise KeyError(label)


def _kind(labels: Sequence[str], n: int) -> str:
    for lab in labels:
        if lab.startswith("mu("):
            k = int(lab[3:-1])
            if 1 <= k <= n:
                return "switch"
    return "ordinary"


def telescope(p: Params) -> list[tuple[tuple[str, ...], Any, tuple, tuple[int, ...], Rat]]:
    """Run the rise-equals-length construction without any checks.

    Returns ``(labels, q, values, rising ranks, slope)`` per breakpoint, where
    ``rising``/``slope`` describe the interval ending at that breakpoint
    (empty for the start point).
    """
    n, C = p.n, p.C
    vals = list(p.A)
    q = 1 + 0 * C  # same scalar type as the parameters
    out = [(("start",), q, tuple(vals), (), Fraction(0))]

    def rise(ranks, target, labels):
        nonlocal q
        step = target - vals[ranks[0] - 1]
        q = q + step * len(ranks)
        for r in ranks:
            vals[r - 1] = target
        slope = Fraction(1) if len(ranks) == 1 else HALF
        out.append((labels, q, tuple(vals), tuple(ranks), slope))

    rise((2,), p.a(3), ("delta(2,1)",))
    for k in range(2, n + 1):
        if k >= 3:
            rise((k,), p.a(k + 1), (f"delta({k},1)",))
        labels = (f"delta({k},2)",) if k < n else (f"delta({n},2)", f"mu({n + 1})")
        rise((k, k + 1), p.b(k), labels)
    rise((n + 1,), C * p.a(n + 1), (f"mu({n})",))
    for k in range(n, 2, -1):
        rise((k,), C * p.a(k), (f"mu({k - 1})",))
    rise((2,), p.D, ("mu(1)",))
    rise((1,), p.D, ("mu(0)",))
    rise((1, 2), C * p.a(2), ("end",))
    return out


def build_geometry(p: Params, check: bool = True) -> SystemGeometry:
    if check:
        rep = validate_params(p)
        if not rep.ok:
            raise InvalidParams(rep)
    steps = telescope(p)
    if steps[-1][1] != p.C:
        raise GeometryError(
            f"closure identity failed: construction ends at {steps[-1][1]}, not C = {p.C}")
    bps = tuple(Breakpoint(q, vals, labels, _kind(labels, p.n))
                for labels, q, vals, _, _ in steps)
    ivs = tuple(Interval(r, s) for _, _, _, r, s in steps[1:])
    g = SystemGeometry(p, bps, ivs)
    if check:
        rep = check_axioms(g)
        if not rep.ok:
            raise GeometryError(f"axiom check failed: {rep.violations[0]}")
    return g


def expected_labels(n: int) -> list[str]:
    labs = ["start"]
    for k in range(2, n + 1):
        labs += [f"delta({k},1)", f"delta({k},2)"]
    labs += [f"mu({l})" for l in range(n + 1, -1, -1)]
    return labs + ["end"]


def check_axioms(g: SystemGeometry) -> Report:
    """Check every structural property of a geometry; violations are data."""
    rep = Report("check_axioms")
    p, n = g.params, g.n
    bps = g.breakpoints
    if not bps:
        rep.add("non-empty", detail="no breakpoints")
        return rep

    first, last = bps[0], bps[-1]
    if first.q != 1 or tuple(first.values) != tuple(p.A):
        rep.add("boundary values", first.label, "expected q = 1 and P(1) = A")
    if last.q != p.C or tuple(last.values) != tuple(p.C * a for a in p.A):
        rep.add("boundary values", last.label, "expected q = C and P(C) = C·A")

    for bp in bps:
        if len(bp.values) != n + 1:
            rep.add("component count", bp.label)
            continue
        if any(x > y for x, y in zip(bp.values, bp.values[1:])):
            rep.add("ordering", bp.label, "components not weakly increasing")
        if sum(bp.values, Fraction(0)) != bp.q:
            rep.add("sum identity", bp.label,
                    f"sum {format_rat(sum(bp.values, Fraction(0)))} != q {format_rat(bp.q)}")

    if len(g.intervals) != len(bps) - 1:
        rep.add("interval count", detail=f"{len(g.intervals)} intervals for {len(bps)} points")
    for bp0, bp1, iv in zip(bps, bps[1:], g.intervals):
        where = f"[{bp0.label}, {bp1.label}]"
        length = bp1.q - bp0.q
        if length <= 0:
            rep.add("increasing q", where)
            continue
        moved = tuple(j + 1 for j, (x, y) in enumerate(zip(bp0.values, bp1.values)) if x != y)
        if moved != tuple(sorted(iv.rising)):
            rep.add("single rising unit", where,
                    f"components {moved} move but {iv.rising} are marked rising")
        if len(iv.rising) == 1:
            if iv.slope != 1:
                rep.add("slope", where, "a single riser must have slope 1")
        elif len(iv.rising) == 2:
            i, j = (r - 1 for r in iv.rising)
            if iv.slope != HALF:
                rep.add("slope", where, "a coinciding pair must have slope 1/2")
            if bp0.values[i] != bp0.values[j] or bp1.values[i] != bp1.values[j]:
                rep.add("coinciding pair", where, "rising pair does not coincide")
        else:
            rep.add("single rising unit", where, f"{len(iv.rising)} risers")
        for r in iv.rising:
            if bp1.values[r - 1] - bp0.values[r - 1] != iv.slope * length:
                rep.add("slope", where, f"P_{r} rise does not match slope {iv.slope}")

    if len({bp.q for bp in bps}) != 3 * n + 1:
        rep.add("division point count",
                detail=f"{len({bp.q for bp in bps})} distinct points, expected {3 * n + 1}")
    seen = [lab for bp in bps for lab in bp.labels]
    if sorted(seen) != sorted(expected_labels(n)):
        rep.add("labels", detail="label set differs from the expected pattern")
    for bp in bps:
        if bp.kind != _kind(bp.labels, n):
            rep.add("switch labels", bp.label,
                    f"marked {bp.kind}, expected {_kind(bp.labels, n)}")
    return rep


# ---------------------------------------------------------------------------
# Evaluation


@dataclass(frozen=True)
class NSystem:
    geometry: SystemGeometry

    @classmethod
    def from_params(cls, p: Params) -> "NSystem":
        return cls(build_geometry(p))

    def __call__(self, q) -> tuple[Rat, ...]:
        return eval_system(self, q)


def eval_system(s: NSystem, q) -> tuple[Rat, ...]:
    """Value of the self-similar system at ``q >= 1``."""
    g = s.geometry
    q = as_rat(q)
    if q < 1:
        raise ValueError(f"outside domain: q = {q} < 1")
    C = g.params.C
    scale = Fraction(1)
    while q >= C:
        q /= C
        scale *= C
    bps = g.breakpoints
    qs = [bp.q for bp in bps]
    i = bisect_right(qs, q) - 1
    bp0, bp1 = bps[i], bps[i + 1]
    t = (q - bp0.q) / (bp1.q - bp0.q)
    return tuple(scale * (v0 + (v1 - v0) * t) for v0, v1 in zip(bp0.values, bp1.values))


def shift_geometry(g: SystemGeometry, m: int = 1) -> SystemGeometry:
    """The same system described on ``[C^m, C^{m+1}]``."""
    f = g.params.C ** m
    bps = tuple(Breakpoint(bp.q * f, tuple(v * f for v in bp.values), bp.labels, bp.kind)
                for bp in g.breakpoints)
    return SystemGeometry(g.params, bps, g.intervals)


# ---------------------------------------------------------------------------
# Graph export


@dataclass(frozen=True)
class Segment:
    component: int
    q0: Rat
    q1: Rat
    v0: Rat
    v1: Rat
    slope: Rat


@dataclass(frozen=True)
class DivisionPoint:
    q: Rat
    kind: str
    label: str


@dataclass(frozen=True)
class GraphData:
    n: int
    segments: tuple[Segment, ...]
    division_points: tuple[DivisionPoint, ...]

    def polyline(self, component: int) -> list[tuple[Rat, Rat]]:
        segs = [s for s in self.segments if s.component == component]
        if not segs:
            return []
        return [(segs[0].q0, segs[0].v0)] + [(s.q1, s.v1) for s in segs]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "segments": [
                {"component": s.component, "q0": format_rat(s.q0), "q1": format_rat(s.q1),
                 "v0": format_rat(s.v0), "v1": format_rat(s.v1), "slope": format_rat(s.slope)}
                for s in self.segments
            ],
            "division_points": [
                {"q": format_rat(d.q), "kind": d.kind, "label": d.label}
                for d in self.division_points
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GraphData":
        segs = tuple(Segment(int(s["component"]), parse_rat(s["q0"]), parse_rat(s["q1"]),
                             parse_rat(s["v0"]), parse_rat(s["v1"]), parse_rat(s["slope"]))
                     for s in obj["segments"])
        pts = tuple(DivisionPoint(parse_rat(d["q"]), d["kind"], d["label"])
                    for d in obj["division_points"])
        return cls(int(obj["n"]), segs, pts)


def export_graph(g: SystemGeometry) -> GraphData:
    segs = []
    for j in range(1, g.n + 2):
        for bp0, bp1, iv in zip(g.breakpoints, g.breakpoints[1:], g.intervals):
            slope = iv.slope if j in iv.rising else Fraction(0)
            segs.append(Segment(j, bp0.q, bp1.q, bp0.values[j - 1], bp1.values[j - 1], slope))
    pts = tuple(DivisionPoint(bp.q, bp.kind, bp.label) for bp in g.breakpoints)
    return GraphData(g.n, tuple(segs), pts)


def geometry_from_graph(data: GraphData) -> SystemGeometry:
    """Inverse of :func:`export_graph`; parameters are read off the graph."""
    n = data.n
    labels = [tuple(d.label.split("=")) for d in data.division_points]
    qs = [d.q for d in data.division_points]
    lines = [data.polyline(j) for j in range(1, n + 2)]
    values = [tuple(lines[j][i][1] for j in range(n + 1)) for i in range(len(qs))]

    def at(label):
        return next(v for v, labs in zip(values, labels) if label in labs)

    A = values[0]
    B = tuple(at(f"delta({k},2)")[k - 1] for k in range(2, n + 1))
    p = Params(n, A, B, qs[-1], at("mu(0)")[0])
    bps = tuple(Breakpoint(q, v, labs, d.kind)
                for q, v, labs, d in zip(qs, values, labels, data.division_points))
    ivs = []
    for i in range(len(qs) - 1):
        segs = [s for s in data.segments if s.q0 == qs[i] and s.slope != 0]
        ivs.append(Interval(tuple(s.component for s in segs),
                            segs[0].slope if segs else Fraction(0)))
    return SystemGeometry(p, bps, tuple(ivs))
