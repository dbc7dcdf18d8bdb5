"""Per-n certificates of algebraic independence via exact Jacobian rank.

In characteristic zero, rational functions are algebraically independent
iff their Jacobian has full rank somewhere. A nonzero determinant at one
parameter point is therefore a certificate for that dimension.

Two function sets are available. ``paper`` is the closed-form table.
``trajectory`` is the exponent of the actual geometry on the branch that
is active at the basepoint; that branch is only well defined when every
extremum is attained strictly, which is checked first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .exactnum import DualRat, RatMat, format_rat, mat_det, mat_rank
from .exponents import (branch_exponents, branch_of, closed_forms_paper, mnuv,
                        trajectory_exponents)
from .nsystem import InvalidParams, Params, build_geometry, free_names, validate_params
from .polyring import RatFunc

TRAJECTORY = "trajectory"
PAPER = "paper"
FUNCTION_SETS = (TRAJECTORY, PAPER)


class BranchNotStable(ValueError):
    pass


def _check_valid(p: Params) -> None:
    rep = validate_params(p)
    if not rep.ok:
        raise InvalidParams(rep)


def stability(p: Params) -> dict[str, bool]:
    """Whether each exponent's extremum is attained at a single division point."""
    t = trajectory_exponents(build_geometry(p))
    return {name: a.strict
            for name, a in zip(t.names(), [*t.uniform_at, *t.ordinary_at])}


def exponent_functions(function_set: str, p: Params) -> tuple[list[str], Callable]:
    """Row names and a map from a parameter point to the list of row values."""
    names = [f"What_{d}" for d in range(p.n)] + [f"W_{d}" for d in range(p.n)]
    if function_set == PAPER:
        return names, lambda q: closed_forms_paper(q).values()
    if function_set == TRAJECTORY:
        flags = stability(p)
        unstable = [k for k, ok in flags.items() if not ok]
        if unstable:
            raise BranchNotStable(f"branch not stable: tied extremum for {', '.join(unstable)}")
        branch = branch_of(trajectory_exponents(build_geometry(p)))
        return names, lambda q: branch_exponents(q, branch)
    raise ValueError(f"unknown function set {function_set!r}")


def jacobian_of(funcs: Callable, p: Params) -> RatMat:
    rows = funcs(p.lift_dual())
    size = 2 * p.n
    out = []
    for r in rows:
        if not isinstance(r, DualRat):
            r = DualRat.constant(r, size)
        out.append(r.gradient)
    return RatMat.from_rows(out)


def jacobian(function_set: str, p: Params) -> RatMat:
    """2n x 2n matrix of exact partials; columns follow :func:`free_names`."""
    _check_valid(p)
    _, funcs = exponent_functions(function_set, p)
    return jacobian_of(funcs, p)


def symbolic_jacobian(function_set: str, p: Params) -> RatMat:
    """Same matrix by differentiating rational functions in the polynomial ring.

    Independent of the dual-number route; used as a cross-check.
    """
    _check_valid(p)
    _, funcs = exponent_functions(function_set, p)
    sym = Params.symbolic(p.n)
    names = free_names(p.n)
    point = dict(zip(names, p.free()))
    rows = []
    for f in funcs(sym):
        f = f if isinstance(f, RatFunc) else RatFunc(f)
        rows.append([f.diff(v).evaluate(point) for v in names])
    return RatMat.from_rows(rows)


@dataclass
class Certificate:
    n: int
    basepoint: Params
    function_set: str
    rows: list[str]
    jacobian: RatMat
    determinant: object  # None for non-square sub-blocks
    rank: int
    stability: dict[str, bool] = field(default_factory=dict)

    @property
    def full_rank(self) -> bool:
        return self.rank == min(self.jacobian.rows, self.jacobian.cols)

    @property
    def verdict(self) -> str:
        return "independent" if self.rank == self.jacobian.rows else "dependent"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basepoint": self.basepoint.to_json(),
            "set": self.function_set,
            "rows": self.rows,
            "columns": free_names(self.n),
            "matrix": [[format_rat(x) for x in self.jacobian.row(i)]
                       for i in range(self.jacobian.rows)],
            "determinant": None if self.determinant is None else format_rat(self.determinant),
            "rank": self.rank,
            "stability": self.stability,
            "verdict": self.verdict,
        }


def certificate_for(p: Params, function_set: str, rows: Sequence[str],
                    funcs: Callable) -> Certificate:
    """Certificate for an arbitrary list of row functions."""
    jac = jacobian_of(funcs, p)
    det = mat_det(jac) if jac.rows == jac.cols else None
    flags = stability(p)
    return Certificate(p.n, p, function_set, list(rows), jac, det, mat_rank(jac), flags)


def independence_certificate(n: int, p: Params, function_set: str = TRAJECTORY) -> Certificate:
    if p.n != n:
        raise ValueError(f"parameters are for n={p.n}, not n={n}")
    _check_valid(p)
    names, funcs = exponent_functions(function_set, p)
    return certificate_for(p, function_set, names, funcs)


def uniform_block_certificate(n: int, p: Params, function_set: str = TRAJECTORY) -> Certificate:
    """Rank of the n x 2n block of the uniform exponents."""
    full = independence_certificate(n, p, function_set)
    block = full.jacobian.select_rows(range(n))
    return Certificate(n, p, function_set, full.rows[:n], block, None, mat_rank(block),
                       full.stability)


def specialization_functions(n: int) -> tuple[list[str], Callable]:
    """The functions obtained at C = 1, excluding What_0 = V_{n-1} itself:
    ``V_k + 1 - U_k/V_{k-1}`` for k = n-1..2, then U_n..U_2."""
    names = ([f"V_{k} + 1 - U_{k}/V_{k - 1}" for k in range(n - 1, 1, -1)]
             + [f"U_{k}" for k in range(n, 1, -1)])

    def funcs(q: Params):
        d = mnuv(q)
        return ([d.V[k] + 1 - d.U[k] / d.V[k - 1] for k in range(n - 1, 1, -1)]
                + [d.U[k] for k in range(n, 1, -1)])

    return names, funcs


@dataclass
class SpecializationReport:
    n: int
    rows: list[str]
    rank: int           # over all free parameters
    rank_fixed_a2: int  # A_2 column dropped, i.e. over Q(A_2)
    expected: int
    rank_with_v: int | None  # V_{n-1} added back, over Q(A_2)

    @property
    def ok(self) -> bool:
        ok = self.rank == self.expected and self.rank_fixed_a2 == self.expected
        if self.rank_with_v is not None:
            ok = ok and self.rank_with_v == self.expected
        return ok

    def to_json(self) -> dict:
        return {"n": self.n, "rows": self.rows, "rank": self.rank,
                "rank_fixed_A_2": self.rank_fixed_a2, "expected": self.expected,
                "rank_with_V_fixed_A_2": self.rank_with_v, "ok": self.ok}


def _drop_first_column(m: RatMat) -> RatMat:
    return RatMat.from_rows([r[1:] for r in m.to_rows()])


def specialization_rank_check(n: int, p: Params, drop: int | None = None) -> SpecializationReport:
    """Jacobian rank of the C = 1 functions; ``drop`` removes one row by index.

    Without ``drop`` the report also confirms that What_0 = V_{n-1} adds
    nothing over Q(A_2): it is a continued fraction in the other rows.
    """
    if p.n != n:
        raise ValueError(f"parameters are for n={p.n}, not n={n}")
    _check_valid(p)
    at_one = Params(n, p.A, p.B, 1, p.D)
    names, funcs = specialization_functions(n)
    keep = [i for i in range(len(names)) if i != drop]

    def chosen(q):
        vals = funcs(q)
        return [vals[i] for i in keep]

    jac = jacobian_of(chosen, at_one)
    rank_v = None
    if drop is None:
        jac_v = jacobian_of(lambda q: [mnuv(q).V[n - 1], *chosen(q)], at_one)
        rank_v = mat_rank(_drop_first_column(jac_v))
    return SpecializationReport(n, [names[i] for i in keep], mat_rank(jac),
                                mat_rank(_drop_first_column(jac)), len(keep), rank_v)
