"""Exact scalar, dual-number and matrix arithmetic.

Every quantity in the package is a :class:`fractions.Fraction`. ``Rat`` is
an alias so signatures read naturally. Fractions are always held in lowest
terms with a positive denominator, which is exactly the canonical form the
rest of the code relies on for equality and hashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

Rat = Fraction


class PoleError(ZeroDivisionError):
    """Raised when an expression is evaluated at a zero of a denominator."""


def rat_make(p: int, q: int = 1) -> Rat:
    if q == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(p, q)


def as_rat(x) -> Rat:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rat(x: Rat) -> str:
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Rat:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return rat_make(int(p), int(q))
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# Forward-mode dual numbers


@dataclass(frozen=True)
class DualRat:
    """A value together with its exact gradient w.r.t. a fixed list of slots.

    Comparisons look at ``value`` only, so a DualRat can flow through code
    that branches on ordering (parameter validation, extremum scans).
    """

    value: Rat
    gradient: tuple[Rat, ...]

    @classmethod
    def constant(cls, value, size: int) -> "DualRat":
        return cls(as_rat(value), (Fraction(0),) * size)

    @classmethod
    def variable(cls, value, slot: int, size: int) -> "DualRat":
        grad = [Fraction(0)] * size
        grad[slot] = Fraction(1)
        return cls(as_rat(value), tuple(grad))

    def _lift(self, other) -> "DualRat":
        if isinstance(other, DualRat):
            if len(other.gradient) != len(self.gradient):
                raise ValueError("gradient sizes differ")
            return other
        if isinstance(other, (int, Fraction)):
            return DualRat.constant(other, len(self.gradient))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualRat(self.value + o.value,
                       tuple(a + b for a, b in zip(self.gradient, o.gradient)))

    __radd__ = __add__

    def __neg__(self):
        return DualRat(-self.value, tuple(-g for g in self.gradient))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualRat(
            self.value * o.value,
            tuple(self.value * gb + o.value * ga
                  for ga, gb in zip(self.gradient, o.gradient)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.value == 0:
            raise PoleError(f"division by zero: ({self.value}) / ({o.value})")
        inv2 = 1 / (o.value * o.value)
        return DualRat(
            self.value / o.value,
            tuple((ga * o.value - self.value * gb) * inv2
                  for ga, gb in zip(self.gradient, o.gradient)),
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def _cmp_value(self, other):
        return other.value if isinstance(other, DualRat) else other

    def __eq__(self, other):
        if isinstance(other, DualRat):
            return self.value == other.value and self.gradient == other.gradient
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.gradient))

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __repr__(self):
        grad = ", ".join(format_rat(g) for g in self.gradient)
        return f"DualRat({format_rat(self.value)}; [{grad}])"


def dual_eval(f: Callable, at, name: str | None = None) -> DualRat:
    """Evaluate ``f`` at a parameter point, returning value and exact gradient.

    ``at`` is a :class:`~nsystems.nsystem.Params`; the gradient is taken with
    respect to its free-parameter vector ``(A_2..A_n, B_2..B_n, C, D)``.
    ``f`` receives the same point with every scalar lifted to a DualRat.
    """
    lifted = at.lift_dual()
    try:
        out = f(lifted)
    except PoleError as exc:
        label = name or getattr(f, "__name__", repr(f))
        raise PoleError(f"pole while evaluating {label}: {exc}") from exc
    if not isinstance(out, DualRat):
        out = DualRat.constant(out, 2 * at.n)
    return out


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class RatMat:
    rows: int
    cols: int
    entries: tuple[Rat, ...]  # row-major

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RatMat":
        data = [[as_rat(x) for x in r] for r in rows]
        if not data:
            return cls(0, 0, ())
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), ncols, tuple(x for r in data for x in r))

    @classmethod
    def identity(cls, n: int) -> "RatMat":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Rat:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Rat, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Rat]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def select_rows(self, idx: Sequence[int]) -> "RatMat":
        return RatMat.from_rows([self.row(i) for i in idx])


def _integer_rows(m: RatMat) -> tuple[list[list[int]], Rat]:
    """Scale each row to integers; return the rows and the product of scales."""
    rows, scale = [], Fraction(1)
    for r in m.to_rows():
        s = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * s) for x in r])
        scale *= s
    return rows, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, sign of row swaps).

    Pivot is the first nonzero entry at or below the current row, so the
    elimination is deterministic.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    sign, prev, r = 1, 1, 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * p - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = p
        r += 1
    return r, sign


def mat_det(m: RatMat) -> Rat:
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    rank, sign = _bareiss(a)
    if rank < m.rows:
        return Fraction(0)
    return Fraction(sign * a[-1][-1]) / scale


def mat_rank(m: RatMat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    rank, _ = _bareiss(a)
    return rank
