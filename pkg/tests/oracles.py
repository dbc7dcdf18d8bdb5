"""Independent reference computations for the test suite.

Nothing here imports the code under test's algorithms: determinants by
cofactor expansion, the canonical n=3 system as a hand-derived table, and
exponents by brute-force sampling on a rational grid.
"""

from fractions import Fraction as F


def det_cofactor(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return F(1)
    if n == 1:
        return F(rows[0][0])
    total = F(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * F(rows[0][j]) * det_cofactor(minor)
    return total


def hilbert(n):
    return [[F(1, i + j + 1) for j in range(n)] for i in range(n)]


# Canonical n = 3 point (C = 3, A = (1/8, 1/8, 1/4, 1/2), B = (5/16, 5/8),
# D = 11/32), worked out by hand from the rise-equals-length rule and checked
# against sum(values) == q at every row.
CANONICAL3_TABLE = [
    (F(1), (F(1, 8), F(1, 8), F(1, 4), F(1, 2)), "start"),
    (F(9, 8), (F(1, 8), F(1, 4), F(1, 4), F(1, 2)), "delta(2,1)"),
    (F(5, 4), (F(1, 8), F(5, 16), F(5, 16), F(1, 2)), "delta(2,2)"),
    (F(23, 16), (F(1, 8), F(5, 16), F(1, 2), F(1, 2)), "delta(3,1)"),
    (F(27, 16), (F(1, 8), F(5, 16), F(5, 8), F(5, 8)), "delta(3,2)"),
    (F(41, 16), (F(1, 8), F(5, 16), F(5, 8), F(3, 2)), "mu(3)"),
    (F(43, 16), (F(1, 8), F(5, 16), F(3, 4), F(3, 2)), "mu(2)"),
    (F(87, 32), (F(1, 8), F(11, 32), F(3, 4), F(3, 2)), "mu(1)"),
    (F(47, 16), (F(11, 32), F(11, 32), F(3, 4), F(3, 2)), "mu(0)"),
    (F(3), (F(3, 8), F(3, 8), F(3, 4), F(3, 2)), "end"),
]


def interpolate_table(table, q):
    for (q0, v0, _), (q1, v1, _) in zip(table, table[1:]):
        if q0 <= q <= q1:
            t = (q - q0) / (q1 - q0)
            return tuple(a + (b - a) * t for a, b in zip(v0, v1))
    raise ValueError(q)


def grid(q_start, q_end, steps):
    """``steps`` equally spaced rationals in [q_start, q_end)."""
    h = (F(q_end) - F(q_start)) / steps
    return [F(q_start) + i * h for i in range(steps)]


def brute_force_exponents(evaluate, qs, n):
    """(What, W) from the max/min of S_k(q)/q over the sample points ``qs``."""
    hat, ordinary = [None] * n, [None] * n
    values = [evaluate(q) for q in qs]
    for k in range(1, n + 1):
        ratios = [sum(v[:k]) / q for v, q in zip(values, qs)]
        hat[n - k] = 1 / max(ratios) - 1
        ordinary[n - k] = 1 / min(ratios) - 1
    return tuple(hat), tuple(ordinary)
