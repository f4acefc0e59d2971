"""Dense exact simplex over ``fractions.Fraction``.

Only the form needed by the covering LPs is supported::

    maximize  c . y   subject to  A y <= b,  y >= 0,  with b >= 0

so the slack basis is feasible from the start and no phase one is needed.
Bland's rule (lowest index enters, lowest basic index leaves on ties)
prevents cycling on the heavily degenerate problems produced here.

The dual prices of the rows are read off the final objective row; they
solve ``minimize b . x  s.t.  A^T x >= c, x >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    primal: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]
    pivots: int


def maximize(
    c: Sequence, A: Sequence[Sequence], b: Sequence, max_pivots: int = 100_000
) -> LPResult:
    m, n = len(A), len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be non-negative")
    width = n + m
    # rows: [coefficients over structural + slack columns, rhs]
    rows = []
    for i, row in enumerate(A):
        if len(row) != n:
            raise ValueError("row length does not match objective")
        r = [Fraction(x) for x in row] + [Fraction(0)] * m + [Fraction(b[i])]
        r[n + i] = Fraction(1)
        rows.append(r)
    # reduced costs c_j - z_j, with the objective value negated in the last slot
    obj = [Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))

    pivots = 0
    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded("objective unbounded above")
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")

    primal = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            primal[j] = rows[i][-1]
    dual = tuple(-obj[n + i] for i in range(m))
    return LPResult(-obj[-1], tuple(primal), dual, pivots)


def _pivot(rows, obj, r, col):
    prow = rows[r]
    inv = 1 / prow[col]
    if inv != 1:
        prow[:] = [x * inv for x in prow]
    nz = [j for j, x in enumerate(prow) if x]
    for i, row in enumerate(rows):
        if i != r:
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    f = obj[col]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]
