"""Two-phase tableau simplex over exact rationals with Bland's pivoting rule.

Solves ``min c.x  s.t.  A x = b, x >= 0``. No tolerances anywhere: every
entry is a :class:`fractions.Fraction`, and Bland's rule guarantees
termination on degenerate problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, j: int, cost: list[Fraction], obj: list[Fraction]) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != 1:
            inv = 1 / piv
            for c in range(len(row)):
                if row[c]:
                    row[c] *= inv
            self.rhs[r] *= inv
        nz = [c for c in range(len(row)) if row[c]]
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            f = other[j]
            if f:
                for c in nz:
                    other[c] -= f * row[c]
                self.rhs[k] -= f * self.rhs[r]
        f = cost[j]
        if f:
            for c in nz:
                cost[c] -= f * row[c]
            obj[0] -= f * self.rhs[r]
        self.basis[r] = j

    def run(self, cost: list[Fraction], obj: list[Fraction], allowed: int) -> str:
        """Bland iterations on columns ``< allowed``; ``obj[0]`` holds -objective."""
        while True:
            entering = next((j for j in range(allowed) if cost[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[r] / a, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering, cost, obj)


def solve_lp(
    c: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
) -> LPResult:
    """Minimize ``c.x`` subject to ``a_eq x = b_eq`` and ``x >= 0``."""
    nv = len(c)
    m = len(a_eq)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for r in range(m):
        row = [Fraction(x) for x in a_eq[r]]
        if len(row) != nv:
            raise ValueError("constraint row length does not match the objective")
        b = Fraction(b_eq[r])
        if b < 0:
            row = [-x for x in row]
            b = -b
        art = [Fraction(0)] * m
        art[r] = Fraction(1)
        rows.append(row + art)
        rhs.append(b)
    tab = _Tableau(rows, rhs, [nv + r for r in range(m)])

    # phase 1: minimize the sum of artificials
    cost = [Fraction(0)] * (nv + m)
    obj = [Fraction(0)]
    for r in range(m):
        for j in range(nv):
            cost[j] -= rows[r][j]
        obj[0] -= rhs[r]
    tab.run(cost, obj, nv + m)
    if obj[0] != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out of the basis; drop redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= nv:
            j = next((j for j in range(nv) if tab.rows[r][j] != 0), None)
            if j is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, j, [Fraction(0)] * (nv + m), [Fraction(0)])
        r += 1

    # phase 2
    cost = [Fraction(x) for x in c] + [Fraction(0)] * m
    obj = [Fraction(0)]
    for r, j in enumerate(tab.basis):
        f = cost[j]
        if f:
            row = tab.rows[r]
            for col in range(nv + m):
                if row[col]:
                    cost[col] -= f * row[col]
            obj[0] -= f * tab.rhs[r]
    status = tab.run(cost, obj, nv)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * nv
    for r, j in enumerate(tab.basis):
        x[j] = tab.rhs[r]
    return LPResult(OPTIMAL, tuple(x), -obj[0])
