"""Basis conditions: the sequence analog of the core.

A basis solution is a vector ``x`` with ``sum(x[i] for i in P(pi)) >= v(pi)``
for every sequence and equality at the optimal sequence. Constraints over
sequences with the same agent set collapse to one bound per subset
``w(S) = max v(pi)`` over orderings of ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .game import WorthTable, label, optimal_sequence, space
from .simplex import INFEASIBLE, OPTIMAL, solve_lp


@dataclass(frozen=True)
class SubsetBound:
    members: tuple[int, ...]
    bound: Fraction
    witness: tuple[int, ...]  # a sequence attaining the bound; () for synthetic bounds

    def __str__(self) -> str:
        lhs = " + ".join(f"x{a + 1}" for a in self.members)
        src = f"  [v({label(self.witness)})]" if self.witness else ""
        return f"{lhs} >= {self.bound}{src}"


@dataclass(frozen=True)
class BasisSystem:
    n: int
    bounds: tuple[SubsetBound, ...]
    total: Fraction
    optimal: tuple[int, ...]

    def bound(self, members: Iterable[int]) -> SubsetBound:
        key = tuple(sorted(members))
        for b in self.bounds:
            if b.members == key:
                return b
        raise KeyError(key)

    def with_lower_bounds(self, lower: Sequence[Fraction]) -> BasisSystem:
        """Raise each singleton bound ``x_i >= w({i})`` to at least ``lower[i]``."""
        out = []
        for b in self.bounds:
            if len(b.members) == 1 and lower[b.members[0]] > b.bound:
                b = SubsetBound(b.members, Fraction(lower[b.members[0]]), ())
            out.append(b)
        return replace(self, bounds=tuple(out))


@dataclass(frozen=True)
class Certificate:
    """Nonnegative weights on subset bounds covering every agent exactly once.

    Any basis solution would satisfy ``sum(weight * bound) <= total``, so
    ``sum(weight * bound) > total`` proves there is none.
    """

    terms: tuple[tuple[SubsetBound, Fraction], ...]
    value: Fraction
    total: Fraction

    def check(self, n: int) -> bool:
        cover = [Fraction(0)] * n
        for b, w in self.terms:
            if w < 0:
                return False
            for a in b.members:
                cover[a] += w
        value = sum((w * b.bound for b, w in self.terms), Fraction(0))
        return all(c == 1 for c in cover) and value == self.value and value > self.total

    def __str__(self) -> str:
        parts = [f"{w}*[{b}]" if w != 1 else f"[{b}]" for b, w in self.terms]
        sums = " + ".join(f"{w * b.bound}" for b, w in self.terms)
        return f"{'; '.join(parts)}; {sums} = {self.value} > {self.total}"


@dataclass(frozen=True)
class BasisOutcome:
    x: tuple[Fraction, ...] | None
    certificate: Certificate | None = None

    @property
    def feasible(self) -> bool:
        return self.x is not None


@dataclass(frozen=True)
class BasisCheck:
    ok: bool
    violations: tuple[tuple[tuple[int, ...], Fraction, Fraction, str], ...]


def build_system(v: WorthTable) -> BasisSystem:
    sp = v.space
    best: dict[int, int] = {}
    for k in range(1, len(sp)):
        m = sp.mask[k]
        if m not in best or v.values[k] > v.values[best[m]]:
            best[m] = k
    bounds = []
    for m in sorted(best, key=lambda m: (m.bit_count(), [a for a in range(v.n) if m >> a & 1])):
        k = best[m]
        members = tuple(a for a in range(v.n) if m >> a & 1)
        bounds.append(SubsetBound(members, v.values[k], sp.sequences[k]))
    star = optimal_sequence(v)
    return BasisSystem(v.n, tuple(bounds), v(star), star)


def _singletons(sys: BasisSystem) -> list[Fraction]:
    low = [Fraction(0)] * sys.n
    for b in sys.bounds:
        if len(b.members) == 1:
            low[b.members[0]] = b.bound
    return low


def _balanced_lp(sys: BasisSystem, c: list[Fraction], extra_rows=(), extra_rhs=()):
    rows = [[Fraction(1 if a in b.members else 0) for b in sys.bounds] for a in range(sys.n)]
    rhs = [Fraction(1)] * sys.n
    return solve_lp(c, rows + list(extra_rows), rhs + list(extra_rhs))


def _certificate(sys: BasisSystem) -> Certificate | None:
    """Infeasibility certificate from the dual (balanced-collection) LP, or None.

    The dual of ``min sum(x) s.t. x(S) >= w(S)`` maximizes ``sum(l_S w(S))``
    over weights covering each agent once. Among maximizers the finest
    collection (least weight on multi-agent sets) is reported.
    """
    weights = [b.bound for b in sys.bounds]
    res = _balanced_lp(sys, [-w for w in weights])
    if res.status != OPTIMAL or res.value is None:
        raise AssertionError(f"balanced-collection LP is {res.status}")
    best = -res.value
    if best <= sys.total:
        return None
    coarse = [Fraction(len(b.members) - 1) for b in sys.bounds]
    res = _balanced_lp(sys, coarse, [weights], [best])
    assert res.status == OPTIMAL and res.x is not None
    terms = tuple((b, w) for b, w in zip(sys.bounds, res.x) if w)
    return Certificate(terms, best, sys.total)


def _primal_rows(sys: BasisSystem):
    """Constraints in shifted variables ``z = x - singleton bounds >= 0``.

    Variables are ``z_1..z_n`` followed by one surplus per kept subset bound.
    Bounds implied by the singletons are dropped.
    """
    n = sys.n
    low = _singletons(sys)
    kept = []
    for b in sys.bounds:
        if len(b.members) < 2:
            continue
        r = b.bound - sum(low[a] for a in b.members)
        if r > 0:
            kept.append((b.members, r))
    nv = n + len(kept)
    rows, rhs = [], []
    for s, (members, r) in enumerate(kept):
        row = [Fraction(0)] * nv
        for a in members:
            row[a] = Fraction(1)
        row[n + s] = Fraction(-1)
        rows.append(row)
        rhs.append(r)
    eq = [Fraction(1)] * n + [Fraction(0)] * len(kept)
    rows.append(eq)
    rhs.append(sys.total - sum(low))
    return nv, rows, rhs, low


def _optimize(sys: BasisSystem, coord: int, maximize: bool, fixed: dict[int, Fraction]) -> Fraction | None:
    nv, rows, rhs, low = _primal_rows(sys)
    for a, val in fixed.items():
        row = [Fraction(0)] * nv
        row[a] = Fraction(1)
        rows.append(row)
        rhs.append(val - low[a])
    c = [Fraction(0)] * nv
    c[coord] = Fraction(-1 if maximize else 1)
    res = solve_lp(c, rows, rhs)
    if res.status == INFEASIBLE:
        return None
    assert res.status == OPTIMAL and res.x is not None
    return res.x[coord] + low[coord]


def solve(sys: BasisSystem, order: Sequence[int] | None = None) -> BasisOutcome:
    """Decide feasibility exactly and return the lexicographically minimal basis solution.

    ``order`` sets which coordinate is minimized first (default ``0, 1, ...``).
    When infeasible the outcome carries a :class:`Certificate`.
    """
    cert = _certificate(sys)
    if cert is not None:
        return BasisOutcome(None, cert)
    order = list(range(sys.n)) if order is None else list(order)
    if sorted(order) != list(range(sys.n)):
        raise ValueError(f"order must be a permutation of 0..{sys.n - 1}")
    fixed: dict[int, Fraction] = {}
    for a in order:
        val = _optimize(sys, a, False, fixed)
        if val is None:
            raise AssertionError("basis system became infeasible while fixing coordinates")
        fixed[a] = val
    return BasisOutcome(tuple(fixed[a] for a in range(sys.n)))


def coordinate_range(sys: BasisSystem, agent: int) -> tuple[Fraction, Fraction] | None:
    """Smallest and largest value of ``x[agent]`` over all basis solutions."""
    if _certificate(sys) is not None:
        return None
    lo = _optimize(sys, agent, False, {})
    hi = _optimize(sys, agent, True, {})
    assert lo is not None and hi is not None
    return lo, hi


def is_basis_solution(v: WorthTable, x: Sequence[Fraction]) -> BasisCheck:
    """Check both basis conditions against every sequence (no collapsing)."""
    if len(x) != v.n:
        raise ValueError(f"expected {v.n} coordinates, got {len(x)}")
    sp = v.space
    xs = [Fraction(a) for a in x]
    bad = []
    for k in range(1, len(sp)):
        seq = sp.sequences[k]
        lhs = sum((xs[a] for a in seq), Fraction(0))
        if lhs < v.values[k]:
            bad.append((seq, lhs, v.values[k], ">="))
    star = optimal_sequence(v)
    total = sum(xs, Fraction(0))
    if total != v(star):
        bad.append((star, total, v(star), "=="))
    return BasisCheck(not bad, tuple(bad))
