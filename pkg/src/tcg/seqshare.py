"""The SeqShare class of mechanisms and a membership certifier.

A SeqShare table starts from a basis solution ``x`` (the payoff at the
optimal sequence), pays every first arrival its own worth, and splits each
later marginal worth among the agents present, never pushing anyone below
their previous payoff or above their ``x`` entry. Which split is used is a
free choice; :class:`Policy` names three deterministic ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .basis import build_system, is_basis_solution, solve
from .game import SolutionTable, WorthTable, label, optimal_sequence

ZERO = Fraction(0)


class Policy(str, enum.Enum):
    NEWCOMER_FIRST = "newcomer-first"
    PROPORTIONAL_HEADROOM = "proportional-headroom"
    EARLIEST_FIRST = "earliest-first"


def improvize(
    newcomer: int,
    seq: Sequence[int],
    current: Sequence[Fraction],
    cap: Sequence[Fraction],
    marginal: Fraction,
    policy: Policy = Policy.NEWCOMER_FIRST,
) -> tuple[Fraction, ...]:
    """Split ``marginal`` among ``seq + newcomer`` within each agent's headroom.

    Headroom is ``cap[i] - current[i]`` for agents already in ``seq`` and
    ``cap[newcomer]`` for the newcomer. Returns an increment per agent
    (length ``len(cap)``, zero for absent agents).
    """
    n = len(cap)
    order = list(seq) + [newcomer]
    head = {a: cap[a] - (current[a] if a != newcomer else ZERO) for a in order}
    if marginal < 0 or any(h < 0 for h in head.values()):
        raise AssertionError(f"improvize precondition failed: marginal {marginal}, headroom {head}")
    room = sum(head.values(), ZERO)
    if room < marginal:
        raise AssertionError(f"marginal {marginal} exceeds total headroom {room}")

    y = [ZERO] * n
    policy = Policy(policy)
    if policy is Policy.PROPORTIONAL_HEADROOM:
        if room:
            for a in order:
                y[a] = marginal * head[a] / room
        return tuple(y)

    if policy is Policy.NEWCOMER_FIRST:
        fill = [newcomer] + list(seq)
    else:
        fill = order
    left = marginal
    for a in fill:
        give = min(left, head[a])
        y[a] = give
        left -= give
    return tuple(y)


def run_seqshare(
    v: WorthTable,
    policy: Policy = Policy.NEWCOMER_FIRST,
    x: Sequence[Fraction] | None = None,
) -> SolutionTable | None:
    """Build one SeqShare table, or return None when the game has no basis solution.

    ``x`` overrides the canonical (lexicographically minimal) basis solution;
    it must itself be a basis solution.
    """
    if x is None:
        outcome = solve(build_system(v))
        if not outcome.feasible:
            return None
        x = outcome.x
    else:
        x = tuple(Fraction(a) for a in x)
        if not is_basis_solution(v, x).ok:
            raise ValueError("x is not a basis solution of the game")
    sp = v.space
    vals = v.values
    n = v.n
    rows: list[tuple[Fraction, ...]] = [(ZERO,) * n] * len(sp)
    for k in range(1, len(sp)):
        p = sp.parent[k]
        j = sp.last[k]
        if p == 0:
            row = [ZERO] * n
            row[j] = vals[k]
            rows[k] = tuple(row)
            continue
        y = improvize(j, sp.sequences[p], rows[p], x, vals[k] - vals[p], policy)
        rows[k] = tuple(a + b for a, b in zip(rows[p], y))
    star = sp.index[optimal_sequence(v)]
    if rows[star] != tuple(x):
        raise AssertionError(f"incremental payoff at the optimal sequence {rows[star]} differs from x = {x}")
    return SolutionTable(n, tuple(rows))


@dataclass(frozen=True)
class Membership:
    certified: bool
    reason: str = ""
    sequence: tuple[int, ...] | None = None
    detail: str = ""


def check_membership(v: WorthTable, phi: SolutionTable) -> Membership:
    """Certify that ``phi`` is a table SeqShare can produce, or name the first failure.

    Checks, in order: zero payoffs outside each sequence, that the payoff
    at the optimal sequence is a basis solution, first arrivals paid their
    own worth, and every extension's increments lying in ``[0, headroom]``
    and summing to the marginal worth.
    """
    if phi.n != v.n:
        raise ValueError("table and game have different agent counts")
    sp = v.space
    vals = v.values
    rows = phi.payoffs
    if any(rows[0]):
        return Membership(False, "support", (), "the empty sequence must pay nothing")
    for seq, a in phi.outside_support():
        return Membership(False, "support", seq, f"agent {a + 1} is paid {phi(seq)[a]} outside ({label(seq)})")

    star = optimal_sequence(v)
    x = phi(star)
    check = is_basis_solution(v, x)
    if not check.ok:
        seq, lhs, rhs, rel = check.violations[0]
        return Membership(False, "basis", star, f"payoff at ({label(star)}) is not a basis solution: "
                          f"at ({label(seq)}) {lhs} {rel} {rhs} fails")

    for k in range(1, len(sp)):
        if sp.parent[k] == 0:
            a = sp.last[k]
            if rows[k][a] != vals[k]:
                return Membership(False, "first-arrival", sp.sequences[k],
                                  f"agent {a + 1} gets {rows[k][a]} instead of v = {vals[k]}")

    for k in range(1, len(sp)):
        p = sp.parent[k]
        if p == 0:
            continue
        seq = sp.sequences[k]
        j = sp.last[k]
        total = ZERO
        for a in seq:
            before = rows[p][a] if a != j else ZERO
            y = rows[k][a] - before
            total += y
            if y < 0:
                return Membership(False, "decrease", seq,
                                  f"agent {a + 1}: {rows[k][a]} < {before} at ({label(sp.sequences[p])})")
            if rows[k][a] > x[a]:
                return Membership(False, "headroom", seq,
                                  f"agent {a + 1}: {rows[k][a]} exceeds the optimal-sequence payoff {x[a]}")
        if total != vals[k] - vals[p]:
            return Membership(False, "marginal", seq,
                              f"increments sum to {total}, marginal worth is {vals[k] - vals[p]}")
    return Membership(True)
