"""Marginal-contribution solutions, reduction, and carrier-game decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .game import SolutionTable, WorthTable, space

ZERO = Fraction(0)


def margsol(v: WorthTable) -> SolutionTable:
    """Each agent in a sequence gets the worth its arrival added; absent agents get 0."""
    sp = v.space
    vals = v.values
    rows = [(ZERO,) * v.n]
    for k in range(1, len(sp)):
        row = [ZERO] * v.n
        for c in sp.chain(k):
            row[sp.last[c]] = vals[c] - vals[sp.parent[c]]
        rows.append(tuple(row))
    return SolutionTable(v.n, tuple(rows))


def ext_shap(v: WorthTable) -> tuple[Fraction, ...]:
    """Average marginal contribution over all full-length arrival orders."""
    sp = v.space
    acc = [ZERO] * v.n
    for k in sp.full:
        seq = sp.sequences[k]
        prev = ZERO
        for pos in range(v.n):
            cur = v(seq[: pos + 1])
            acc[seq[pos]] += cur - prev
            prev = cur
    f = math.factorial(v.n)
    return tuple(a / f for a in acc)


def reduce(phi: SolutionTable) -> tuple[Fraction, ...]:
    """Average a sequence-indexed solution over the full-length sequences."""
    sp = phi.space
    acc = [ZERO] * phi.n
    for k in sp.full:
        for a, x in enumerate(phi.payoffs[k]):
            acc[a] += x
    f = math.factorial(phi.n)
    return tuple(a / f for a in acc)


def extends(base: Sequence[int], seq: Sequence[int]) -> bool:
    """Non-strict prefix: ``base`` equals ``seq`` or is a strict prefix of it."""
    return len(base) <= len(seq) and tuple(seq[: len(base)]) == tuple(base)


def carrier_worth(base: Sequence[int], seq: Sequence[int], alpha=1) -> Fraction:
    return Fraction(alpha) if extends(base, seq) else ZERO


def carrier_game(base: Sequence[int], n: int, alpha=1) -> WorthTable:
    """Worth ``alpha`` on every sequence that starts with ``base``, 0 elsewhere."""
    if not base:
        raise ValueError("the carrier sequence must be nonempty")
    return WorthTable.from_function(n, lambda s: carrier_worth(base, s, alpha))


@dataclass(frozen=True)
class CarrierDecomposition:
    n: int
    coefficients: tuple[Fraction, ...]  # aligned with space(n); entry 0 unused

    def coefficient(self, seq: Sequence[int]) -> Fraction:
        return self.coefficients[space(self.n).index[tuple(seq)]]

    def reconstruct(self) -> WorthTable:
        sp = space(self.n)
        vals = [ZERO] * len(sp)
        for k in range(1, len(sp)):
            # v(seq) collects the coefficient of every nonempty prefix of seq, itself included
            vals[k] = sum((self.coefficients[c] for c in sp.chain(k)), ZERO)
        return WorthTable(self.n, tuple(vals))


def decompose(v: WorthTable) -> CarrierDecomposition:
    """Write ``v`` as a combination of carrier games (solves the triangular system)."""
    sp = v.space
    coeffs = [ZERO] * len(sp)
    for k in range(1, len(sp)):
        prefixes = sp.chain(k)[:-1]
        coeffs[k] = v.values[k] - sum((coeffs[c] for c in prefixes), ZERO)
    out = CarrierDecomposition(v.n, tuple(coeffs))
    if out.reconstruct() != v:
        raise AssertionError("carrier decomposition does not reconstruct the game")
    return out


def carrier_solution_margsol(base: Sequence[int], n: int, alpha=1) -> SolutionTable:
    """Closed form of the marginal solution on a carrier game: the last agent of ``base`` takes everything."""
    if not base:
        raise ValueError("the carrier sequence must be nonempty")
    sp = space(n)
    last = base[-1]
    alpha = Fraction(alpha)
    rows = []
    for seq in sp.sequences:
        row = [ZERO] * n
        if extends(base, seq):
            row[last] = alpha
        rows.append(tuple(row))
    return SolutionTable(n, tuple(rows))


def carrier_extshap(base: Sequence[int], n: int, alpha=1) -> tuple[Fraction, ...]:
    """Closed form of the extended value on a carrier game."""
    if not base:
        raise ValueError("the carrier sequence must be nonempty")
    out = [ZERO] * n
    out[base[-1]] = Fraction(math.factorial(n - len(base)), math.factorial(n)) * Fraction(alpha)
    return tuple(out)
