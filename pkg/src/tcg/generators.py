"""Seeded random games.

Randomness comes from numpy's PCG64 bit generator, using only its raw
64-bit output stream (``random_raw``), which is fixed by the PCG64
algorithm and seeding scheme. Integers in ``[0, k)`` are drawn by
rejection: discard raw values ``>= 2**64 - (2**64 % k)``, then take
``raw % k``. Tables are filled in canonical sequence order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .game import WorthTable, space, validate
from .axioms import swap

KINDS = ("monotone", "convex-monotone", "simple-monotone")
CONVEX_MAX_AGENTS = 6
CONVEX_RETRIES = 1000

_TWO64 = 1 << 64


class GenerationError(RuntimeError):
    pass


class Stream:
    """Uniform integers from a PCG64 raw stream."""

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed)

    def raw(self) -> int:
        return int(self._bits.random_raw())

    def below(self, k: int) -> int:
        if k <= 0:
            raise ValueError("k must be positive")
        limit = _TWO64 - _TWO64 % k
        while True:
            r = self.raw()
            if r < limit:
                return r % k

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class GenSpec:
    n: int
    kind: str = "monotone"
    seed: int = 0
    scale: int = 10


def _monotone(spec: GenSpec, rng: Stream) -> WorthTable:
    sp = space(spec.n)
    vals = [Fraction(0)] * len(sp)
    for k in range(1, len(sp)):
        vals[k] = vals[sp.parent[k]] + rng.between(0, spec.scale)
    return WorthTable(spec.n, tuple(vals))


def _simple(spec: GenSpec, rng: Stream) -> WorthTable:
    # a sequence switches on with probability 1/(2n) unless its parent already is on
    sp = space(spec.n)
    vals = [Fraction(0)] * len(sp)
    if spec.scale == 0:
        return WorthTable(spec.n, tuple(vals))
    for k in range(1, len(sp)):
        if vals[sp.parent[k]] == 1 or rng.below(2 * spec.n) == 0:
            vals[k] = Fraction(1)
    return WorthTable(spec.n, tuple(vals))


def _convex_proposal(spec: GenSpec, rng: Stream) -> WorthTable:
    # marginal of i joining a nonempty set S: b_i + sum_{k in S} c_ki, plus a
    # sparse 0/1 bump per (i, S) that can break convexity
    n, scale = spec.n, spec.scale
    sp = space(n)
    first = [rng.between(0, scale) for _ in range(n)]
    base = [rng.between(0, scale) for _ in range(n)]
    pair = [[rng.between(0, scale) for _ in range(n)] for _ in range(n)]
    bump_range = 1 << n
    marg: dict[tuple[int, int], int] = {}
    for i in range(n):
        for m in range(1, 1 << n):
            if m >> i & 1:
                continue
            bump = 1 if scale and rng.below(bump_range) == 0 else 0
            marg[i, m] = base[i] + sum(pair[a][i] for a in range(n) if m >> a & 1) + bump
    vals = [Fraction(0)] * len(sp)
    for k in range(1, len(sp)):
        p, j = sp.parent[k], sp.last[k]
        vals[k] = Fraction(first[j]) if p == 0 else vals[p] + marg[j, sp.mask[p]]
    return WorthTable(n, tuple(vals))


def generate(spec: GenSpec) -> WorthTable:
    """Deterministic random game of the requested class.

    ``monotone`` adds a uniform increment in ``[0, scale]`` to the parent's
    worth. ``simple-monotone`` draws an upward-closed 0/1 labeling.
    ``convex-monotone`` rejection-samples proposals against the exhaustive
    convexity check.
    """
    if spec.kind not in KINDS:
        raise ValueError(f"unknown game class {spec.kind!r}; expected one of {', '.join(KINDS)}")
    if spec.scale < 0:
        raise ValueError("scale must be nonnegative")
    rng = Stream(spec.seed)
    if spec.kind == "monotone":
        return _monotone(spec, rng)
    if spec.kind == "simple-monotone":
        return _simple(spec, rng)
    if spec.n > CONVEX_MAX_AGENTS:
        raise GenerationError(f"convex generation supports n <= {CONVEX_MAX_AGENTS}")
    for _ in range(CONVEX_RETRIES):
        v = _convex_proposal(spec, rng)
        if validate(v).convex:
            return v
    raise GenerationError(
        f"no convex game found in {CONVEX_RETRIES} proposals; try a smaller n or a larger scale"
    )


def symmetrize(v: WorthTable, i: int, j: int) -> WorthTable:
    """Smallest game above ``v`` that is invariant under swapping ``i`` and ``j``.

    Takes ``max(v(pi), v(swapped pi))``; monotone games stay monotone.
    """
    return WorthTable.from_function(v.n, lambda s: max(v(s), v(swap(s, i, j))))
