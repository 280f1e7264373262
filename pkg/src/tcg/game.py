"""Agents, sequences and sequence-indexed worth/payoff tables.

Agents are 0-based integers internally. A sequence is a tuple of distinct
agents; the empty tuple is the empty sequence, whose worth is always 0.

Every table is stored as a flat tuple aligned with the canonical order of
:class:`SequenceSpace` (empty sequence first, then shorter before longer,
lexicographic within a length).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

MAX_AGENTS = 8

Sequence = tuple[int, ...]
Payoff = tuple[Fraction, ...]

ZERO = Fraction(0)


class SequenceCountError(ValueError):
    """Raised when the agent count exceeds :data:`MAX_AGENTS`."""


class IncompleteTableError(ValueError):
    def __init__(self, missing: list[Sequence]):
        self.missing = missing
        shown = ", ".join(label(s) for s in missing[:10])
        more = f" (+{len(missing) - 10} more)" if len(missing) > 10 else ""
        super().__init__(f"table is missing {len(missing)} sequence(s): {shown}{more}")


def sequence_count(n: int) -> int:
    """Number of nonempty sequences over ``n`` agents."""
    return sum(math.perm(n, k) for k in range(1, n + 1))


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"agent count must be positive, got {n}")
    if n > MAX_AGENTS:
        raise SequenceCountError(
            f"n={n} exceeds the cap of {MAX_AGENTS} agents "
            f"({sequence_count(n)} sequences requested)"
        )


def label(seq: Iterable[int]) -> str:
    """1-based, space separated rendering used in files and reports."""
    s = " ".join(str(a + 1) for a in seq)
    return s or "()"


def enumerate_sequences(
    n: int,
    exclude: Iterable[int] = (),
    lengths: Iterable[int] | None = None,
) -> Iterator[Sequence]:
    """Yield nonempty sequences over ``n`` agents in canonical order.

    ``exclude`` removes agents (the sequences of ``Π_{-N'}``) and ``lengths``
    restricts the lengths produced.
    """
    _check_n(n)
    banned = set(exclude)
    agents = [a for a in range(n) if a not in banned]
    wanted = None if lengths is None else set(lengths)
    for k in range(1, len(agents) + 1):
        if wanted is not None and k not in wanted:
            continue
        yield from itertools.permutations(agents, k)


def prefix_of(a: Sequence, b: Sequence) -> bool:
    """Strict prefix: ``a`` is shorter than ``b`` and agrees with it positionwise."""
    return len(a) < len(b) and tuple(b[: len(a)]) == tuple(a)


def predecessor(seq: Sequence, agent: int) -> Sequence:
    """Longest prefix of ``seq`` not containing ``agent``."""
    try:
        pos = seq.index(agent)
    except ValueError:
        raise ValueError(f"agent {agent + 1} does not occur in ({label(seq)})") from None
    return tuple(seq[:pos])


class SequenceSpace:
    """Index structures over all sequences of ``n`` agents (empty one included).

    Use :func:`space` to get a cached instance.
    """

    def __init__(self, n: int):
        _check_n(n)
        self.n = n
        seqs: list[Sequence] = [()]
        seqs.extend(enumerate_sequences(n))
        self.sequences: tuple[Sequence, ...] = tuple(seqs)
        self.index: dict[Sequence, int] = {s: k for k, s in enumerate(seqs)}
        self.parent = [-1] + [self.index[s[:-1]] for s in seqs[1:]]
        self.last = [-1] + [s[-1] for s in seqs[1:]]
        self.mask = [sum(1 << a for a in s) for s in seqs]
        child = [[-1] * n for _ in seqs]
        for k, s in enumerate(seqs[1:], start=1):
            child[self.parent[k]][s[-1]] = k
        self.child = child
        full = (1 << n) - 1
        self.full = tuple(k for k, m in enumerate(self.mask) if m == full)

    def __len__(self) -> int:
        return len(self.sequences)

    def chain(self, k: int) -> list[int]:
        """Indices of the nonempty prefixes of sequence ``k``, shortest first (``k`` included)."""
        out = []
        while k > 0:
            out.append(k)
            k = self.parent[k]
        out.reverse()
        return out


@lru_cache(maxsize=None)
def space(n: int) -> SequenceSpace:
    return SequenceSpace(n)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"floats are not accepted as worths (got {x!r})")
    return x if isinstance(x, Fraction) else Fraction(x)


def _normalize(n: int, seq: Iterable[int]) -> Sequence:
    s = tuple(seq)
    if len(set(s)) != len(s) or any(not 0 <= a < n for a in s):
        raise ValueError(f"invalid sequence {s!r} for n={n}")
    return s


@dataclass(frozen=True)
class WorthTable:
    """A temporal cooperative game: a worth for every sequence.

    ``values[k]`` is the worth of ``space(n).sequences[k]``; ``values[0]`` is
    the empty sequence and is always 0.
    """

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        sp = space(self.n)
        vals = tuple(_as_fraction(x) for x in self.values)
        if len(vals) != len(sp):
            raise ValueError(f"expected {len(sp)} worths (empty sequence included), got {len(vals)}")
        if vals[0] != 0:
            raise ValueError("the empty sequence must have worth 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, n: int, worths: Mapping[Sequence, object]) -> WorthTable:
        sp = space(n)
        vals = [ZERO] * len(sp)
        seen = set()
        for seq, w in worths.items():
            s = _normalize(n, seq)
            if not s:
                if _as_fraction(w) != 0:
                    raise ValueError("the empty sequence must have worth 0")
                continue
            vals[sp.index[s]] = _as_fraction(w)
            seen.add(s)
        missing = [s for s in sp.sequences[1:] if s not in seen]
        if missing:
            raise IncompleteTableError(missing)
        return cls(n, tuple(vals))

    @classmethod
    def from_function(cls, n: int, f: Callable[[Sequence], object]) -> WorthTable:
        sp = space(n)
        return cls(n, (ZERO,) + tuple(_as_fraction(f(s)) for s in sp.sequences[1:]))

    @classmethod
    def zero(cls, n: int) -> WorthTable:
        return cls(n, (ZERO,) * len(space(n)))

    @property
    def space(self) -> SequenceSpace:
        return space(self.n)

    def __call__(self, seq: Iterable[int]) -> Fraction:
        return self.values[self.space.index[tuple(seq)]]

    def items(self) -> Iterator[tuple[Sequence, Fraction]]:
        """Nonempty sequences with their worths, in canonical order."""
        return zip(self.space.sequences[1:], self.values[1:])

    def _check_compatible(self, other: WorthTable) -> None:
        if not isinstance(other, WorthTable) or other.n != self.n:
            raise ValueError("games must be over the same agent count")

    def __add__(self, other: WorthTable) -> WorthTable:
        self._check_compatible(other)
        return WorthTable(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: WorthTable) -> WorthTable:
        self._check_compatible(other)
        return WorthTable(self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, factor) -> WorthTable:
        f = _as_fraction(factor)
        return WorthTable(self.n, tuple(f * a for a in self.values))


@dataclass(frozen=True)
class SolutionTable:
    """Payoff vectors for every sequence, aligned like :class:`WorthTable`.

    Agents outside a sequence are expected to receive 0. The constructor does
    not enforce this so that malformed tables can still be handed to the
    verifiers; :meth:`outside_support` lists offending entries.
    """

    n: int
    payoffs: tuple[Payoff, ...]

    def __post_init__(self):
        sp = space(self.n)
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in self.payoffs)
        if len(rows) != len(sp):
            raise ValueError(f"expected {len(sp)} payoff rows (empty sequence included), got {len(rows)}")
        if any(len(r) != self.n for r in rows):
            raise ValueError(f"every payoff row must have length {self.n}")
        object.__setattr__(self, "payoffs", rows)

    @classmethod
    def from_mapping(cls, n: int, payoffs: Mapping[Sequence, Iterable[object]]) -> SolutionTable:
        sp = space(n)
        rows: list[Payoff] = [(ZERO,) * n for _ in range(len(sp))]
        seen = set()
        for seq, row in payoffs.items():
            s = _normalize(n, seq)
            rows[sp.index[s]] = tuple(_as_fraction(x) for x in row)
            if s:
                seen.add(s)
        missing = [s for s in sp.sequences[1:] if s not in seen]
        if missing:
            raise IncompleteTableError(missing)
        return cls(n, tuple(rows))

    @property
    def space(self) -> SequenceSpace:
        return space(self.n)

    def __call__(self, seq: Iterable[int]) -> Payoff:
        return self.payoffs[self.space.index[tuple(seq)]]

    def items(self) -> Iterator[tuple[Sequence, Payoff]]:
        return zip(self.space.sequences[1:], self.payoffs[1:])

    def replace(self, seq: Sequence, row: Iterable[object]) -> SolutionTable:
        """Copy of the table with one payoff row swapped out."""
        k = self.space.index[tuple(seq)]
        rows = list(self.payoffs)
        rows[k] = tuple(_as_fraction(x) for x in row)
        return SolutionTable(self.n, tuple(rows))

    def outside_support(self) -> list[tuple[Sequence, int]]:
        """Entries paying a nonzero amount to an agent absent from the sequence."""
        sp = self.space
        bad = []
        for k, row in enumerate(self.payoffs):
            m = sp.mask[k]
            bad.extend((sp.sequences[k], a) for a in range(self.n) if not m >> a & 1 and row[a] != 0)
        return bad


@dataclass(frozen=True)
class Violation:
    kind: str
    sequences: tuple[Sequence, ...]
    description: str


@dataclass(frozen=True)
class GameClassReport:
    monotone: bool
    convex: bool
    simple: bool
    violations: tuple[Violation, ...]


def _monotone_violations(v: WorthTable) -> list[Violation]:
    sp = v.space
    vals = v.values
    out = []
    for k in range(1, len(sp)):
        p = sp.parent[k]
        if vals[p] > vals[k]:
            out.append(
                Violation(
                    "monotone",
                    (sp.sequences[p], sp.sequences[k]),
                    f"v({label(sp.sequences[p])}) = {vals[p]} > {vals[k]} = v({label(sp.sequences[k])})",
                )
            )
    return out


def _convex_violations(v: WorthTable) -> list[Violation]:
    # For a fixed arrival i, the condition compares marginals at nonempty pi, pi'
    # with P(pi) ⊆ P(pi'), i outside both. It suffices to compare, per set T,
    # the largest marginal over sequences whose set lies inside T against the
    # smallest marginal over sequences with set exactly T.
    sp = v.space
    vals = v.values
    out = []
    for i in range(v.n):
        hi: dict[int, tuple[Fraction, int]] = {}
        lo: dict[int, tuple[Fraction, int]] = {}
        for k in range(1, len(sp)):
            m = sp.mask[k]
            if m >> i & 1:
                continue
            marg = vals[sp.child[k][i]] - vals[k]
            if m not in hi or marg > hi[m][0]:
                hi[m] = (marg, k)
            if m not in lo or marg < lo[m][0]:
                lo[m] = (marg, k)
        best: dict[int, tuple[Fraction, int]] = {}
        for t in sorted(hi, key=lambda m: (m.bit_count(), m)):
            cand = hi[t]
            for a in range(v.n):
                if t >> a & 1:
                    sub = t & ~(1 << a)
                    if sub and best[sub][0] > cand[0]:
                        cand = best[sub]
            best[t] = cand
            if cand[0] > lo[t][0]:
                p, q = sp.sequences[cand[1]], sp.sequences[lo[t][1]]
                out.append(
                    Violation(
                        "convex",
                        (p, q),
                        f"agent {i + 1}: v({label(p + (i,))}) - v({label(p)}) = {cand[0]} > "
                        f"{lo[t][0]} = v({label(q + (i,))}) - v({label(q)})",
                    )
                )
    return out


def _simple_violations(v: WorthTable) -> list[Violation]:
    return [
        Violation("simple", (s,), f"v({label(s)}) = {w} is not 0 or 1")
        for s, w in v.items()
        if w not in (0, 1)
    ]


def validate(v: WorthTable) -> GameClassReport:
    """Check monotonicity, convexity and simplicity, with witnesses.

    Monotonicity is checked over immediate prefixes including the empty one,
    so it also requires nonnegative first-arrival worths. Convexity ranges
    over nonempty ``pi``, ``pi'``.
    """
    mono = _monotone_violations(v)
    conv = _convex_violations(v)
    simp = _simple_violations(v)
    return GameClassReport(
        monotone=not mono,
        convex=not conv,
        simple=not simp,
        violations=tuple(mono + conv + simp),
    )


def optimal_sequence(v: WorthTable) -> Sequence:
    """First full-length sequence (lexicographic) of maximal worth."""
    sp = v.space
    best = sp.full[0]
    for k in sp.full[1:]:
        if v.values[k] > v.values[best]:
            best = k
    return sp.sequences[best]
