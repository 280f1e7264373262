"""Exhaustive verifiers for the sequential and extended axioms.

Every verifier returns an :class:`AxiomReport`. A failing report carries
witnesses; each witness records the two sides of the violated relation so
it can be re-checked independently.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .basis import Certificate, build_system, coordinate_range, solve
from .game import SolutionTable, WorthTable, label, optimal_sequence
from .seqshare import Policy, run_seqshare
from .shapley import ext_shap, margsol

ZERO = Fraction(0)

SEQUENTIAL = ("OIR", "SE", "I4OA", "SA", "SNP", "SS")
EXTENDED = ("EE", "EA", "ENP", "ES")

RELATIONS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq}


@dataclass(frozen=True)
class Witness:
    """``lhs relation rhs`` was required and does not hold."""

    sequences: tuple[tuple[int, ...], ...]
    agents: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    relation: str
    note: str = ""

    def holds(self) -> bool:
        return RELATIONS[self.relation](self.lhs, self.rhs)

    def __str__(self) -> str:
        seqs = ", ".join(f"({label(s)})" for s in self.sequences)
        who = ", ".join(str(a + 1) for a in self.agents)
        text = f"agent {who} at {seqs}: {self.lhs} {self.relation} {self.rhs} fails"
        return f"{text} [{self.note}]" if self.note else text


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witnesses: tuple[Witness, ...] = ()
    skipped: tuple[tuple[int, int], ...] = ()


def _report(axiom: str, witnesses: list[Witness], skipped=()) -> AxiomReport:
    return AxiomReport(axiom, not witnesses, tuple(witnesses), tuple(skipped))


def _same_n(v: WorthTable, phi: SolutionTable) -> None:
    if v.n != phi.n:
        raise ValueError("game and table have different agent counts")


def check_oir(
    v: WorthTable,
    phi: SolutionTable,
    full: bool = False,
    include_arrivals: bool = False,
    first_only: bool = False,
) -> AxiomReport:
    """Online individual rationality: nobody's payoff drops as agents join.

    By default only immediate extensions are compared (enough by
    transitivity); ``full=True`` compares every prefix pair. With
    ``include_arrivals`` the newcomer's payoff must also be at least its
    implicit 0 before arriving.
    """
    _same_n(v, phi)
    sp = v.space
    rows = phi.payoffs
    out: list[Witness] = []
    for k in range(1, len(sp)):
        chain = sp.chain(k)
        earlier = chain[:-1] if full else chain[-2:-1]
        for p in earlier:
            for a in sp.sequences[p]:
                if rows[p][a] > rows[k][a]:
                    out.append(Witness((sp.sequences[p], sp.sequences[k]), (a,), rows[p][a], rows[k][a], "<="))
                    if first_only:
                        return _report("OIR", out)
        if include_arrivals:
            j = sp.last[k]
            if rows[k][j] < 0:
                out.append(Witness((sp.sequences[k],), (j,), ZERO, rows[k][j], "<=", "arrival"))
                if first_only:
                    return _report("OIR", out)
    return _report("OIR", out)


def check_se(v: WorthTable, phi: SolutionTable, first_only: bool = False) -> AxiomReport:
    """Sequential efficiency: each sequence's worth is paid out exactly to its members."""
    _same_n(v, phi)
    out = []
    for (seq, row), worth in zip(phi.items(), v.values[1:]):
        total = sum((row[a] for a in seq), ZERO)
        if total != worth:
            out.append(Witness((seq,), tuple(seq), total, worth, "=="))
            if first_only:
                break
    return _report("SE", out)


def check_i4oa(v: WorthTable, phi: SolutionTable, first_only: bool = False) -> AxiomReport:
    """Incentive for optimal arrival: every agent is paid most at the optimal sequence.

    Agents absent from a sequence are compared too (their payoff there is
    normally 0).
    """
    _same_n(v, phi)
    star = optimal_sequence(v)
    top = phi(star)
    out = []
    for seq, row in phi.items():
        for a in range(v.n):
            if top[a] < row[a]:
                out.append(Witness((star, seq), (a,), top[a], row[a], ">="))
                if first_only:
                    return _report("I4OA", out)
    return _report("I4OA", out)


Concept = Callable[[WorthTable], object]


def resolve_concept(name: str) -> Concept:
    """Map ``margsol``, ``ext_shap`` or ``seqshare[:policy]`` to a generator."""
    if name in ("margsol",):
        return margsol
    if name in ("ext_shap", "extshap"):
        return ext_shap
    if name.startswith("seqshare"):
        _, _, pol = name.partition(":")
        policy = Policy(pol) if pol else Policy.NEWCOMER_FIRST
        return lambda v: run_seqshare(v, policy)
    raise ValueError(f"unknown solution concept {name!r}")


def _evaluate(concept: Concept, v: WorthTable, label_: str):
    out = concept(v)
    if out is None:
        raise ValueError(f"concept is undefined on game {label_} (no basis solution)")
    return out


def check_sa(concept: Concept, u: WorthTable, w: WorthTable) -> AxiomReport:
    """Sequential additivity on the pair ``(u, w)``; ``u + w`` need not be monotone."""
    if u.n != w.n:
        raise ValueError("games must have the same agent count")
    a = _evaluate(concept, u, "u")
    b = _evaluate(concept, w, "w")
    c = _evaluate(concept, u + w, "u+w")
    out = []
    for k, seq in enumerate(u.space.sequences[1:], start=1):
        for i in range(u.n):
            lhs = a.payoffs[k][i] + b.payoffs[k][i]
            if lhs != c.payoffs[k][i]:
                out.append(Witness((seq,), (i,), lhs, c.payoffs[k][i], "=="))
    return _report("SA", out)


def check_ea(concept: Concept, u: WorthTable, w: WorthTable) -> AxiomReport:
    if u.n != w.n:
        raise ValueError("games must have the same agent count")
    a = _evaluate(concept, u, "u")
    b = _evaluate(concept, w, "w")
    c = _evaluate(concept, u + w, "u+w")
    out = [Witness((), (i,), a[i] + b[i], c[i], "==") for i in range(u.n) if a[i] + b[i] != c[i]]
    return _report("EA", out)


def find_null_players(v: WorthTable) -> set[int]:
    """Agents whose arrival never changes worth, including arriving first."""
    sp = v.space
    null = set()
    for i in range(v.n):
        if all(
            v.values[sp.child[k][i]] == v.values[k]
            for k in range(len(sp))
            if not sp.mask[k] >> i & 1
        ):
            null.add(i)
    return null


def check_snp(v: WorthTable, phi: SolutionTable) -> AxiomReport:
    _same_n(v, phi)
    null = find_null_players(v)
    out = [
        Witness((seq,), (i,), row[i], ZERO, "==", "null player")
        for seq, row in phi.items()
        for i in sorted(null)
        if row[i] != 0
    ]
    return _report("SNP", out)


def check_enp(v: WorthTable, psi: Sequence[Fraction]) -> AxiomReport:
    null = find_null_players(v)
    out = [Witness((), (i,), psi[i], ZERO, "==", "null player") for i in sorted(null) if psi[i] != 0]
    return _report("ENP", out)


def swap(seq: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    """Exchange agents ``i`` and ``j`` (replacing whichever is present)."""
    return tuple(j if a == i else i if a == j else a for a in seq)


def symmetric_pair(v: WorthTable, i: int, j: int) -> bool:
    """Whether swapping ``i`` and ``j`` leaves every worth unchanged."""
    return all(w == v(swap(seq, i, j)) for seq, w in v.items())


def _pairs(n: int) -> Iterable[tuple[int, int]]:
    return ((i, j) for i in range(n) for j in range(i + 1, n))


def check_ss(v: WorthTable, phi: SolutionTable) -> AxiomReport:
    """Sequential symmetry; pairs that are not interchangeable are reported as skipped."""
    _same_n(v, phi)
    out, skipped = [], []
    for i, j in _pairs(v.n):
        if not symmetric_pair(v, i, j):
            skipped.append((i, j))
            continue
        for seq, row in phi.items():
            mirror = swap(seq, i, j)
            other = phi(mirror)[j]
            if row[i] != other:
                out.append(Witness((seq, mirror), (i, j), row[i], other, "=="))
    return _report("SS", out, skipped)


def check_es(v: WorthTable, psi: Sequence[Fraction]) -> AxiomReport:
    out, skipped = [], []
    for i, j in _pairs(v.n):
        if not symmetric_pair(v, i, j):
            skipped.append((i, j))
        elif psi[i] != psi[j]:
            out.append(Witness((), (i, j), psi[i], psi[j], "=="))
    return _report("ES", out, skipped)


def check_ee(v: WorthTable, psi: Sequence[Fraction]) -> AxiomReport:
    """Extended efficiency: payoffs sum to the average worth of the full sequences."""
    sp = v.space
    avg = sum((v.values[k] for k in sp.full), ZERO) / math.factorial(v.n)
    total = sum(psi, ZERO)
    out = [] if total == avg else [Witness((), tuple(range(v.n)), total, avg, "==")]
    return _report("EE", out)


@dataclass(frozen=True)
class Compatibility:
    """Whether some basis solution pays every agent at least its extended value.

    ``status`` is ``compatible``, ``violation`` or ``no-basis``. For a
    violation, ``cap`` is the most any basis solution can pay ``agent``.
    """

    status: str
    extshap: tuple[Fraction, ...]
    agent: int | None = None
    cap: Fraction | None = None
    certificate: Certificate | None = None
    point: tuple[Fraction, ...] | None = None


def check_extshap_compat(v: WorthTable) -> Compatibility:
    """Test the necessary condition for a SeqShare table to reduce to the extended value.

    Solves the basis system with ``x_i >= Ext-Shap_i`` added. When that is
    infeasible no SeqShare table can reduce to the extended value.
    """
    sys = build_system(v)
    es = ext_shap(v)
    if not solve(sys).feasible:
        return Compatibility("no-basis", es)
    augmented = solve(sys.with_lower_bounds(es))
    if augmented.feasible:
        return Compatibility("compatible", es, point=augmented.x)
    caps = {}
    for i in range(v.n):
        rng = coordinate_range(sys, i)
        assert rng is not None
        caps[i] = rng[1]
        if caps[i] < es[i]:
            return Compatibility("violation", es, i, caps[i], augmented.certificate)
    # jointly infeasible: name the first raised bound that the certificate uses
    cert = augmented.certificate
    assert cert is not None
    raised = [b.members[0] for b, _ in cert.terms if len(b.members) == 1 and not b.witness]
    agent = raised[0] if raised else 0
    return Compatibility("violation", es, agent, caps[agent], cert)
