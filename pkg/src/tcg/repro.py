"""Claims about the built-in example games, checked one by one.

Each claim is a short id, a description and a zero-argument check. Running
them prints one ``PASS``/``FAIL`` line per claim in a fixed order, so the
output is byte-identical between runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .axioms import check_extshap_compat, check_i4oa, check_oir, check_se
from .basis import build_system, solve
from .fixtures import fixture, remark_tables
from .game import validate
from .seqshare import Policy, check_membership, run_seqshare
from .shapley import ext_shap, margsol, reduce

F = Fraction


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    check: Callable[[], bool]


def _sanchez_tables() -> bool:
    v = fixture("sanchez")
    want = {(0,): (1, 0), (1,): (0, 1), (0, 1): (1, 0), (1, 0): (1, 1)}
    for policy in Policy:
        phi = run_seqshare(v, policy)
        if phi is None or any(phi(s) != tuple(map(F, r)) for s, r in want.items()):
            return False
    return True


def _sanchez_reduce() -> bool:
    v = fixture("sanchez")
    return all(reduce(run_seqshare(v, p)) == (1, F(1, 2)) for p in Policy)


def _general_point() -> bool:
    sys = build_system(fixture("counter-general", 7, 3))
    orders = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return all(solve(sys, o).x == (1, 3, 4) for o in orders)


def _general_compat() -> bool:
    r = check_extshap_compat(fixture("counter-general", 7, 3))
    return r.status == "violation" and r.agent == 0 and r.cap == 1 and r.extshap[0] == F(8, 6)


def _general_b4() -> bool:
    v = fixture("counter-general", 7, 4)
    out = solve(build_system(v))
    if not validate(v).convex or out.feasible:
        return False
    cert = out.certificate
    return cert.check(3) and sorted(b.bound for b, _ in cert.terms) == [1, 4, 4] and cert.total == 8


def _simple_basis() -> bool:
    return solve(build_system(fixture("counter-simple"))).x == (1, 0, 0)


def _simple_compat() -> bool:
    r = check_extshap_compat(fixture("counter-simple"))
    return r.status == "violation" and r.agent == 1


# (sequence, agent, printed value) for all eight entries of the example
MARGSOL_PRINTED = (
    ((0,), 0, 1), ((0,), 1, 0),
    ((1,), 1, 3), ((1,), 0, 0),
    ((1, 0), 0, 4), ((1, 0), 1, 1),
    ((0, 1), 0, 3), ((0, 1), 1, 5),
)


def _margsol_values() -> bool:
    phi = margsol(fixture("margsol-i4oa"))
    return all(phi(s)[a] == w for s, a, w in MARGSOL_PRINTED)


def _margsol_i4oa() -> bool:
    v = fixture("margsol-i4oa")
    r = check_i4oa(v, margsol(v))
    if r.holds:
        return False
    w = r.witnesses[0]
    return w.agents == (0,) and (w.lhs, w.rhs) == (3, 4)


def _remark(name: str, which: str) -> Callable[[], bool]:
    def run() -> bool:
        v = fixture("sec3-example")
        phi = remark_tables()[name]
        if which == "SE":
            r = check_se(v, phi)
            return not r.holds and ((0, 1),) in [w.sequences for w in r.witnesses]
        if which == "OIR":
            r = check_oir(v, phi)
            return not r.holds and r.witnesses[0].sequences == ((0,), (0, 1))
        r = check_i4oa(v, phi)
        return not r.holds and r.witnesses[0].agents == (0,)
    return run


def _remark_membership() -> bool:
    v = fixture("sec3-example")
    return not any(check_membership(v, phi).certified for phi in remark_tables().values())


def _sec3_seqshare() -> bool:
    v = fixture("sec3-example")
    return all(check_membership(v, run_seqshare(v, p)).certified for p in Policy)


CLAIMS: tuple[Claim, ...] = (
    Claim("sanchez-table", "sanchez: every policy gives (1)=(1,0) (2)=(0,1) (12)=(1,0) (21)=(1,1)", _sanchez_tables),
    Claim("sanchez-reduce", "sanchez: reduction is (1, 1/2)", _sanchez_reduce),
    Claim("general-b3-basis", "counter-general a=7 b=3: basis point (1,3,4) under every order", _general_point),
    Claim("general-b3-extshap", "counter-general a=7 b=3: ext_shap of agent 1 is 8/6",
          lambda: ext_shap(fixture("counter-general", 7, 3))[0] == F(8, 6)),
    Claim("general-b3-compat", "counter-general a=7 b=3: compat violation for agent 1, 1 < 8/6", _general_compat),
    Claim("general-b4-infeasible", "counter-general a=7 b=4: convex, no basis, certificate 1+4+4 > 8", _general_b4),
    Claim("simple-class", "counter-simple: simple game", lambda: validate(fixture("counter-simple")).simple),
    Claim("simple-basis", "counter-simple: basis point (1,0,0)", _simple_basis),
    Claim("simple-extshap", "counter-simple: ext_shap of agent 2 is 1/6",
          lambda: ext_shap(fixture("counter-simple"))[1] == F(1, 6)),
    Claim("simple-compat", "counter-simple: compat violation for agent 2", _simple_compat),
    Claim("margsol-values", "margsol-i4oa: margsol matches the eight printed entries", _margsol_values),
    Claim("margsol-i4oa", "margsol-i4oa: I4OA fails for agent 1, 3 < 4", _margsol_i4oa),
    Claim("remark-se", "sec3-example: phi fails SE at (1 2)", _remark("phi", "SE")),
    Claim("remark-oir", "sec3-example: phi' fails OIR at (1) -> (1 2)", _remark("phi'", "OIR")),
    Claim("remark-i4oa", "sec3-example: phi'' fails I4OA for agent 1", _remark("phi''", "I4OA")),
    Claim("remark-membership", "sec3-example: membership rejects phi, phi', phi''", _remark_membership),
    Claim("sec3-seqshare", "sec3-example: every policy's table is certified", _sec3_seqshare),
)


def run_claims() -> list[tuple[Claim, bool, str]]:
    out = []
    for claim in CLAIMS:
        try:
            ok, err = bool(claim.check()), ""
        except Exception as e:  # a crashing claim is reported, not raised
            ok, err = False, f"{type(e).__name__}: {e}"
        out.append((claim, ok, err))
    return out


def format_lines(results) -> list[str]:
    lines = []
    for claim, ok, err in results:
        line = f"{'PASS' if ok else 'FAIL'} [{claim.id}] {claim.description}"
        lines.append(line + (f" ({err})" if err else ""))
    return lines
