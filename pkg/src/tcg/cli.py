"""Command-line entry point: ``tcg <command> GAME [options]``.

GAME is a game-file path or ``fixture:<name>``. Results are JSON documents
on stdout (or ``--out``). A negative verdict (no basis, failed axiom) is a
successful computation and exits 0 unless ``--assert`` is given, in which
case it exits 1. Input and usage errors exit 2.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import axioms as ax
from .basis import build_system, solve
from .fixtures import NAMES, fixture
from .game import SolutionTable, WorthTable, label, validate
from .generators import KINDS, GenerationError, GenSpec, generate
from .io import (
    GameFormatError,
    parse_game,
    parse_rational,
    parse_solution,
    result_document,
    serialize_game,
    serialize_result,
    solution_payload,
)
from .repro import format_lines, run_claims
from .seqshare import Policy, check_membership, run_seqshare
from .shapley import decompose, ext_shap, margsol, reduce

USAGE_ERROR = 2
ASSERT_FAILED = 1


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _load_game(ref: str, args) -> WorthTable:
    if ref.startswith("fixture:"):
        name = ref.split(":", 1)[1]
        try:
            return fixture(name, args.a, args.b)
        except ValueError as e:
            raise UsageError(str(e)) from None
    try:
        text = Path(ref).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {ref}: {e.strerror}") from None
    try:
        return parse_game(text, allow_negative=args.allow_negative)
    except GameFormatError as e:
        raise UsageError(f"{ref}: {e}") from None


def _load_table(path: str, n: int) -> SolutionTable:
    try:
        phi = parse_solution(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except GameFormatError as e:
        raise UsageError(f"{path}: {e}") from None
    if phi.n != n:
        raise UsageError(f"{path}: table has {phi.n} agents, game has {n}")
    return phi


def _agents(values) -> dict:
    return {str(i + 1): x for i, x in enumerate(values)}


def _witness(w: ax.Witness) -> dict:
    return {
        "sequences": [label(s) for s in w.sequences],
        "agents": [a + 1 for a in w.agents],
        "lhs": w.lhs,
        "relation": w.relation,
        "rhs": w.rhs,
        "note": w.note,
        "text": str(w),
    }


def _report(r: ax.AxiomReport) -> dict:
    return {
        "holds": r.holds,
        "witnesses": [_witness(w) for w in r.witnesses],
        "skipped_pairs": [[i + 1, j + 1] for i, j in r.skipped],
    }


def _certificate(cert) -> dict | None:
    if cert is None:
        return None
    return {
        "terms": [
            {
                "agents": [a + 1 for a in b.members],
                "bound": b.bound,
                "witness": label(b.witness) if b.witness else None,
                "weight": w,
            }
            for b, w in cert.terms
        ],
        "value": cert.value,
        "total": cert.total,
        "text": str(cert),
    }


def _policy(name: str) -> Policy:
    try:
        return Policy(name)
    except ValueError:
        raise UsageError(f"unknown policy {name!r}; expected one of {', '.join(p.value for p in Policy)}") from None


def _concept_table(args, v: WorthTable):
    """Table of the requested concept, or None when SeqShare has no basis."""
    if getattr(args, "table", None):
        return _load_table(args.table, v.n)
    try:
        concept = ax.resolve_concept(args.concept)
    except ValueError as e:
        raise UsageError(str(e)) from None
    out = concept(v)
    return out if isinstance(out, SolutionTable) or out is None else None


# each command returns (payload, verdict); verdict False triggers --assert


def cmd_validate(args, v):
    r = validate(v)
    payload = {
        "monotone": r.monotone,
        "convex": r.convex,
        "simple": r.simple,
        "violations": [
            {"kind": x.kind, "sequences": [label(s) for s in x.sequences], "description": x.description}
            for x in r.violations
        ],
    }
    return payload, r.monotone


def cmd_basis(args, v):
    order = None
    if args.order:
        try:
            order = [int(t) - 1 for t in args.order.split(",")]
        except ValueError:
            raise UsageError("--order takes comma-separated agent ids") from None
        if sorted(order) != list(range(v.n)):
            raise UsageError(f"--order must be a permutation of 1..{v.n}")
    out = solve(build_system(v), order)
    if out.feasible:
        return {"status": "feasible", "x": _agents(out.x)}, True
    return {"status": "infeasible", "certificate": _certificate(out.certificate)}, False


def cmd_seqshare(args, v):
    phi = run_seqshare(v, _policy(args.policy))
    if phi is None:
        return {"status": "no-basis", "policy": args.policy}, False
    return {"status": "table", "policy": args.policy, "table": solution_payload(phi)}, True


def cmd_membership(args, v):
    phi = _load_table(args.table, v.n)
    m = check_membership(v, phi)
    payload = {
        "certified": m.certified,
        "reason": m.reason,
        "sequence": label(m.sequence) if m.sequence is not None else None,
        "detail": m.detail,
    }
    return payload, m.certified


def cmd_margsol(args, v):
    return {"table": solution_payload(margsol(v))}, True


def cmd_extshap(args, v):
    return {"extshap": _agents(ext_shap(v))}, True


def cmd_reduce(args, v):
    phi = _concept_table(args, v)
    if phi is None:
        return {"status": "no-basis"}, False
    return {"status": "reduced", "vector": _agents(reduce(phi))}, True


def cmd_decompose(args, v):
    d = decompose(v)
    coeffs = {label(s): c for s, c in zip(v.space.sequences[1:], d.coefficients[1:])}
    return {"coefficients": coeffs}, True


def cmd_axioms(args, v):
    names = [c.strip().upper() for c in args.check.split(",") if c.strip()]
    unknown = [c for c in names if c not in ax.SEQUENTIAL + ax.EXTENDED]
    if unknown:
        raise UsageError(f"unknown axiom(s) {', '.join(unknown)}; known: {', '.join(ax.SEQUENTIAL + ax.EXTENDED)}")
    if {"SA", "EA"} & set(names):
        if not args.with_game:
            raise UsageError("SA and EA need a second game (--with GAME)")
        if args.table:
            raise UsageError("SA and EA need a concept, not a fixed --table")
    vector_only = args.concept in ("ext_shap", "extshap") and not args.table
    if vector_only:
        table_axioms = [c for c in names if c in ax.SEQUENTIAL]
        if table_axioms:
            raise UsageError(f"{', '.join(table_axioms)} need a solution table; ext_shap is a single vector")
        phi, psi = None, ext_shap(v)
    else:
        phi = _concept_table(args, v)
        if phi is None:
            return {"status": "no-basis", "concept": args.concept}, False
        psi = reduce(phi)
    reports = {}
    for name in names:
        if name == "OIR":
            r = ax.check_oir(v, phi, include_arrivals=args.strict_oir)
        elif name == "SE":
            r = ax.check_se(v, phi)
        elif name == "I4OA":
            r = ax.check_i4oa(v, phi)
        elif name == "SNP":
            r = ax.check_snp(v, phi)
        elif name == "SS":
            r = ax.check_ss(v, phi)
        elif name == "EE":
            r = ax.check_ee(v, psi)
        elif name == "ENP":
            r = ax.check_enp(v, psi)
        elif name == "ES":
            r = ax.check_es(v, psi)
        else:
            w = _load_game(args.with_game, args)
            if w.n != v.n:
                raise UsageError("--with game has a different agent count")
            concept = ax.resolve_concept(args.concept)
            if name == "EA" and not vector_only:
                base = concept
                concept = lambda g: None if base(g) is None else reduce(base(g))  # noqa: E731
            try:
                r = (ax.check_sa if name == "SA" else ax.check_ea)(concept, v, w)
            except ValueError as e:
                reports[name] = {"holds": None, "error": str(e)}
                continue
        reports[name] = _report(r)
    payload = {"concept": "table" if args.table else args.concept, "reports": reports}
    return payload, all(r["holds"] for r in reports.values())


def cmd_compat(args, v):
    c = ax.check_extshap_compat(v)
    payload = {
        "status": c.status,
        "extshap": _agents(c.extshap),
        "agent": c.agent + 1 if c.agent is not None else None,
        "cap": c.cap,
        "certificate": _certificate(c.certificate),
        "point": _agents(c.point) if c.point is not None else None,
    }
    return payload, c.status == "compatible"


COMMANDS = {
    "validate": (cmd_validate, "game class checks (monotone, convex, simple)"),
    "basis": (cmd_basis, "lexicographically minimal basis solution or an infeasibility certificate"),
    "seqshare": (cmd_seqshare, "SeqShare table under an Improvize policy"),
    "membership": (cmd_membership, "certify that a solution table is a SeqShare output"),
    "margsol": (cmd_margsol, "marginal-contribution solution table"),
    "extshap": (cmd_extshap, "extended Shapley vector"),
    "reduce": (cmd_reduce, "average a solution table over the full-length sequences"),
    "decompose": (cmd_decompose, "carrier-game coefficients"),
    "axioms": (cmd_axioms, "check axioms for a concept or a table"),
    "compat": (cmd_compat, "can a basis solution pay everyone their extended value"),
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcg", description="Temporal cooperative games: solutions and axiom checks.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=_rational, help="worth of (1 2 3) and (3 1 2) for counter-general")
    common.add_argument("--b", type=_rational, help="worth of (2) for counter-general")
    common.add_argument("--allow-negative", action="store_true", help="accept negative worths in game files")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--assert", dest="assert_", action="store_true",
                        help="exit 1 when the verdict is negative")

    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("game", help="game file or fixture:<name>")
        if name == "basis":
            sp.add_argument("--order", help="lexicographic order of coordinates, e.g. 2,1,3")
        if name == "seqshare":
            sp.add_argument("--policy", default=Policy.NEWCOMER_FIRST.value)
        if name in ("membership",):
            sp.add_argument("--table", required=True, help="solution table file")
        if name in ("reduce", "axioms"):
            sp.add_argument("--table", help="solution table file (instead of --concept)")
            sp.add_argument("--concept", default="margsol", help="margsol, ext_shap or seqshare[:policy]")
        if name == "axioms":
            sp.add_argument("--check", default=",".join(ax.SEQUENTIAL[:3]), help="comma-separated axiom names")
            sp.add_argument("--with", dest="with_game", help="second game for SA and EA")
            sp.add_argument("--strict-oir", action="store_true",
                            help="OIR also requires nonnegative payoffs on arrival")

    g = sub.add_parser("gen", parents=[common], help="write a seeded random game file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--class", dest="kind", default="monotone", choices=KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--scale", type=int, default=10)

    f = sub.add_parser("fixture", parents=[common], help="write a built-in example game file")
    f.add_argument("name", choices=NAMES)

    sub.add_parser("repro", parents=[common], help="check every claim about the built-in examples")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "gen":
        if args.n < 1 or args.scale < 0:
            raise UsageError("--n must be positive and --scale nonnegative")
        try:
            v = generate(GenSpec(args.n, args.kind, args.seed, args.scale))
        except (GenerationError, ValueError) as e:
            raise UsageError(str(e)) from None
        _emit(serialize_game(v), args.out)
        return 0
    if args.command == "fixture":
        _emit(serialize_game(_load_game("fixture:" + args.name, args)), args.out)
        return 0
    if args.command == "repro":
        results = run_claims()
        _emit("\n".join(format_lines(results)) + "\n", args.out)
        return ASSERT_FAILED if args.assert_ and not all(ok for _, ok, _ in results) else 0

    v = _load_game(args.game, args)
    handler = COMMANDS[args.command][0]
    payload, verdict = handler(args, v)
    params = {k: val for k, val in sorted(vars(args).items())
              if k not in ("command", "game", "out", "assert_") and val not in (None, False)}
    doc = result_document(args.command, v, args.game, params, payload)
    _emit(serialize_result(doc), args.out)
    return ASSERT_FAILED if args.assert_ and not verdict else 0


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except UsageError as e:
        print(f"tcg: error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
