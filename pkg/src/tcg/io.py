"""Text formats: game files, solution-table files and JSON result documents.

Game file (1-based agent ids)::

    tcg 1
    agents 2
    1 = 1
    2 = 1
    1 2 = 2
    2 1 = 3

Blank lines and lines starting with ``#`` are ignored on input. Worths are
``p``, ``-p`` or ``p/q`` with integer ``p`` and positive ``q``; decimals are
rejected. Serialization lists sequences in canonical order with rationals
in lowest terms.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from typing import Any

from .game import SolutionTable, WorthTable, label, space

GAME_TAG = "tcg"
SOLUTION_TAG = "tcg-solution"
FORMAT_VERSION = "1"
RESULT_SCHEMA = "tcg-result/1"

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?\Z")


class GameFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class IncompleteGameError(GameFormatError):
    def __init__(self, missing: list[tuple[int, ...]]):
        self.missing = missing
        shown = ", ".join(f'"{label(s)}"' for s in missing[:10])
        more = f" (+{len(missing) - 10} more)" if len(missing) > 10 else ""
        super().__init__(f"missing {len(missing)} sequence line(s): {shown}{more}")


class DuplicateSequenceError(GameFormatError):
    pass


def format_rational(x: Fraction | int) -> str:
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational of the form p or p/q: {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError("zero denominator")
    return Fraction(text)


def _content_lines(text: str):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        stripped = line.lstrip()
        if not stripped or stripped.startswith("#"):
            continue
        yield num, line


def _header(lines, tag: str) -> int:
    try:
        num, line = next(lines)
    except StopIteration:
        raise GameFormatError("empty input") from None
    if line.split() != [tag, FORMAT_VERSION]:
        raise GameFormatError(f"expected header '{tag} {FORMAT_VERSION}'", num, 1)
    try:
        num, line = next(lines)
    except StopIteration:
        raise GameFormatError("missing 'agents' line") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != "agents" or not parts[1].isdigit():
        raise GameFormatError("expected 'agents <n>'", num, 1)
    n = int(parts[1])
    if not 1 <= n <= 8:
        raise GameFormatError(f"agent count must be between 1 and 8, got {n}", num, line.index(parts[1]) + 1)
    return n


def _entries(lines, n: int, width: int | None):
    """Yield (line, sequence, values) for ``ids = values`` lines."""
    for num, line in lines:
        if "=" not in line:
            raise GameFormatError("expected '<agents> = <value>'", num, 1)
        eq = line.index("=")
        lhs, rhs = line[:eq], line[eq + 1:]
        seq = []
        for m in re.finditer(r"\S+", lhs):
            tok = m.group()
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise GameFormatError(f"bad agent id {tok!r}", num, m.start() + 1)
            a = int(tok) - 1
            if a in seq:
                raise GameFormatError(f"agent {tok} repeated in sequence", num, m.start() + 1)
            seq.append(a)
        if not seq:
            raise GameFormatError("empty sequence", num, 1)
        values = []
        for m in re.finditer(r"\S+", rhs):
            try:
                values.append(parse_rational(m.group()))
            except ValueError as e:
                raise GameFormatError(str(e), num, eq + 2 + m.start()) from None
        expected = 1 if width is None else width
        if len(values) != expected:
            raise GameFormatError(f"expected {expected} value(s), got {len(values)}", num, eq + 2)
        yield num, tuple(seq), values


def _collect(entries, n: int):
    sp = space(n)
    seen: dict[tuple[int, ...], int] = {}
    rows = {}
    for num, seq, values in entries:
        if seq in seen:
            raise DuplicateSequenceError(f'sequence "{label(seq)}" already given on line {seen[seq]}', num, 1)
        seen[seq] = num
        rows[seq] = values
    missing = [s for s in sp.sequences[1:] if s not in rows]
    if missing:
        raise IncompleteGameError(missing)
    return rows


def parse_game(text: str, allow_negative: bool = False) -> WorthTable:
    """Parse a game file.

    Negative worths are rejected unless ``allow_negative`` (needed for game
    differences and other non-monotone inputs).
    """
    lines = _content_lines(text)
    n = _header(lines, GAME_TAG)
    entries = []
    for num, seq, values in _entries(lines, n, None):
        if values[0] < 0 and not allow_negative:
            raise GameFormatError(f"negative worth {values[0]} (use allow_negative for signed games)", num)
        entries.append((num, seq, values))
    rows = _collect(entries, n)
    return WorthTable.from_mapping(n, {s: vals[0] for s, vals in rows.items()})


def serialize_game(v: WorthTable) -> str:
    out = [f"{GAME_TAG} {FORMAT_VERSION}", f"agents {v.n}"]
    out.extend(f"{label(seq)} = {format_rational(w)}" for seq, w in v.items())
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> SolutionTable:
    lines = _content_lines(text)
    n = _header(lines, SOLUTION_TAG)
    rows = _collect(_entries(lines, n, n), n)
    return SolutionTable.from_mapping(n, rows)


def serialize_solution(phi: SolutionTable) -> str:
    """One line per sequence; agents outside the sequence are written as explicit zeros."""
    out = [f"{SOLUTION_TAG} {FORMAT_VERSION}", f"agents {phi.n}"]
    out.extend(f"{label(seq)} = {' '.join(format_rational(x) for x in row)}" for seq, row in phi.items())
    return "\n".join(out) + "\n"


def game_hash(v: WorthTable) -> str:
    return "sha256:" + hashlib.sha256(serialize_game(v).encode()).hexdigest()


def encode(obj: Any) -> Any:
    """Convert rationals to strings recursively; floats are refused."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, float):
        raise TypeError(f"floating-point value {obj!r} in result document")
    if isinstance(obj, (int, Fraction)):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): encode(x) for k, x in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__} in result document")


def result_document(operation: str, game: WorthTable | None, source: str | None,
                    parameters: dict, payload: dict) -> dict:
    doc = {
        "schema": RESULT_SCHEMA,
        "operation": operation,
        "parameters": encode(parameters),
        "payload": encode(payload),
    }
    if game is not None:
        doc["game"] = {"agents": game.n, "hash": game_hash(game), "source": source}
    return doc


def serialize_result(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _reject_float(text: str):
    raise ValueError(f"floating-point value {text} in result document")


def parse_result(text: str) -> dict:
    doc = json.loads(text, parse_float=_reject_float)
    if not isinstance(doc, dict) or doc.get("schema") != RESULT_SCHEMA:
        raise ValueError(f"not a {RESULT_SCHEMA} document")
    return doc


def solution_payload(phi: SolutionTable) -> dict:
    return {label(seq): list(row) for seq, row in phi.items()}
