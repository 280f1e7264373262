"""Worked example games and tables, transcribed with 1-based agent labels."""

from __future__ import annotations

from fractions import Fraction

from .game import SolutionTable, WorthTable

NAMES = (
    "sec3-example",
    "sanchez",
    "counter-general",
    "margsol-i4oa",
    "counter-simple",
    "counter-simple-amended",
)

# Sanchez-Bergantinos value of the "sanchez" game, kept only for comparison.
SANCHEZ_REFERENCE = (Fraction(3, 4), Fraction(3, 4))


def _table(n: int, rows: dict[str, object]) -> WorthTable:
    return WorthTable.from_mapping(n, {tuple(int(c) - 1 for c in key): w for key, w in rows.items()})


def _counter_general(a, b) -> WorthTable:
    return _table(3, {
        "1": 1, "12": 3, "123": a,
        "13": 4, "132": 6,
        "2": b, "21": 4, "213": 8,
        "23": 5, "231": 7,
        "3": 4, "31": 5, "312": a,
        "32": 5, "321": 7,
    })


_COUNTER_SIMPLE = {
    "1": 1, "12": 1, "123": 1,
    "13": 1, "132": 1,
    "2": 0, "21": 0, "213": 1,
    "23": 1, "231": 1,
    "3": 0, "31": 0, "312": 1,
    "32": 0, "321": 1,
}


def fixture(name: str, a=None, b=None) -> WorthTable:
    """Return a named example game.

    ``counter-general`` needs ``a`` (worth of 123 and 312) and ``b`` (worth
    of 2). ``counter-simple-amended`` is ``counter-simple`` with ``v(23) = 0``,
    the value under which that game has the basis solution ``(1, 0, 0)``.
    """
    if name == "sec3-example":
        return _table(2, {"1": 1, "2": 1, "12": 2, "21": 3})
    if name == "sanchez":
        return _table(2, {"1": 1, "2": 1, "12": 1, "21": 2})
    if name == "margsol-i4oa":
        return _table(2, {"1": 3, "2": 1, "12": 8, "21": 5})
    if name == "counter-general":
        if a is None or b is None:
            raise ValueError("counter-general needs both a and b")
        return _counter_general(Fraction(a), Fraction(b))
    if name == "counter-simple":
        return _table(3, _COUNTER_SIMPLE)
    if name == "counter-simple-amended":
        return _table(3, {**_COUNTER_SIMPLE, "23": 0})
    raise ValueError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")


def remark_tables() -> dict[str, SolutionTable]:
    """The three hand-built tables on ``sec3-example`` that each miss one property.

    ``phi`` misses SE, ``phi'`` misses OIR, ``phi''`` misses I4OA.
    """
    def t(rows):
        return SolutionTable.from_mapping(2, {tuple(int(c) - 1 for c in k): r for k, r in rows.items()})

    return {
        "phi": t({"1": (0, 0), "2": (0, 0), "12": (0, 0), "21": (1, 2)}),
        "phi'": t({"1": (1, 0), "2": (0, 1), "12": (0, 2), "21": (1, 2)}),
        "phi''": t({"1": (1, 0), "2": (0, 1), "12": (2, 0), "21": (1, 2)}),
    }
