from fractions import Fraction

from hypothesis import strategies as st

from tcg.game import WorthTable, space


@st.composite
def monotone_games(draw, min_n=1, max_n=3, top=5):
    n = draw(st.integers(min_n, max_n))
    sp = space(n)
    inc = draw(st.lists(st.integers(0, top), min_size=len(sp) - 1, max_size=len(sp) - 1))
    vals = [Fraction(0)] * len(sp)
    for k in range(1, len(sp)):
        vals[k] = vals[sp.parent[k]] + inc[k - 1]
    return WorthTable(n, tuple(vals))


@st.composite
def signed_games(draw, min_n=1, max_n=3, lo=-6, hi=6, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    sp = space(n)
    nums = draw(st.lists(st.integers(lo, hi), min_size=len(sp) - 1, max_size=len(sp) - 1))
    dens = draw(st.lists(st.sampled_from([1, 1, 1, 2, 3]), min_size=len(sp) - 1, max_size=len(sp) - 1))
    return WorthTable(n, (Fraction(0),) + tuple(Fraction(a, b) for a, b in zip(nums, dens)))


@st.composite
def game_pairs(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    return draw(signed_games(n=n)), draw(signed_games(n=n))


def table(n, rows):
    """Build a worth table from ``{"12": 3, ...}`` using 1-based digit keys."""
    return WorthTable.from_mapping(n, {tuple(int(c) - 1 for c in k): w for k, w in rows.items()})
