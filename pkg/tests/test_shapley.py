import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from tcg.fixtures import fixture
from tcg.game import enumerate_sequences, predecessor, space
from tcg.shapley import (
    carrier_extshap,
    carrier_game,
    carrier_solution_margsol,
    decompose,
    ext_shap,
    extends,
    margsol,
    reduce,
)

from conftest import signed_games


def margsol_by_definition(v, seq, i):
    if i not in seq:
        return F(0)
    pre = predecessor(seq, i)
    return v(pre + (i,)) - v(pre)


@settings(max_examples=150, deadline=None)
@given(signed_games(max_n=4))
def test_margsol_matches_definition(v):
    phi = margsol(v)
    for seq in enumerate_sequences(v.n):
        for i in range(v.n):
            assert phi(seq)[i] == margsol_by_definition(v, seq, i)


@settings(max_examples=150, deadline=None)
@given(signed_games(max_n=4))
def test_reduced_margsol_is_extshap(v):
    assert reduce(margsol(v)) == ext_shap(v)


def test_margsol_fixture():
    phi = margsol(fixture("margsol-i4oa"))
    assert phi((1, 0)) == (4, 1)
    assert phi((0, 1)) == (3, 5)
    assert phi((0,)) == (3, 0)
    assert phi((1,)) == (0, 1)


def test_extshap_fixtures():
    assert ext_shap(fixture("counter-general", 7, 3))[0] == F(8, 6)
    assert ext_shap(fixture("counter-simple"))[1] == F(1, 6)
    assert ext_shap(fixture("sanchez")) == (F(1), F(1, 2))


def test_extends_is_non_strict():
    assert extends((0,), (0,))
    assert extends((0,), (0, 2, 1))
    assert not extends((0, 2), (0,))
    assert not extends((1,), (0, 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("alpha", [F(1), F(3, 2), F(-2)])
def test_carrier_closed_forms(n, alpha):
    sp = space(n)
    for base in enumerate_sequences(n):
        u = carrier_game(base, n, alpha)
        d = decompose(u)
        for k, seq in enumerate(sp.sequences[1:], start=1):
            assert d.coefficients[k] == (alpha if seq == base else 0)
        assert carrier_solution_margsol(base, n, alpha) == margsol(u)
        expect = alpha * F(math.factorial(n - len(base)), math.factorial(n))
        assert carrier_extshap(base, n, alpha) == ext_shap(u)
        assert ext_shap(u)[base[-1]] == expect


def test_carrier_needs_nonempty_base():
    with pytest.raises(ValueError):
        carrier_game((), 2)
    with pytest.raises(ValueError):
        carrier_extshap((), 2)


@settings(max_examples=100, deadline=None)
@given(signed_games(max_n=4))
def test_decompose_round_trip(v):
    d = decompose(v)
    assert d.reconstruct() == v
    total = None
    for k, seq in enumerate(v.space.sequences[1:], start=1):
        c = d.coefficients[k]
        if c:
            g = carrier_game(seq, v.n, c)
            total = g if total is None else total + g
    if total is not None:
        assert total == v


def test_reduce_only_reads_full_sequences():
    v = fixture("sanchez")
    phi = margsol(v)
    changed = phi.replace((0,), (9, 0))
    assert reduce(changed) == reduce(phi)


def test_extshap_is_permutation_average():
    v = fixture("counter-general", 7, 3)
    acc = [F(0)] * 3
    for order in itertools.permutations(range(3)):
        for pos, a in enumerate(order):
            acc[a] += v(order[: pos + 1]) - v(order[:pos])
    assert tuple(x / 6 for x in acc) == ext_shap(v)
