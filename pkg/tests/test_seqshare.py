import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from tcg.axioms import check_i4oa, check_oir, check_se
from tcg.basis import build_system, solve
from tcg.fixtures import fixture, remark_tables
from tcg.game import SolutionTable, space
from tcg.seqshare import Policy, check_membership, improvize, run_seqshare

from conftest import monotone_games, table


def three_properties(v, phi):
    return (
        check_oir(v, phi, include_arrivals=True).holds
        and check_i4oa(v, phi).holds
        and check_se(v, phi).holds
    )


def test_sanchez_all_policies():
    v = fixture("sanchez")
    for p in Policy:
        phi = run_seqshare(v, p)
        assert phi((0,)) == (1, 0) and phi((1,)) == (0, 1)
        assert phi((0, 1)) == (1, 0) and phi((1, 0)) == (1, 1)


def test_policies_differ_somewhere():
    v = fixture("counter-general", 10, 3)
    tables = {p: run_seqshare(v, p) for p in Policy}
    assert len({t.payoffs for t in tables.values()}) > 1
    for t in tables.values():
        assert check_membership(v, t).certified


def test_no_basis_returns_none():
    assert run_seqshare(fixture("counter-general", 7, 4)) is None


def test_explicit_basis_point():
    v = fixture("sec3-example")
    phi = run_seqshare(v, Policy.NEWCOMER_FIRST, x=(2, 1))
    assert phi((1, 0)) == (2, 1)
    assert check_membership(v, phi).certified
    with pytest.raises(ValueError):
        run_seqshare(v, x=(3, 0))


def test_improvize_policies():
    cap = (F(2), F(3), F(4))
    cur = (F(1), F(0), F(0))
    # agent 3 joins (1); headroom: agent 1 has 1, newcomer 3 has 4
    assert improvize(2, (0,), cur, cap, F(2), Policy.NEWCOMER_FIRST) == (0, 0, 2)
    assert improvize(2, (0,), cur, cap, F(2), Policy.EARLIEST_FIRST) == (1, 0, 1)
    assert improvize(2, (0,), cur, cap, F(2), Policy.PROPORTIONAL_HEADROOM) == (F(2, 5), 0, F(8, 5))
    with pytest.raises(AssertionError):
        improvize(2, (0,), cur, cap, F(6))
    with pytest.raises(AssertionError):
        improvize(2, (0,), cur, cap, F(-1))


def test_improvize_accepts_policy_names():
    assert improvize(1, (0,), (F(0), F(0)), (F(1), F(1)), F(1), "earliest-first") == (1, 0)
    with pytest.raises(ValueError):
        improvize(1, (0,), (F(0), F(0)), (F(1), F(1)), F(1), "largest-first")


def test_membership_reasons():
    v = fixture("sec3-example")
    tabs = remark_tables()
    assert check_membership(v, tabs["phi"]).reason == "first-arrival"
    assert check_membership(v, tabs["phi'"]).reason == "decrease"
    assert check_membership(v, tabs["phi''"]).reason == "headroom"
    outside = run_seqshare(v).replace((0,), (1, 1))
    m = check_membership(v, outside)
    assert m.reason == "support" and m.sequence == (0,)


def test_membership_rejects_non_basis_top():
    v = fixture("sec3-example")
    phi = SolutionTable.from_mapping(2, {(0,): (1, 0), (1,): (0, 1), (0, 1): (1, 1), (1, 0): (0, 3)})
    assert check_membership(v, phi).reason == "basis"


@settings(max_examples=150, deadline=None)
@given(monotone_games(min_n=1, max_n=3))
def test_outputs_certified_and_satisfy_properties(v):
    for p in Policy:
        phi = run_seqshare(v, p)
        if phi is None:
            assert not solve(build_system(v)).feasible
            continue
        assert check_membership(v, phi).certified
        assert three_properties(v, phi)


@settings(max_examples=60, deadline=None)
@given(monotone_games(min_n=2, max_n=3, top=3))
def test_every_single_mutation_is_caught(v):
    phi = run_seqshare(v)
    if phi is None:
        return
    for k, seq in enumerate(phi.space.sequences[1:], start=1):
        for a in range(v.n):
            row = list(phi.payoffs[k])
            row[a] += 1
            bad = phi.replace(seq, row)
            assert not check_membership(v, bad).certified
            if a in seq:
                assert not three_properties(v, bad)


def _supported_tables(v, grid):
    """Every table on two agents with zero payoffs outside each sequence and entries from grid."""
    sp = space(2)
    free = [(k, a) for k in range(1, len(sp)) for a in sp.sequences[k]]
    for vals in itertools.product(grid, repeat=len(free)):
        rows = [[F(0), F(0)] for _ in sp.sequences]
        for (k, a), x in zip(free, vals):
            rows[k][a] = x
        yield SolutionTable(2, tuple(tuple(r) for r in rows))


def test_grid_membership_equals_properties_n2():
    grid = [F(x) for x in range(-1, 4)]
    v = table(2, {"1": 1, "2": 1, "12": 2, "21": 3})
    certified = 0
    for phi in _supported_tables(v, grid):
        assert check_membership(v, phi).certified == three_properties(v, phi)
        certified += check_membership(v, phi).certified
    assert certified > 0


def test_grid_no_table_without_basis_n2():
    # v(1) + v(2) = 4 > 3 = v*: no basis solution. SE fixes the first arrivals,
    # so the split of each pair is the only freedom.
    v = table(2, {"1": 2, "2": 2, "12": 3, "21": 2})
    assert not solve(build_system(v)).feasible
    grid = [F(x, 4) for x in range(-8, 21)]
    found = []
    for a, b in itertools.product(grid, repeat=2):
        phi = SolutionTable.from_mapping(2, {(0,): (2, 0), (1,): (0, 2), (0, 1): (a, 3 - a), (1, 0): (2 - b, b)})
        if check_i4oa(v, phi).holds and check_oir(v, phi).holds:
            found.append(phi)
    assert found == []


def test_arrival_rule_is_needed_for_equivalence():
    # passes OIR (between present agents), I4OA and SE, yet the newcomer
    # starts below zero at (1 2), which SeqShare never does
    v = table(2, {"1": 0, "2": 0, "12": 0, "21": 1})
    phi = SolutionTable.from_mapping(2, {(0,): (0, 0), (1,): (0, 0), (0, 1): (1, -1), (1, 0): (1, 0)})
    assert check_oir(v, phi).holds and check_i4oa(v, phi).holds and check_se(v, phi).holds
    assert not check_oir(v, phi, include_arrivals=True).holds
    assert not check_membership(v, phi).certified
