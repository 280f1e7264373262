"""Small worked cases for each operation."""

from fractions import Fraction as F

from tcg.axioms import (
    check_ee,
    check_enp,
    check_extshap_compat,
    check_i4oa,
    check_oir,
    check_sa,
    check_se,
    check_snp,
    check_ss,
    find_null_players,
    swap,
)
from tcg.basis import build_system, solve
from tcg.fixtures import fixture, remark_tables
from tcg.game import SolutionTable, WorthTable, enumerate_sequences, optimal_sequence, predecessor, prefix_of
from tcg.generators import GenSpec, generate
from tcg.seqshare import Policy, check_membership, improvize, run_seqshare
from tcg.shapley import (
    carrier_extshap,
    carrier_game,
    carrier_solution_margsol,
    carrier_worth,
    decompose,
    ext_shap,
    margsol,
    reduce,
)


def additive(n):
    return WorthTable.from_function(n, lambda s: len(s))


def test_enumeration_examples():
    assert list(enumerate_sequences(2)) == [(0,), (1,), (0, 1), (1, 0)]
    assert len(list(enumerate_sequences(3, exclude=[2]))) == 4
    assert len(list(enumerate_sequences(3))) == 15


def test_prefix_examples():
    assert prefix_of((0,), (0, 1))
    assert not prefix_of((0, 1), (0, 1))
    assert not prefix_of((1,), (0, 1))


def test_predecessor_examples():
    assert predecessor((1, 0, 2), 0) == (1,)
    assert predecessor((0, 1), 0) == ()
    assert predecessor((1, 2, 0), 2) == (1,)


def test_optimal_sequence_examples():
    assert optimal_sequence(fixture("sec3-example")) == (1, 0)
    assert optimal_sequence(fixture("sanchez")) == (1, 0)
    assert optimal_sequence(WorthTable.zero(2)) == (0, 1)


def test_basis_system_examples():
    sys = build_system(fixture("sec3-example"))
    assert [(b.members, b.bound) for b in sys.bounds] == [((0,), 1), ((1,), 1), ((0, 1), 3)]
    assert sys.total == 3
    sys = build_system(fixture("counter-general", 7, 3))
    assert [sys.bound((a,)).bound for a in range(3)] == [1, 3, 4] and sys.total == 8
    sys = build_system(WorthTable.zero(2))
    assert all(b.bound == 0 for b in sys.bounds) and sys.total == 0


def test_seqshare_examples():
    phi = run_seqshare(fixture("sec3-example"), Policy.NEWCOMER_FIRST)
    assert phi((0, 1)) == (1, 1) and phi((1, 0)) == (1, 2)
    zero = run_seqshare(WorthTable.zero(3))
    assert all(x == 0 for row in zero.payoffs for x in row)


def test_improvize_examples():
    # headrooms (1, 2): agent 1 already in, agent 2 is the newcomer with cap 2
    cur, cap = (F(0), F(0)), (F(1), F(2))
    assert improvize(1, (0,), cur, cap, F(1), Policy.NEWCOMER_FIRST) == (0, 1)
    for p in Policy:
        assert improvize(1, (0,), cur, cap, F(3), p) == (1, 2)
    assert improvize(1, (0,), cur, (F(2), F(2)), F(2), Policy.PROPORTIONAL_HEADROOM) == (1, 1)


def test_membership_examples():
    v = fixture("sec3-example")
    m = check_membership(v, remark_tables()["phi'"])
    assert not m.certified and m.reason == "decrease" and m.sequence == (0, 1)
    m = check_membership(v, remark_tables()["phi''"])
    assert not m.certified and m.reason == "headroom" and m.sequence == (0, 1)


def test_margsol_examples():
    v = generate(GenSpec(3, "monotone", 11, 9))
    phi = margsol(v)
    for i in range(3):
        assert phi((i,))[i] == v((i,))
    assert margsol(fixture("sec3-example"))((1, 0)) == (2, 1)


def test_extshap_and_reduce_examples():
    assert ext_shap(fixture("margsol-i4oa")) == (F(7, 2), F(3))
    zero = SolutionTable(2, ((F(0), F(0)),) * 5)
    assert reduce(zero) == (0, 0)


def test_carrier_examples():
    assert carrier_worth((0,), (0, 1)) == 1
    assert carrier_worth((0, 1), (0, 1)) == 1
    assert carrier_worth((1,), (0, 1)) == 0
    d = decompose(fixture("sec3-example"))
    assert [d.coefficient(s) for s in [(0,), (1,), (0, 1), (1, 0)]] == [1, 1, 1, 2]
    assert all(c == 0 for c in decompose(WorthTable.zero(3)).coefficients)
    phi = carrier_solution_margsol((0, 1), 3)
    assert phi((0, 1, 2)) == (0, 1, 0)
    assert all(row[0] == 0 and row[2] == 0 for row in phi.payoffs)
    phi = carrier_solution_margsol((0,), 3, 5)
    assert all(phi(s)[0] == 5 for s in enumerate_sequences(3) if s[0] == 0)
    assert carrier_extshap((0, 1), 3)[1] == F(1, 6)
    assert carrier_extshap((0,), 2)[0] == F(1, 2)
    assert ext_shap(carrier_game((0,), 2)) == (F(1, 2), 0)


def test_additivity_examples():
    def even_split(v):
        rows = [tuple(v(s) / len(s) if a in s and s else F(0) for a in range(v.n)) for s in v.space.sequences]
        return SolutionTable(v.n, tuple(rows))

    def clamped(v):
        m = margsol(v)
        return SolutionTable(v.n, tuple(tuple(min(x, F(1)) for x in row) for row in m.payoffs))

    u, w = fixture("sec3-example"), fixture("sanchez")
    assert check_sa(even_split, u, w).holds
    r = check_sa(clamped, u, w)
    assert not r.holds and not r.witnesses[0].holds()


def test_null_player_examples():
    assert find_null_players(carrier_game((0, 1), 3)) == {0, 2}
    assert find_null_players(additive(3)) == set()
    assert find_null_players(WorthTable.zero(3)) == {0, 1, 2}
    for base in enumerate_sequences(3):
        u = carrier_game(base, 3)
        assert check_enp(u, ext_shap(u)).holds
    v = carrier_game((0,), 2)
    eps = SolutionTable.from_mapping(2, {(0,): (1, 0), (1,): (0, 0), (0, 1): (1, F(1, 100)), (1, 0): (1, 0)})
    r = check_snp(v, eps)
    assert not r.holds and r.witnesses[0].sequences == ((0, 1),) and r.witnesses[0].agents == (1,)


def test_swap_examples():
    assert swap((0, 2), 0, 1) == (1, 2)
    assert swap((0, 1), 0, 1) == (1, 0)
    assert swap((2,), 0, 1) == (2,)


def test_symmetry_examples():
    v = additive(3)
    assert check_ss(v, margsol(v)).holds and not check_ss(v, margsol(v)).skipped
    s = fixture("sanchez")
    assert check_ss(s, margsol(s)).skipped == ((0, 1),)
    bad = margsol(v).replace((0, 1), (2, 0, 0))
    assert not check_ss(v, bad).holds


def test_efficiency_examples():
    v = fixture("sec3-example")
    assert not check_ee(v, (F(0), F(0))).holds
    for p in Policy:
        phi = run_seqshare(v, p)
        assert check_se(v, phi).holds and check_ee(v, reduce(phi)).holds


def test_i4oa_and_oir_examples():
    v = fixture("sec3-example")
    r = check_oir(v, remark_tables()["phi'"])
    w = r.witnesses[0]
    assert w.agents == (0,) and (w.lhs, w.rhs) == (1, 0)
    zero = WorthTable.zero(2)
    ztab = SolutionTable(2, ((F(0), F(0)),) * 5)
    assert check_oir(zero, ztab).holds and check_i4oa(zero, ztab).holds


def test_compat_example_symmetric():
    c = check_extshap_compat(additive(2))
    assert c.status == "compatible" and c.point == (1, 1) and c.extshap == (1, 1)
    assert solve(build_system(additive(2))).x == (1, 1)
