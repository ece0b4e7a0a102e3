import pytest

from toricell.matchings import (
    MatchingError,
    build_pi,
    dimer_matching_audit,
    extremal_matching,
    perfect_matchings,
    simple_cycles,
    weight_zero_check,
)
from toricell.superpotential import superpotential
from toricell.variety import AbelianGroupData, mckay_toric_data
from toricell.quiver import build_quiver


def test_pi_rank(quiver_four_sheaves):
    pi = build_pi(quiver_four_sheaves)
    # n + r = 3 + 3 for four vertices
    assert pi.rank == 6
    assert pi.ambient == 8


def test_extremal_matching_values_are_label_multiplicities(quiver_four_sheaves):
    Q = quiver_four_sheaves
    for rho in range(Q.d):
        m = extremal_matching(Q, rho)
        assert m.values == tuple(a.label[rho] for a in Q.arrows)
        assert m.is_extremal()
    with pytest.raises(MatchingError):
        extremal_matching(Q, Q.d)


def test_perfect_matchings_count_and_extremals(quiver_four_sheaves):
    Q = quiver_four_sheaves
    ms = perfect_matchings(Q)
    assert len(ms) == 8
    extremal = {m.extremal_ray: m for m in ms if m.is_extremal()}
    assert sorted(extremal) == [0, 1, 2, 3]
    # the matching of the first ray is supported on a1, a6, a9
    assert extremal[0].support == {0, 5, 8}


def test_labels_recovered_from_matchings(quiver_four_sheaves):
    Q = quiver_four_sheaves
    ms = perfect_matchings(Q)
    extremal = {m.extremal_ray: m for m in ms if m.is_extremal()}
    for a in Q.arrows:
        assert a.label == tuple(extremal[r].values[a.idx] for r in range(Q.d))


def test_dimer_audit(quiver_four_sheaves):
    Q = quiver_four_sheaves
    W = superpotential(Q)
    rep = dimer_matching_audit(Q, W, perfect_matchings(Q))
    assert rep.passed


def test_simple_cycles_trivial_quiver(quiver_trivial_a3):
    cycles = simple_cycles(quiver_trivial_a3)
    assert sorted(cycles) == [(0,), (1,), (2,)]


def test_weight_zero_slice(quiver_four_sheaves, quiver_conifold):
    for Q in (quiver_four_sheaves, quiver_conifold):
        rep = weight_zero_check(Q)
        assert rep.matches
        assert rep.cycle_generators == rep.semigroup_basis


def test_weight_zero_conifold_generators(quiver_conifold):
    rep = weight_zero_check(quiver_conifold)
    assert rep.cycle_generators == [
        (0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0)]


def test_weight_zero_mckay(mckay_z6_group):
    X, coll = mckay_toric_data(mckay_z6_group)
    Q = build_quiver(X, coll)
    rep = weight_zero_check(Q)
    assert rep.matches


def test_matchings_conifold(quiver_conifold):
    ms = perfect_matchings(quiver_conifold)
    assert len(ms) == 4
    assert all(m.is_extremal() for m in ms)
    rep = dimer_matching_audit(
        quiver_conifold, superpotential(quiver_conifold), ms)
    assert rep.passed
