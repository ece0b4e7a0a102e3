import random

from toricell.superpotential import (
    consistency,
    cyclic_canonical,
    derivative,
    derivative_via_terms,
    minimal_relations,
    relations,
    rewrite_neighbors,
    superpotential,
)


def pair_set(rels):
    return {frozenset(r.pair) for r in rels}


def test_cyclic_canonical_rotations():
    assert cyclic_canonical((3, 1, 2)) == (1, 2, 3)
    assert cyclic_canonical((2, 1, 2)) == (1, 2, 2)
    assert cyclic_canonical(()) == ()


def test_superpotential_terms(quiver_four_sheaves):
    W = superpotential(quiver_four_sheaves)
    want = {cyclic_canonical(t) for t in [
        (0, 3, 6, 7),   # a8 a7 a4 a1
        (1, 3, 5, 7),   # a8 a6 a4 a2
        (1, 4, 8),      # a9 a5 a2
        (2, 6, 8),      # a9 a7 a3
        (2, 5, 9),      # a10 a6 a3
        (0, 4, 9),      # a10 a5 a1
    ]}
    assert set(W.terms) == want


def test_derivative_agrees_with_term_scan(quiver_four_sheaves):
    Q = quiver_four_sheaves
    W = superpotential(Q)
    for a in Q.arrows:
        D1 = sorted(derivative(Q, (a.idx,)))
        D2 = sorted(derivative_via_terms(Q, W, (a.idx,)))
        assert D1 == D2
    # a two-arrow path and the trivial path
    assert sorted(derivative(Q, (0, 3))) == sorted(
        derivative_via_terms(Q, W, (0, 3)))
    assert sorted(derivative(Q, (), base_vertex=0)) == sorted(
        derivative_via_terms(Q, W, (), base_vertex=0))


def test_relations_match_displayed_ideal(quiver_four_sheaves):
    rels = relations(quiver_four_sheaves, superpotential(quiver_four_sheaves))
    displayed = {
        frozenset(p) for p in [
            (((2, 5)), ((0, 4))), (((2, 6)), ((1, 4))),
            ((0, 3, 6), (1, 3, 5)), ((8, 2), (7, 0, 3)),
            ((9, 2), (7, 1, 3)), ((8, 1), (9, 0)),
            ((6, 7, 0), (5, 7, 1)), ((6, 8), (5, 9)),
            ((3, 5, 7), (4, 8)), ((4, 9), (3, 6, 7)),
        ]}
    assert pair_set(rels) == displayed


def test_minimal_relations_equal_derivative_relations(quiver_four_sheaves):
    rels = relations(quiver_four_sheaves, superpotential(quiver_four_sheaves))
    mins = minimal_relations(quiver_four_sheaves)
    assert pair_set(mins) == pair_set(rels)


def test_consistency_verdict_positive(quiver_four_sheaves):
    Q = quiver_four_sheaves
    rep = consistency(Q, superpotential(Q), bound=2)
    assert rep.consistent
    assert rep.n_relations == 10
    assert not rep.witnesses


def test_inconsistent_collection(quiver_three_sheaves):
    Q = quiver_three_sheaves
    W = superpotential(Q)
    assert {Q.pretty_path(t) for t in W.terms} == {
        "a9a3", "a7a4a1", "a6a4a2"}
    rep = consistency(Q, W, bound=2)
    assert not rep.consistent
    # the x4^2 label on a5 fails the divisibility requirement
    assert set(rep.quick_reject_arrows) == {4, 7, 9}
    # the bucket of a6a3 and a5a1 is not identified
    assert any((i, j, div) == (0, 0, (1, 0, 0, 2))
               for i, j, div, _, _ in rep.witnesses)


def test_larger_consistent_collection(quiver_five_sheaves):
    Q = quiver_five_sheaves
    W = superpotential(Q)
    assert len(W) == 8
    rels = relations(Q, W)
    assert len(rels) == 10
    displayed = {
        frozenset(p) for p in [
            ((0, 4), (2, 5)), ((0, 3, 6), (1, 3, 5)), ((1, 4), (2, 6)),
            ((5, 9), (7, 10)), ((5, 8, 11), (6, 8, 10)),
            ((6, 9), (7, 11)), ((3, 7), (4, 8)),
        ]}
    assert displayed <= pair_set(rels)
    rep = consistency(Q, W, bound=2)
    assert rep.consistent


def test_conifold_consistency(quiver_conifold):
    Q = quiver_conifold
    W = superpotential(Q)
    assert len(W) == 2
    rep = consistency(Q, W, bound=2)
    assert rep.consistent


def check_rewrite_steps(Q, steps=10000, seed=20240820):
    """Random single-step rewrites preserve head, tail and divisor."""
    W = superpotential(Q)
    rules = [r.pair for r in relations(Q, W)]
    rng = random.Random(seed)
    pool = []
    for i in range(Q.n_vertices):
        for _head, p in Q.paths_from(i, tuple(2 * x for x in Q.ones)):
            if p:
                pool.append(p)
    done = 0
    while done < steps:
        p = pool[rng.randrange(len(pool))]
        nbrs = rewrite_neighbors(p, rules)
        for q in nbrs:
            assert Q.path_div(q) == Q.path_div(p)
            assert Q.arrows[q[0]].tail == Q.arrows[p[0]].tail
            assert Q.arrows[q[-1]].head == Q.arrows[p[-1]].head
            done += 1
        if not nbrs:
            done += 1
    return done


def test_rewrites_preserve_path_class(quiver_four_sheaves):
    assert check_rewrite_steps(quiver_four_sheaves, steps=10000) >= 10000
