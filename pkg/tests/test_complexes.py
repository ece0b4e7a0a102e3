import pytest

from toricell.complexes import (
    ComplexError,
    general_complex,
    mckay_complex,
    sign_infeasibility,
)
from toricell.intlinalg import vadd
from toricell.superpotential import relations, superpotential
from toricell.variety import AbelianGroupData


def check_divisor_additivity(complex_):
    """Every incidence satisfies left + div(facet) + right = div(parent)."""
    n = 0
    for inc in complex_.incidences:
        p = complex_.cells[inc.parent]
        f = complex_.cells[inc.facet]
        assert vadd(vadd(inc.left, f.divisor), inc.right) == p.divisor
        n += 1
    return n


def test_mckay_z6_counts_and_duality(mckay_z6_complex):
    C = mckay_z6_complex
    assert C.counts() == (6, 18, 18, 6)
    t = C.tau()
    assert all(t[t[c.id]] == c.id for c in C.cells)
    assert C.tau_antisymmetry_violations() == []
    assert C.face_poset_check().ok
    assert check_divisor_additivity(C) > 0


def test_mckay_z6_signs(mckay_z6_complex):
    C = mckay_z6_complex
    C.verify_signs(C.explicit_signs)
    sol = C.solve_incidence()
    assert sol.feasible
    C.verify_signs(sol.signs)


def test_mckay_z2():
    C = mckay_complex(AbelianGroupData.cyclic(2, (1, 1)))
    assert C.counts() == (2, 4, 2)
    assert C.face_poset_check().ok
    assert C.solve_incidence().feasible


def test_general_complex_dimension_three(quiver_four_sheaves):
    Q = quiver_four_sheaves
    W = superpotential(Q)
    C = general_complex(Q, W)
    assert C.counts() == (4, 10, 10, 4)
    t = C.tau()
    # tau swaps each arrow 1-cell with its dual 2-cell
    for c in C.by_dim[1]:
        d = C.cells[t[c.id]]
        assert d.payload[0] == "dual_arrow" and d.payload[1] == c.payload[1]
    assert C.tau_antisymmetry_violations() == []
    assert C.face_poset_check().ok
    assert C.solve_incidence().feasible
    assert check_divisor_additivity(C) > 0


def test_relation_count_must_match_arrows(quiver_five_sheaves):
    Q = quiver_five_sheaves
    with pytest.raises(ComplexError):
        general_complex(Q, superpotential(Q))


def test_sign_parity_all_arrows_two_colorable(quiver_four_sheaves):
    Q = quiver_four_sheaves
    W = superpotential(Q)
    rels = relations(Q, W)
    for a in Q.arrows:
        rep = sign_infeasibility(Q, W, rels, a.idx)
        assert rep.two_colorable
        assert rep.odd_cycle is None


def test_fourfold_complex(fourfold_pipeline):
    Q, W, rels, _ = fourfold_pipeline
    C = general_complex(Q, W, rels=rels)
    assert C.counts() == (8, 26, 36, 26, 8)
    assert C.tau_antisymmetry_violations() == []
    assert C.face_poset_check().ok
    assert C.solve_incidence().feasible
    assert check_divisor_additivity(C) > 0


def test_fourfold_odd_cycle(fourfold_pipeline):
    Q, W, rels, _ = fourfold_pipeline
    rep = sign_infeasibility(Q, W, rels, 22)
    assert not rep.two_colorable
    assert len(rep.odd_cycle) == 7
