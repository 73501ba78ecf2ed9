import pytest

from qtd.action import census
from qtd.design import QDesign, QDesignParams, lambda_int, trivial_design
from qtd.errors import InvalidArguments, NotAnAutomorphismGroup, NotTactical
from qtd.subspace import contains, enumerate_subspaces, gaussian_binomial
from qtd.tactical import (
    Decomposition,
    coarsest_decomposition,
    incidence_matrices,
    induced_decomposition,
    singleton_decomposition,
    td_matrices,
)


def direct_rho_kappa(d, dec):
    """Definition-level counts from the first member of each class."""
    rho = [[sum(1 for B in bc if contains(B, vc[0])) for bc in dec.block_classes]
           for vc in dec.point_classes]
    kappa = [[sum(1 for P in vc if contains(bc[0], P)) for bc in dec.block_classes]
             for vc in dec.point_classes]
    return rho, kappa


def test_induced_order3_decomposition(order3_group):
    d = trivial_design(4, 3, 2, 3)
    dec = induced_decomposition(d, order3_group)
    assert dec.point_sizes == [3] * 5 and dec.block_sizes == [3] * 5
    td = td_matrices(d, dec)
    rho, kappa = direct_rho_kappa(d, dec)
    assert td.rho == rho and td.kappa == kappa
    # equal class sizes force rho = kappa; every row a permutation of {3,1,1,1,1}
    assert td.rho == td.kappa
    assert all(sorted(r) == [1, 1, 1, 1, 3] for r in td.rho)
    assert all(sorted(c) == [1, 1, 1, 1, 3] for c in zip(*td.rho))


def test_singleton_is_incidence_matrix():
    d = trivial_design(4, 2, 2, 2)
    dec = singleton_decomposition(d)
    td = td_matrices(d, dec)
    assert td.m == 15 and td.n == 35
    assert td.rho == td.kappa
    for i, P in enumerate(dec.point_classes):
        for j, B in enumerate(dec.block_classes):
            assert td.rho[i][j] == int(contains(B[0], P[0]))


def test_coarsest():
    d = trivial_design(5, 3, 2, 2)
    td = td_matrices(d, coarsest_decomposition(d))
    assert td.rho == [[lambda_int(d.params, 1)]]
    assert td.kappa == [[gaussian_binomial(3, 1, 2)]]


def test_not_tactical_witness():
    d = trivial_design(4, 3, 2, 3)
    pts = list(enumerate_subspaces(4, 1, 2))
    blocks = sorted(d.blocks)
    dec = Decomposition([pts[:5], pts[5:]], [blocks])
    with pytest.raises(NotTactical) as exc:
        td_matrices(d, dec)
    assert exc.value.witness["block_class"] == 0
    dec = Decomposition([pts], [blocks[:1], blocks[1:]])
    with pytest.raises(NotTactical) as exc:
        td_matrices(d, dec)
    assert exc.value.witness["point_class"] == 0


def test_bad_partitions():
    d = trivial_design(4, 3, 2, 3)
    pts = list(enumerate_subspaces(4, 1, 2))
    with pytest.raises(InvalidArguments):
        td_matrices(d, Decomposition([pts[1:]], [list(d.blocks)]))
    with pytest.raises(InvalidArguments):
        td_matrices(d, Decomposition([pts], [list(d.blocks[1:])]))
    with pytest.raises(InvalidArguments):
        td_matrices(d, Decomposition([pts, []], [list(d.blocks)]))


def test_not_automorphism_group(order3_group):
    d = QDesign(QDesignParams(1, 4, 3, 2, 1), (next(enumerate_subspaces(4, 3, 2)),))
    with pytest.raises(NotAnAutomorphismGroup):
        induced_decomposition(d, order3_group)


def test_multiset_blocks_counted(order3_group):
    full = trivial_design(4, 3, 2, 3)
    d = QDesign(QDesignParams(3, 4, 3, 2, 2), full.blocks * 2)
    dec = induced_decomposition(d, order3_group)
    assert dec.block_sizes == [6] * 5
    td = td_matrices(d, dec)
    assert all(sum(r) == 14 for r in td.rho)


def test_incidence_for_orbit_union(order3_group):
    # any union of block orbits gives a tactical decomposition, design or not
    orbs = census(order3_group, 3).classes()
    blocks = orbs[0] + orbs[3]
    pts = census(order3_group, 1).classes()
    td = incidence_matrices(4, 2, blocks, Decomposition(pts, [orbs[0], orbs[3]]))
    for i in range(5):
        for j in range(2):
            assert 3 * td.rho[i][j] == 3 * td.kappa[i][j]
