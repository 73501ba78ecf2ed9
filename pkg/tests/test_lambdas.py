import random

import pytest

from oracles import NaiveField, naive_lambda
from qtd.action import GroupPresentation, SemilinearMap, census, orbits
from qtd.corpus import random_invertible
from qtd.design import trivial_design
from qtd.errors import ClassNotSingleton, GroupNotPrimeOrder, NotPIndependent
from qtd.lambdas import (
    LambdaTensor,
    check_prime_bound,
    expected_row_sum,
    fixed_point_slices_ok,
    lambda_bruteforce_at,
    lambda_from_omega,
    lambda_tensor_bruteforce,
    lambda_tensor_via_lines,
    lines_decomposition,
    omega_partition,
    prime_bound,
    structure_report,
    transitive_lambda,
    within_prime_bound,
)
from qtd.subspace import enumerate_subspaces, unpack
from qtd.tactical import induced_decomposition


def pattern_831(l, r, s):
    if l == r == s:
        return 8
    if l != r and r != s and s != l:
        return 1
    return 3


def test_order3_tensor(order3_group):
    pts = census(order3_group, 1)
    T = lambda_tensor_bruteforce(pts, verify_p_independence=True)
    assert T.sizes == [3] * 5
    for l in range(5):
        for r in range(5):
            for s in range(5):
                assert T[l, r, s] == pattern_831(l, r, s)
    assert lambda_tensor_via_lines(lines_decomposition(order3_group)).values == T.values


def test_bruteforce_matches_naive_counting(order3_group):
    F = NaiveField(2, 1, (0, 1))
    classes = census(order3_group, 1).classes()
    vec = [[tuple(unpack(P.rows[0], 4, 2)) for P in c] for c in classes]
    for l in (0, 3):
        P = classes[l][1]
        for r in range(5):
            for s in range(5):
                want = naive_lambda(vec[l][1], vec[r], vec[s], F, 4)
                assert lambda_bruteforce_at(P, r, s, classes) == want


def test_bruteforce_general_q_matches_naive():
    rng = random.Random(11)
    G = GroupPresentation(3, 3, (random_invertible(3, 3, rng),))
    pts = orbits(G, enumerate_subspaces(3, 1, 3))
    T = lambda_tensor_bruteforce(pts, verify_p_independence=True)
    F = NaiveField(3, 1, (0, 1))
    classes = pts.classes()
    vec = [[tuple(unpack(P.rows[0], 3, 3)) for P in c] for c in classes]
    for l in range(len(classes)):
        for r in range(len(classes)):
            for s in range(len(classes)):
                assert T[l, r, s] == naive_lambda(vec[l][0], vec[r], vec[s], F, 3)
    assert lambda_tensor_via_lines(lines_decomposition(G)).values == T.values


def test_trivial_group_diagonal_zero():
    G = GroupPresentation(4, 2)
    pts = orbits(G, enumerate_subspaces(4, 1, 2))
    T = lambda_tensor_bruteforce(pts)
    assert all(T[l, l, l] == 0 for l in range(T.m))
    assert structure_report(T).ok
    assert lambda_tensor_via_lines(lines_decomposition(G)).values == T.values


def test_transitive_formula(singer_group):
    assert transitive_lambda(8, 2) == 1016
    assert transitive_lambda(4, 2) == 56
    # full GL(3,2)-like transitive action on F_2^3 via a Singer cycle
    g = SemilinearMap(((0, 1, 0), (0, 0, 1), (1, 1, 0)), 2)
    G = GroupPresentation(3, 2, (g,))
    T = lambda_tensor_via_lines(lines_decomposition(G))
    assert T.m == 1 and T[0, 0, 0] == transitive_lambda(3, 2) == 24


def test_p_independence_violation_detected():
    pts = list(enumerate_subspaces(3, 1, 2))
    # an arbitrary (non group-induced) partition: Λ depends on the point
    classes = [pts[:2], pts[2:]]
    lambda_tensor_bruteforce(classes)
    with pytest.raises(NotPIndependent) as exc:
        lambda_tensor_bruteforce(classes, verify_p_independence=True)
    assert set(exc.value.witness) >= {"l", "r", "s", "points", "values"}


def test_threads_give_same_tensor(order3_group):
    pts = census(order3_group, 1)
    assert lambda_tensor_bruteforce(pts, threads=4).values == lambda_tensor_bruteforce(pts).values


def test_tensor_serialization_roundtrip(order3_group):
    T = lambda_tensor_bruteforce(census(order3_group, 1))
    d = T.to_dict()
    assert d["m"] == 5 and d["class_sizes"] == [3] * 5
    assert len(d["entries"]) == 125  # no zero entries here
    back = LambdaTensor.from_dict(d)
    assert back.values == T.values


def test_structure_numbers(order3_group):
    T = lambda_tensor_bruteforce(census(order3_group, 1))
    assert expected_row_sum(T, 0, 1) == 9
    assert expected_row_sum(T, 0, 0) == 20
    assert structure_report(T).ok
    broken = LambdaTensor([[[x for x in row] for row in sl] for sl in T.values], T.sizes, 4, 2)
    broken.values[0][1][2] += 1
    rep = structure_report(broken)
    assert [0, 1, 2] in rep.symmetric and rep.sums and not rep.ok


# -- prime-order results --------------------------------------------------------

def fixed_point_group():
    """Order 3 on F_2^4: a 3-cycle on <e0, e1>, identity on <e2, e3>."""
    g = SemilinearMap(((0, 1, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), 2)
    return GroupPresentation(4, 2, (g,))


def test_prime_bound_values():
    assert prime_bound(3) == 6.0
    assert [x for x in range(12) if within_prime_bound(x, 3)] == [0, 1, 2, 3, 4, 5, 6, 9]
    for p in (2, 3, 5, 7, 11, 13):
        bound = prime_bound(p)
        for x in range(p * p + 3):
            assert within_prime_bound(x, p) == (x == p * p or x <= bound + 1e-9)


def test_omega_partition_fixed_point_group():
    G = fixed_point_group()
    d = trivial_design(4, 3, 2, 3)
    dec = induced_decomposition(d, G)
    T = lambda_tensor_bruteforce(dec, verify_p_independence=True)
    sizes = T.sizes
    assert sorted(sizes) == [1, 1, 1, 3, 3, 3, 3]
    assert fixed_point_slices_ok(T, 3) == []
    for l, sz in enumerate(sizes):
        if sz == 1:
            om = omega_partition(dec, l, G)
            assert om.p == 3
            assert lambda_from_omega(om, dec) == T.values[l]
            # the other fixed points sit on fixed lines through P
            for i, s2 in enumerate(sizes):
                if s2 == 1 and i != l:
                    idx = next(c for c, ids in enumerate(om.classes) if i in ids)
                    assert idx < om.a
        else:
            with pytest.raises(ClassNotSingleton):
                omega_partition(dec, l, G)
    rep = check_prime_bound(T, 3)
    assert rep.ok
    # the size-3 orbit spanning <e0, e1> is a full line: Λ_lll = 8 sits above the bound
    big = [x for x in rep.degenerate if x[3] == 8]
    assert big and all(x[0] == x[1] == x[2] for x in big)


def test_omega_needs_prime_order(order3_group):
    g = SemilinearMap(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 1)), 2)
    G = GroupPresentation(4, 2, (g,))  # order 6
    dec = orbits(G, enumerate_subspaces(4, 1, 2))
    l = dec.orbit_sizes.index(1)
    with pytest.raises(GroupNotPrimeOrder):
        omega_partition(dec, l, G)


def test_order3_bound_report(order3_group):
    T = lambda_tensor_bruteforce(census(order3_group, 1))
    rep = check_prime_bound(T, 3)
    assert rep.ok and rep.violations == []
    assert [x[:3] for x in rep.degenerate] == [[l, l, l] for l in range(5)]
    assert rep.to_dict()["bound"] == 6.0
