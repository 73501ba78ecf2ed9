from fractions import Fraction

import pytest

from oracles import NaiveField, naive_design_ok, naive_lambda_s, span_set
from qtd.design import (
    QDesign,
    QDesignParams,
    block_count,
    blocks_through,
    lambda_int,
    lambda_s,
    trivial_design,
    verify_design,
)
from qtd.errors import AmbientMismatch, InvalidArguments, LambdaNotInteger
from qtd.subspace import point, rref


def test_params_validation():
    for bad in [(3, 4, 4, 2, 1), (1, 4, 1, 2, 1), (4, 5, 3, 2, 1), (2, 5, 3, 2, 0)]:
        with pytest.raises(InvalidArguments):
            QDesignParams(*bad)
    assert str(QDesignParams(3, 8, 4, 2, 11)) == "3-(8,4,11)_2"


def test_derived_lambdas_small():
    p = QDesignParams(3, 4, 3, 2, 1)
    assert [lambda_int(p, s) for s in (3, 2, 1, 0)] == [1, 3, 7, 15]
    assert block_count(p) == 15


@pytest.mark.parametrize("params", [(3, 8, 4, 2, 1), (2, 7, 3, 2, 1), (2, 13, 3, 2, 1),
                                    (3, 6, 4, 3, 5), (2, 6, 3, 2, 3)])
def test_lambda_s_matches_oracle(params):
    p = QDesignParams(*params)
    for s in range(p.t + 1):
        assert lambda_s(p, s) == naive_lambda_s(*params, s)


def test_lambda1_for_dim8():
    # 127 * 3 = 381
    assert lambda_int(QDesignParams(3, 8, 4, 2, 1), 1) == 381
    assert lambda_int(QDesignParams(3, 8, 4, 2, 31), 1) == 381 * 31


def test_lambda_not_integer():
    p = QDesignParams(2, 6, 3, 2, 1)
    assert lambda_s(p, 1) == Fraction(31, 3)
    with pytest.raises(LambdaNotInteger) as exc:
        lambda_int(p, 1)
    assert exc.value.s == 1 and exc.value.value == Fraction(31, 3)
    with pytest.raises(InvalidArguments):
        lambda_s(p, 3)


@pytest.mark.parametrize("v,k,q,t", [(4, 3, 2, 3), (4, 2, 2, 2), (4, 2, 3, 2), (5, 3, 2, 3),
                                     (3, 2, 3, 1)])
def test_trivial_designs_verify(v, k, q, t):
    d = trivial_design(v, k, q, t)
    rep = verify_design(d)
    assert rep.ok, rep.message
    for s in range(1, t):
        assert verify_design(d, s, lambda_int(d.params, s)).ok


@pytest.mark.parametrize("v,k,t", [(4, 3, 2), (4, 2, 2), (4, 3, 3)])
def test_verify_agrees_with_naive(v, k, t):
    F = NaiveField(2, 1, (0, 1))
    full = trivial_design(v, k, 2, t)
    for drop in (0, 1):
        blocks = full.blocks[drop:]
        lam = full.params.lambda_t
        d = QDesign(full.params, blocks)
        sets = [span_set(B.basis, F, v) for B in blocks]
        assert verify_design(d).ok == naive_design_ok(sets, t, lam, v, F)


def test_verify_reports_witness():
    full = trivial_design(4, 3, 2, 3)
    d = QDesign(full.params, full.blocks[1:])
    rep = verify_design(d)
    assert not rep.ok
    assert rep.witness_count == 0 and rep.witness.dim == 3
    assert rep.to_dict()["witness"] == [list(r) for r in full.blocks[0].basis]


def test_multiset_design():
    full = trivial_design(4, 3, 2, 3)
    p = QDesignParams(3, 4, 3, 2, 2)
    assert verify_design(QDesign(p, full.blocks * 2)).ok


def test_block_validation():
    p = QDesignParams(2, 4, 3, 2, 3)
    with pytest.raises(InvalidArguments):
        QDesign(p, (point([1, 0, 0, 0]),))
    with pytest.raises(AmbientMismatch):
        QDesign(p, (rref([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]),))


def test_blocks_through():
    d = trivial_design(4, 3, 2, 3)
    P = point([1, 0, 0, 0])
    through = blocks_through(d, P)
    assert len(through) == lambda_int(d.params, 1) == 7
    assert all(P.rows[0] in B.points() for B in through)
