import itertools
import math

import pytest

from wbalg.diagrams import DOWN, UP, seq, sequences
from wbalg.scalars import DeltaPoly
from wbalg.walled_brauer import (
    BrauerAlgebra,
    block_dimensions,
    check_jm_commutativity,
    jucys_murphy,
    multiply,
    verify_presentation,
)

D = DeltaPoly.delta()


def test_e_squared_is_delta_e():
    alg = BrauerAlgebra(2, 1)
    e = alg.gen("e", 2)
    assert multiply(e, e) == e.scale(D)


def test_idempotents_orthogonal():
    alg = BrauerAlgebra(2, 1)
    a, b = alg.seqs[0], alg.seqs[1]
    assert multiply(alg.idem(a), alg.idem(b)).is_zero()
    assert multiply(alg.idem(a), alg.idem(a)) == alg.idem(a)


def test_three_e_word_collapses():
    # e_{k+1} e_k e_{k+1} = e_{k+1} on a block where both caps are admissible
    alg = BrauerAlgebra(2, 1)
    a = seq("∧∨∧")
    w = alg.word([("e", 2), ("e", 1), ("e", 2)], a)
    assert w == alg.word([("e", 2)], a)


def test_s_squared_on_equal_arrows():
    alg = BrauerAlgebra(2, 1)
    a = seq("∧∧∨")
    assert alg.word([("s", 1), ("s", 1)], a) == alg.idem(a)
    assert alg.gen("sh", 1, a).is_zero()


def test_rational_loop_value():
    alg = BrauerAlgebra(1, 1, 5)
    e = alg.gen("e", 1)
    assert multiply(e, e) == e.scale(5)


@pytest.mark.parametrize("r,t", [(1, 0), (0, 2), (1, 1), (2, 1), (1, 2)])
def test_presentation_small(r, t):
    rep = verify_presentation(r, t)
    assert rep.passed, [f.to_json() for f in rep.failures()]


def test_presentation_checks_reidemeister_and_braid_variants():
    rep = verify_presentation(2, 1)
    fams = {rec.relation.split("[")[0] for rec in rep.records}
    assert {"Br1", "Br2", "Br3", "Br4b", "Br5", "Br6b", "Br6c", "Br6d", "reidemeister", "braid-variant"} <= fams


def test_xi1_vanishes():
    assert jucys_murphy(1, 2, 1).is_zero()


def test_xi2_on_equal_arrows():
    alg = BrauerAlgebra(2, 1)
    a = seq("∧∧∨")
    assert multiply(alg.jucys_murphy(2), alg.idem(a)) == alg.gen("s", 1, a)


def test_xi2_on_mixed_arrows():
    alg = BrauerAlgebra(1, 1)
    for a in alg.seqs:
        assert multiply(alg.jucys_murphy(2), alg.idem(a)) == -alg.gen("e", 1, a)


def test_jm_out_of_range():
    with pytest.raises(IndexError):
        BrauerAlgebra(1, 1).jucys_murphy(3)


@pytest.mark.parametrize("r,t", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_jm_commute(r, t):
    rep = check_jm_commutativity(r, t)
    assert rep.passed
    assert len(rep.records) == (r + t) ** 2


@pytest.mark.parametrize("r,t", [(2, 1), (1, 2)])
def test_jm_block_diagonal(r, t):
    alg = BrauerAlgebra(r, t)
    for k in range(1, r + t + 1):
        xi = alg.jucys_murphy(k)
        for a in alg.seqs:
            assert multiply(xi, alg.idem(a)) == multiply(alg.idem(a), multiply(xi, alg.idem(a)))


@pytest.mark.parametrize("r,t", [(2, 2), (3, 1)])
def test_block_dimensions(r, t):
    assert set(block_dimensions(r, t).values()) == {math.factorial(r + t)}
