from functools import lru_cache

import mpmath
import pytest

from conftest import cyclotomic
from wbalg import linalg as la
from wbalg.isomorphism import (
    ExactTruncation,
    alternate_sigma,
    b_poly,
    build_phi_images,
    c_poly,
    rev,
    verify_all,
    verify_dimension_and_surjectivity,
    verify_isomorphism_relations,
    verify_jm_transport,
)
from wbalg.diagrams import DOWN, UP
from wbalg.params import DEFAULT_PARAMS as P

TOL = mpmath.mpf("1e-20")


@lru_cache(maxsize=None)
def images(r, t):
    return build_phi_images(cyclotomic(r, t))


def _apply(Pm, col, letters, b):
    out = Pm.word(col, letters, b)
    assert out is not None
    return out


def test_rev():
    assert rev(UP) == DOWN and rev(DOWN) == UP


def test_b_and_c_polynomials():
    a = (UP, DOWN)
    assert b_poly(P, a, 1) == [P.beta1(DOWN), 1]
    assert c_poly(P, a, 1) == [P.beta1(UP), -1]


def test_single_strand_has_no_images():
    Pm = images(1, 0)
    assert Pm.images == {}
    rep = verify_isomorphism_relations(Pm)
    assert rep.passed


@pytest.mark.parametrize("col", ["∧∨", "∨∧"])
def test_tau_squared_direct(col):
    Pm = images(1, 1)
    for b in Pm.seqs:
        if Pm.image(tuple(col), ("e", 1), tuple(b)) is None:
            continue
        tgt, T = _apply(Pm, tuple(col), [("e", 1)], tuple(b))
        _, T2 = _apply(Pm, tuple(col), [("e", 1), ("e", 1)], tuple(b))
        assert la.max_abs(la.add(T2, la.scale(2, T))) < TOL


def test_sigma_squared_is_f():
    Pm = images(2, 0)
    a = (UP, UP)
    _, S2 = _apply(Pm, a, [("s", 1), ("s", 1)], a)
    assert la.max_abs(la.sub(S2, Pm.eye(a, a))) < TOL


def test_hat_sigma_squared_is_f():
    Pm = images(1, 1)
    for col in Pm.seqs:
        for b in Pm.seqs:
            _, S2 = _apply(Pm, col, [("sh", 1), ("sh", 1)], b)
            assert la.max_abs(la.sub(S2, Pm.eye(col, b))) < TOL


def test_alternate_sigma_formula():
    Pm = images(2, 0)
    a = (UP, UP)
    _, S = Pm.image(a, ("s", 1), a)
    assert la.max_abs(la.sub(S, alternate_sigma(Pm, a, 1, a))) < TOL


@pytest.mark.parametrize("r,t", [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2)])
def test_relations_and_transport(r, t):
    Pm = images(r, t)
    rel = verify_isomorphism_relations(Pm)
    assert rel.passed, [x.to_json() for x in rel.failures()][:3]
    assert rel.data["max_residual"] < 1e-20
    jm = verify_jm_transport(Pm, cyclotomic(r, t))
    assert jm.passed
    assert max(jm.data["residuals"].values()) < 1e-20


def test_braid_relations_present_at_rank_three():
    fams = {x.relation for x in verify_isomorphism_relations(images(2, 1)).records}
    assert any(f.startswith("braid") or f.startswith("Br4") for f in fams), fams


@pytest.mark.parametrize("r,t,d", [(1, 0, 1), (1, 1, 2), (2, 1, 6)])
def test_truncated_dimensions(r, t, d):
    rep = verify_dimension_and_surjectivity(images(r, t), cyclotomic(r, t))
    assert rep.passed
    assert set(rep.data["f_block_dimensions"].values()) == {d}


def test_exact_truncation_dimension_independent_of_numerics():
    ex = ExactTruncation(cyclotomic(2, 1))
    assert {ex.frames[c].dim(b) for c in ex.alg.seqs for b in ex.alg.seqs} == {6}


def test_full_suite_with_branch_and_scaling():
    reps = verify_all(cyclotomic(1, 1))
    assert all(r.passed for r in reps.values())
    assert reps["scaling"].data["min_gain_orders"] >= 10


def test_low_precision_is_worse():
    lo = verify_isomorphism_relations(build_phi_images(cyclotomic(1, 1), precision=64), tol=1.0)
    hi = verify_isomorphism_relations(images(1, 1))
    assert lo.data["max_residual"] > hi.data["max_residual"]
