import math

import pytest

from wbalg import linalg as la
from wbalg.diagrams import seq, sequences
from wbalg.schur_weyl import (
    build_rep,
    commutant_dimension,
    diagram_span_dimension,
    diagrams_commute_with_gl,
    jm_spectra_report,
    schur_weyl_report,
    verify_rep_is_homomorphism,
)


def _trace(M):
    return sum(M[i][i] for i in range(len(M)))


def test_cap_cup_rank_and_trace():
    _, E = build_rep(2, "∧∨").generator("e", 1)
    assert la.rank(E) == 1
    assert _trace(E) == 2


def test_cap_cup_squared():
    m = 3
    _, E = build_rep(m, "∧∨").generator("e", 1)
    assert la.matmul(E, E) == la.scale(m, E)


def test_transposition_involution():
    _, S = build_rep(2, "∧∧").generator("s", 1)
    assert la.matmul(S, S) == la.eye(len(S))


@pytest.mark.parametrize("m,r,t", [(3, 1, 1), (2, 2, 1), (3, 2, 1)])
def test_homomorphism(m, r, t):
    rep = verify_rep_is_homomorphism(m, r, t)
    assert rep.passed, [f.to_json() for f in rep.failures()]


@pytest.mark.parametrize("m,a,want", [(2, "∧", 1), (3, "∧∨", 2), (3, "∧∧∨", 6)])
def test_commutant_examples(m, a, want):
    assert commutant_dimension(m, a) == want


@pytest.mark.parametrize("r,t", [(1, 0), (1, 1), (2, 1), (1, 2), (3, 0), (0, 3)])
def test_commutant_spanned_by_diagrams(r, t):
    for a in sequences(r, t):
        cd = commutant_dimension(3, a)
        assert cd == math.factorial(r + t)
        assert diagram_span_dimension(3, a) == cd
        assert diagrams_commute_with_gl(3, a)


def test_small_m_span_still_equals_commutant():
    # m < r + t: the diagram action is no longer faithful but still fills the commutant
    for a in sequences(2, 1):
        assert diagram_span_dimension(2, a) == commutant_dimension(2, a) < 6


def test_jm_spectra_integral():
    rep = jm_spectra_report(3, 2, 1)
    assert rep.passed


def test_full_report():
    assert schur_weyl_report(3, 1, 1).passed
