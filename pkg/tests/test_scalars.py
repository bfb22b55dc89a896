from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wbalg.scalars import (
    BigFloat,
    DeltaPoly,
    Scalar,
    ScalarTagError,
    evaluate_delta,
    rational,
    rational_from_str,
    rational_to_str,
)

fractions = st.fractions(max_denominator=10**6).filter(lambda f: abs(f) < 10**9)


def test_evaluate_identity_polynomial():
    assert evaluate_delta(DeltaPoly.delta(), 3) == 3


def test_evaluate_at_root():
    p = DeltaPoly.delta() ** 2 - 1
    assert evaluate_delta(p, 1) == 0


def test_evaluate_omega1_formula():
    m = n = 5
    p = DeltaPoly.delta() * (-m) + rational((m + n) ** 2) / 2
    assert evaluate_delta(p, 2) == 40


def test_rational_lowest_terms_and_sign():
    q = rational("6/-4")
    assert q.numerator == -3 and q.denominator == 2
    assert rational_to_str(q) == "-3/2"
    assert rational_from_str("-3/2") == q


def test_deltapoly_trims_trailing_zeros():
    p = DeltaPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert (p - p).is_zero()
    assert DeltaPoly.from_list(p.to_list()) == p


def test_mixed_tags_rejected():
    with pytest.raises(ScalarTagError):
        Scalar.of(DeltaPoly.delta()) + Scalar.of(BigFloat(1))


def test_rational_promotes():
    s = Scalar.of(rational(1)) + Scalar.of(DeltaPoly.delta())
    assert s.tag == "DeltaPoly"
    b = Scalar.of(rational("1/3")) + Scalar.of(BigFloat(1))
    assert b.tag == "BigFloat"


@given(fractions, fractions, fractions)
def test_distributive_law(a, b, c):
    a, b, c = map(rational, (a, b, c))
    assert a * (b + c) == a * b + a * c


@given(st.lists(fractions, min_size=1, max_size=5), fractions)
def test_deltapoly_evaluation_is_ring_map(cs, x):
    p = DeltaPoly([rational(c) for c in cs])
    q = DeltaPoly.delta() + 1
    assert evaluate_delta(p * q, x) == evaluate_delta(p, x) * evaluate_delta(q, x)
    assert evaluate_delta(p + q, x) == evaluate_delta(p, x) + evaluate_delta(q, x)


@settings(max_examples=200)
@given(fractions, fractions.filter(lambda f: f != 0))
def test_bigfloat_tracks_rationals(a, b):
    bits = 256
    exact = rational(a) * rational(b) + rational(a) / rational(b) - rational(b)
    approx = BigFloat(a, bits) * BigFloat(b, bits) + BigFloat(a, bits) / BigFloat(b, bits) - BigFloat(b, bits)
    if exact == 0:
        assert abs(float(approx)) < 2.0 ** (4 - bits) * (abs(float(a)) + abs(float(b)) + 1) ** 2
    else:
        rel = abs((approx - BigFloat(exact, bits)).value / BigFloat(exact, bits).value)
        # three roundings plus a cancellation-free combination
        assert rel <= 2.0 ** (4 - bits) * max(1, abs(float(rational(a) * rational(b))) / abs(float(exact)) + 8)
