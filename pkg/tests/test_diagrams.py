import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wbalg.diagrams import (
    DOWN,
    UP,
    CompositionError,
    OrientationError,
    compose,
    enumerate_diagrams,
    from_text,
    generator,
    identity,
    seq,
    sequences,
)


def test_identity_has_all_through_strands():
    d = generator("Id", None, "∧∧∨∧")
    assert d == identity("∧∧∨∧")
    assert d.propagating_number() == 4


def test_e2_shape():
    d = generator("E", 2, "∧∧∨∧")
    assert d.through_strands() == [(1, 1), (4, 4)]
    assert d.bottom_arcs() == [(2, 3)]
    assert d.top_arcs() == [(2, 3)]
    assert d.target == seq("∧∧∨∧")


def test_s_on_mixed_pair_is_rejected():
    with pytest.raises(OrientationError):
        generator("S", 1, "∧∨")


def test_hat_generators_swap_target():
    assert generator("Shat", 2, "∧∧∨∧").target == seq("∧∨∧∧")
    assert generator("Ehat", 2, "∧∧∨∧").target == seq("∧∨∧∧")


def test_e_squared_closes_one_loop():
    e = generator("E", 2, "∧∧∨∧")
    d, loops = compose(e, e)
    assert d == e and loops == 1


def test_identity_is_neutral():
    d = generator("Ehat", 1, "∧∨∨")
    assert compose(d, identity(d.source)) == (d, 0)
    assert compose(identity(d.target), d) == (d, 0)


def test_hat_crossing_twice_is_identity():
    a = seq("∧∧∨∧")
    first = generator("Shat", 2, a)
    second = generator("Shat", 2, first.target)
    assert compose(second, first) == (identity(a), 0)


def test_mismatched_boundary():
    with pytest.raises(CompositionError):
        compose(identity("∧∨"), identity("∨∧"))


def test_text_round_trip():
    text = "a=∧∧∨ ; b=∧∨∧ ; pairs=(B1,T1)(B2,B3)(T2,T3)"
    d = from_text(text)
    assert from_text(d.to_text()) == d
    assert d.source == seq("∧∧∨") and d.target == seq("∧∨∧")


@pytest.mark.parametrize(
    "a,b,count",
    [("∧", "∧", 1), ("∧∨", "∧∨", 2), ("∧∧∨", "∧∨∧", 6), ("∧∨∨", "∨∨∧", 6)],
)
def test_enumeration_examples(a, b, count):
    assert len(enumerate_diagrams(seq(a), seq(b))) == count


@pytest.mark.parametrize("r,t", [(r, t) for r in range(5) for t in range(5) if 1 <= r + t <= 4])
def test_enumeration_count_is_factorial(r, t):
    seqs = sequences(r, t)
    for a, b in itertools.product(seqs, seqs):
        ds = enumerate_diagrams(a, b)
        assert len(ds) == math.factorial(r + t)
        assert len(set(ds)) == len(ds)


def _random_chain(data, r, t, length):
    a = data.draw(st.sampled_from(sequences(r, t)))
    chain = []
    cur = a
    for _ in range(length):
        nxt = data.draw(st.sampled_from(sequences(r, t)))
        d = data.draw(st.sampled_from(enumerate_diagrams(cur, nxt)))
        chain.append(d)
        cur = nxt
    return chain


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_composition_is_associative_with_loops(data):
    r = data.draw(st.integers(0, 3))
    t = data.draw(st.integers(0, 3 - r).filter(lambda x: r + x >= 1))
    d1, d2, d3 = _random_chain(data, r, t, 3)
    x, l1 = compose(d2, d1)
    left, l2 = compose(d3, x)
    y, l3 = compose(d3, d2)
    right, l4 = compose(y, d1)
    assert left == right
    assert l1 + l2 == l3 + l4
