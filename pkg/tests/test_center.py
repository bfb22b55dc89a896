import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wbalg.center import (
    MultiPoly,
    NotAdmissible,
    act_on_sequence,
    center_csv,
    center_dimension,
    central_element,
    choice_agreement,
    permutation_length,
    q_cancellation_check,
    q_cancellation_check_permuted,
    reproduce_counterexample,
    shuffle_permutation,
    transported_element,
    verify_central,
)
from wbalg.diagrams import DOWN, UP, sequences
from wbalg.params import Params
from wbalg.scalars import DeltaPoly
from wbalg.walled_brauer import BrauerAlgebra, multiply

y = MultiPoly.var
ps = MultiPoly.power_sum


def commutes_with_every_diagram(z, r, t):
    """Independent of the generator list: test against the whole diagram basis."""
    alg = BrauerAlgebra(r, t, z.loop)
    for a in alg.seqs:
        for b in alg.seqs:
            for d in alg.basis(a, b):
                g = alg.diagram(d)
                if not (multiply(z, g) - multiply(g, z)).is_zero():
                    return False
    return True


# -- Q-cancellation ---------------------------------------------------------------


def test_q_cancellation_examples():
    assert q_cancellation_check(y(2, 1) + y(2, 2), 1, 2)
    assert not q_cancellation_check(y(2, 1) * y(2, 2), 1, 2)
    assert q_cancellation_check(ps(3, 3), 1, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_odd_power_sums_cancel_for_every_pair(n, j):
    p = ps(n, 2 * j + 1)
    for k, l in itertools.permutations(range(1, n + 1), 2):
        assert q_cancellation_check(p, k, l)
        assert q_cancellation_check_permuted(p, k, l)


def test_even_power_sum_fails():
    assert not q_cancellation_check(ps(2, 2), 1, 2)


def test_bad_indices():
    with pytest.raises(ValueError):
        q_cancellation_check(ps(2, 1), 1, 1)


monomials = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(monomials, st.integers(-3, 3), max_size=5).map(lambda d: MultiPoly(3, d))


@given(polys, st.sampled_from(list(itertools.permutations([1, 2, 3], 2))))
def test_two_q_cancellation_routes_agree(p, kl):
    assert q_cancellation_check(p, *kl) == q_cancellation_check_permuted(p, *kl)


@given(polys, polys)
def test_action_is_a_ring_map(p, q):
    w = (2, 3, 1)
    assert (p * q).act(w) == p.act(w) * q.act(w)
    assert (p + q).act(w) == p.act(w) + q.act(w)


# -- permutations ------------------------------------------------------------------


@pytest.mark.parametrize("r,t", [(2, 1), (1, 2), (2, 2), (3, 1)])
def test_shuffle_sends_standard_sequence(r, t):
    base = (UP,) * r + (DOWN,) * t
    for a in sequences(r, t):
        for choice in ("minimal", "maximal"):
            assert act_on_sequence(shuffle_permutation(a, choice), base) == a
        # minimality against brute force
        best = min(
            permutation_length(w)
            for w in itertools.permutations(range(1, r + t + 1))
            if act_on_sequence(w, base) == a
        )
        assert permutation_length(shuffle_permutation(a)) == best


# -- central elements ---------------------------------------------------------------


def test_zero_polynomial():
    assert central_element(MultiPoly(3), 2, 1).is_zero()


def test_sum_of_y_on_block():
    a = (UP, UP, DOWN)
    alg = BrauerAlgebra(2, 1)
    xi_sum = alg.zero()
    for k in (1, 2, 3):
        xi_sum = xi_sum + multiply(alg.jucys_murphy(k), alg.idem(a))
    lit = central_element(ps(3, 1), 2, 1, mode="literal").block(a, a)
    assert lit == xi_sum
    # transport adds the loop once per UP position
    tr = central_element(ps(3, 1), 2, 1).block(a, a)
    assert tr == xi_sum + alg.idem(a).scale(DeltaPoly.delta() * 2)


@pytest.mark.parametrize(
    "name,p",
    [
        ("p1", ps(3, 1)),
        ("p3", ps(3, 3)),
        ("p1^2", ps(3, 1) ** 2),
        ("p1p3", ps(3, 1) * ps(3, 3)),
    ],
)
def test_central_at_rank_three(name, p):
    z = central_element(p, 2, 1)
    assert verify_central(z, 2, 1).passed
    assert commutes_with_every_diagram(z, 2, 1)


def test_cubic_power_sum_at_rank_two():
    z = central_element(ps(2, 3), 1, 1)
    assert not z.is_zero()
    assert verify_central(z, 1, 1).passed


def test_literal_substitution_can_fail():
    z = central_element(ps(3, 3), 2, 1, mode="literal")
    assert not verify_central(z, 2, 1).passed
    assert not commutes_with_every_diagram(z, 2, 1)


@pytest.mark.parametrize("delta", [2, 3, -1])
def test_transport_route_is_central(delta):
    params = Params(6, 6, delta)
    for p in (ps(3, 1), ps(3, 3), ps(3, 1) * ps(3, 3)):
        z = transported_element(p, 2, 1, params)
        assert commutes_with_every_diagram(z, 2, 1)


def test_identity_is_central():
    alg = BrauerAlgebra(2, 1)
    assert verify_central(alg.one(), 2, 1).passed


def test_single_summand_not_central():
    alg = BrauerAlgebra(2, 1)
    z = alg.gen("s", 1, (UP, UP, DOWN))
    rep = verify_central(z, 2, 1)
    assert not rep.passed
    assert any(rec.relation == "commutes-e" for rec in rep.failures())


def test_not_admissible():
    with pytest.raises(NotAdmissible):
        central_element(y(3, 2) * y(3, 3), 2, 1)
    with pytest.raises(NotAdmissible):
        central_element(y(3, 1), 2, 1)
    with pytest.raises(NotAdmissible):
        central_element(ps(2, 1), 2, 1)


@pytest.mark.parametrize("r,t", [(2, 1), (1, 2), (2, 2)])
def test_choice_of_permutation_does_not_matter(r, t):
    n = r + t
    assert choice_agreement(ps(n, 1) * ps(n, 3), r, t)["equal"]


# -- counterexample ---------------------------------------------------------------


def test_counterexample():
    rep = reproduce_counterexample()
    assert rep.passed
    names = {rec.relation for rec in rep.records}
    assert {"x2x3-expansion", "difference", "x2x3-not-commuting", "sum-commutes"} <= names
    assert rep.data["difference"]


# -- center dimension ------------------------------------------------------------------


def test_trivial_center():
    res = center_dimension(1, 0, 3)
    assert (res.full_dim, res.constructed_dim) == (1, 1)


@pytest.mark.parametrize("r,t,full", [(1, 1, 2), (2, 1, 3), (1, 2, 3), (2, 0, 2)])
def test_center_dimension_reported(r, t, full):
    res = center_dimension(r, t, 3)
    assert res.full_dim == full
    assert res.constructed_dim <= res.full_dim
    assert res.all_constructed_central
    assert res.choice_independent


def test_center_dimension_bound():
    with pytest.raises(ValueError):
        center_dimension(3, 2, 3)


def test_center_csv():
    text = center_csv([center_dimension(1, 1, 3)])
    assert text.splitlines()[0] == "r,t,delta,full_dim,constructed_dim,degree_bound"
    assert text.splitlines()[1].startswith("1,1,3/1,2,")
