import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wbalg.diagrams import DOWN, UP, seq, sequences
from wbalg.params import AssumptionViolation, Params
from wbalg.young4 import (
    FourYoungDiagram,
    InvalidRegion,
    content,
    endpoint_multiplicities,
    enumerate_paths,
    eigenvalue_sequence,
    hook_length_count,
    partitions,
    paths_csv,
    standard_tableaux_count,
    sum_of_squares,
    weight,
)

P6 = Params(6, 6, 2)
BIG = Params(20, 20, 2)


def test_contents_with_shifts():
    assert content("inner_below", 0, 0, P6) == 2
    assert content("inner_above", 0, 0, P6) == 0
    assert content("outer_below", 1, 0, P6) == 7


def test_unknown_region():
    with pytest.raises(InvalidRegion):
        content("middle", 0, 0, P6)


def test_weight_of_mixed_diagram():
    m, n = 6, 6
    Y = FourYoungDiagram(
        m, n,
        outer_below=(2, 1),
        inner_above=(2, 1, 1),
        inner_below=(2, 1, 1),
        outer_above=(2, 1, 1, 1),
    )
    assert Y.is_valid()
    want = [0] * (m + n)
    for j, c in [(1, 4), (2, 1), (m - 1, -1), (m, -3), (m + 1, 3), (m + 2, 1), (m + n - 1, -1), (m + n, -2)]:
        want[j - 1] = c
    assert weight(Y) == tuple(want)


def test_empty_and_single_box_weights():
    assert weight(FourYoungDiagram(6, 6)) == (0,) * 12
    assert weight(FourYoungDiagram(6, 6, outer_above=(1,))) == (1,) + (0,) * 11


def test_column_cannot_hold_both_sides():
    # inner_above spans columns 7..12, outer_below 12..7: widths summing over n collide
    assert not FourYoungDiagram(6, 6, inner_above=(4,), outer_below=(3,)).is_valid()
    assert FourYoungDiagram(6, 6, inner_above=(3,), outer_below=(3,)).is_valid()


def test_single_up_paths():
    full = enumerate_paths("∧", P6)
    small = enumerate_paths("∧", P6, small_only=True)
    assert len(small) == 1
    # the second one-box path lives in the outer region and carries the large content
    assert sorted(p.eigenvalues[0] for p in full) == [P6.beta2(UP), P6.beta1(UP)]
    assert eigenvalue_sequence(small[0]) == [(0, True)]


def test_up_down_small_paths():
    small = enumerate_paths("∧∨", P6, small_only=True)
    assert len(small) == 2
    kinds = sorted(tuple(mv.action for mv in p.moves) for p in small)
    assert kinds == [("add", "add"), ("add", "remove")]
    removal = next(p for p in small if p.moves[1].action == "remove")
    assert removal.moves[1].sign == -1
    assert removal.eigenvalues == (0, 0)


def test_assumption_violation():
    with pytest.raises(AssumptionViolation):
        enumerate_paths("∧∧∧∧", P6)


@pytest.mark.parametrize("n", range(1, 7))
def test_all_up_paths_and_tableaux(n):
    paths = enumerate_paths(UP * n, BIG, small_only=True)
    mult = endpoint_multiplicities(paths)
    assert sum(v * v for v in mult.values()) == math.factorial(n)
    for Y, v in mult.items():
        assert v == standard_tableaux_count(Y.inner_above)
    seqs = [p.eigenvalues for p in paths]
    assert len(set(seqs)) == len(seqs)


@pytest.mark.parametrize("n", range(1, 7))
def test_sum_of_squares(n):
    assert sum_of_squares(n) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_hook_formula_matches_corner_recursion(n):
    for lam in partitions(n):
        assert hook_length_count(lam) == standard_tableaux_count(lam)


@pytest.mark.parametrize("r,t", [(1, 1), (2, 1), (1, 2), (3, 0), (2, 2), (4, 0)])
def test_large_exceeds_small_along_each_path(r, t):
    params = Params(7, 7, 2) if r + t == 4 else P6
    for a in sequences(r, t):
        for p in enumerate_paths(a, params):
            small = [abs(mv.eigenvalue) for mv in p.moves if mv.small]
            large = [abs(mv.eigenvalue) for mv in p.moves if not mv.small]
            if small and large:
                assert min(large) > max(small)


def test_boundary_tie_across_paths():
    # at the edge of the admissible range a large content on one path can equal a small one on another
    full = enumerate_paths("∧∧∧", P6)
    third = {(mv.small, mv.eigenvalue) for p in full for mv in p.moves[2:]}
    assert (True, 2) in third and (False, 2) in third


@pytest.mark.parametrize("r,t", [(1, 1), (2, 1), (1, 2)])
def test_small_pairs_count(r, t):
    # pairs of small paths with a common endpoint count the truncated block
    for a in sequences(r, t):
        for b in sequences(r, t):
            ma = endpoint_multiplicities(enumerate_paths(a, P6, small_only=True))
            mb = endpoint_multiplicities(enumerate_paths(b, P6, small_only=True))
            assert sum(ma[Y] * mb.get(Y, 0) for Y in ma) == math.factorial(r + t)


@given(st.lists(st.sampled_from([UP, DOWN]), min_size=1, max_size=3))
def test_steps_differ_by_one_box(a):
    for p in enumerate_paths(tuple(a), P6):
        for Y0, Y1 in zip(p.steps, p.steps[1:]):
            assert abs(Y1.size() - Y0.size()) == 1
            assert Y1.is_valid()


def test_csv_header():
    text = paths_csv(enumerate_paths("∧∨", P6))
    assert text.splitlines()[0] == "path_id,orientation,endpoint_weight,eigenvalues,small_flags"
