import json

import pytest

from conftest import cyclotomic, ftable
from wbalg import linalg as la
from wbalg.cyclotomic import (
    build,
    cache_path,
    check_dimensions,
    check_f,
    compute_f,
    eigen_cross_check,
    eigenspace_checks,
    expected_block_dimension,
    verify_relations,
    y_matrix,
)
from wbalg.diagrams import DOWN, UP
from wbalg.matrix_calculus import spectral_decompose
from wbalg.params import DEFAULT_PARAMS as P, AssumptionViolation, Params

SMALL = [(1, 0), (0, 1), (1, 1), (2, 0)]


def test_params_values():
    assert (P.beta1(UP), P.beta2(UP), P.beta1(DOWN), P.beta2(DOWN)) == (4, 0, 6, 2)
    assert (P.omega0, P.omega1, P.omega1star) == (12, 60, 84)


def test_omega_recurrence():
    s, p = P.beta1(UP) + P.beta2(UP), P.beta1(UP) * P.beta2(UP)
    for j in range(4):
        assert P.omega(j + 2) == s * P.omega(j + 1) - p * P.omega(j)


def test_y_squared_reduces_by_cyclotomic_rule():
    alg = cyclotomic(1, 0)
    out = alg.reduce("y1 y1", "∧")
    assert list(out.values()) == [4]
    (mono,) = out
    assert mono.eps == (1,)


def test_e_y_e_collapses_to_omega():
    alg = cyclotomic(1, 1)
    e = alg.reduce("e1", "∧∨")
    assert alg.reduce("e1 y1 e1", "∧∨") == {m: 60 * c for m, c in e.items()}
    assert alg.reduce("e1 y1 e1", "∨∧") == {m: 84 * c for m, c in alg.reduce("e1", "∨∧").items()}


def test_single_strand_spectrum():
    alg = cyclotomic(1, 0)
    eig = sorted(c.eigenvalue for c in spectral_decompose(y_matrix(alg, 1, "∧")).components)
    assert eig == [P.beta2(UP), P.beta1(UP)]


def test_single_strand_f():
    alg = cyclotomic(1, 0)
    F = compute_f(alg, "∧")
    Y = y_matrix(alg, 1, "∧")
    assert la.rank(F) == 1
    assert la.matmul(Y, F) == la.scale(P.beta2(UP), F)


@pytest.mark.parametrize("r,t", SMALL + [(2, 1)])
def test_block_dimensions(r, t):
    alg = cyclotomic(r, t)
    assert check_dimensions(alg).passed
    assert {alg.block_dimension(a, a) for a in alg.seqs} == {expected_block_dimension(r, t)}


def test_expected_dimensions():
    assert [expected_block_dimension(*rt) for rt in [(1, 1), (2, 1)]] == [8, 48]


@pytest.mark.parametrize("r,t", SMALL)
def test_relations(r, t):
    rep = verify_relations(cyclotomic(r, t))
    assert rep.passed, [x.to_json() for x in rep.failures()][:3]


@pytest.mark.parametrize("r,t", SMALL)
def test_truncation(r, t):
    rep = check_f(cyclotomic(r, t), ftable(r, t))
    assert rep.passed
    assert set(rep.data["f_block_dimensions"].values()) == {1 if r + t == 1 else 2}


@pytest.mark.parametrize("r,t", SMALL)
def test_eigen_cross_check(r, t):
    rep = eigen_cross_check(cyclotomic(r, t), table=ftable(r, t))
    assert rep.passed
    assert {rec.relation for rec in rep.records} >= {"spectrum", "f-image-spectrum"}


@pytest.mark.parametrize("r,t", [(1, 1), (2, 0)])
def test_eigenspace_properties(r, t):
    assert eigenspace_checks(cyclotomic(r, t)).passed


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("WBALG_CACHE_DIR", str(tmp_path))
    fresh = build(1, 1, P)
    path = cache_path(1, 1, P)
    assert path.exists()
    assert json.loads(path.read_text())["r"] == 1
    loaded = build(1, 1, P)
    assert loaded.to_json() == fresh.to_json()


def test_corrupt_cache_is_rebuilt(tmp_path, monkeypatch):
    monkeypatch.setenv("WBALG_CACHE_DIR", str(tmp_path))
    path = cache_path(1, 0, P)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"schema_version": "bogus"}))
    assert check_dimensions(build(1, 0, P)).passed


def test_assumption_enforced():
    with pytest.raises(AssumptionViolation):
        build(2, 1, Params(3, 3, 2), use_cache=False)
