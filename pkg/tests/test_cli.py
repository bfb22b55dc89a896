import json

import pytest
from click.testing import CliRunner

from wbalg.cli import SCHEMA_VERSION, ConfigError, RunConfig, main, run


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    res = runner.invoke(main, list(args))
    return res, (json.loads(res.stdout) if res.exit_code in (0, 1) and res.stdout.strip() else None)


def test_presentation_command(runner):
    res, rep = invoke(runner, "verify-presentation", "--r", "2", "--t", "1")
    assert res.exit_code == 0
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["passed"]
    assert set(rep["reports"]) == {"presentation", "jm_commutativity", "dimensions"}


def test_isomorphism_reports_tau_squared(runner):
    res, rep = invoke(runner, "verify-isomorphism", "--r", "1", "--t", "1", "--m", "6", "--n", "6", "--delta", "2")
    assert res.exit_code == 0
    assert rep["tau_squared_residual"] is not None
    assert float(rep["tau_squared_residual"]) < 1e-20
    assert "Br5" in rep["reports"]["relations"]["families"]


def test_counterexample_command(runner):
    res, rep = invoke(runner, "counterexample")
    assert res.exit_code == 0
    assert set(rep["terms"]) >= {"x2x3", "x2x3_e2", "e2_x2x3", "difference"}


def test_center_writes_csv(runner, tmp_path):
    out = tmp_path / "center.csv"
    res, rep = invoke(runner, "center", "--r", "1", "--t", "1", "--delta", "3", "--csv", str(out))
    assert res.exit_code == 0
    assert rep["center"]["full_dim"] == 2
    assert out.read_text().startswith("r,t,delta")


def test_young4_tables(runner):
    res, rep = invoke(runner, "young4-tables", "--r", "1", "--t", "1")
    assert res.exit_code == 0
    assert rep["reports"]["young4"]["data"]["path_counts"]["∧∨"]["small"] == 2


def test_out_file(runner, tmp_path):
    out = tmp_path / "r.json"
    res = runner.invoke(main, ["schur-weyl", "--m", "3", "--r", "1", "--t", "1", "--out", str(out)])
    assert res.exit_code == 0
    assert json.loads(out.read_text())["command"] == "schur-weyl"


def test_assumption_violation_is_usage_error(runner):
    res = runner.invoke(main, ["build-cyclotomic", "--r", "2", "--t", "1", "--m", "2", "--n", "2"])
    assert res.exit_code == 2
    assert "outside the supported range" in res.output


def test_bad_delta(runner):
    res = runner.invoke(main, ["center", "--delta", "abc"])
    assert res.exit_code == 2


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig("nope").validate()
    with pytest.raises(ConfigError):
        RunConfig("center", r=0, t=0).validate()
    with pytest.raises(ConfigError):
        RunConfig("center", precision=10).validate()


def test_deterministic_reports():
    cfg = lambda: RunConfig("counterexample")  # noqa: E731
    a, b = run(cfg())[1], run(cfg())[1]
    a.pop("timings"), b.pop("timings")
    assert a == b
