"""Command line driver: each command runs one pipeline and prints a JSON report."""

from __future__ import annotations

import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import click

from .diagrams import seq_str, sequences
from .params import AssumptionViolation, Params
from .scalars import DEFAULT_PRECISION, DEFAULT_RELATION_TOL, DEFAULT_SCALAR_TOL, rational, rational_to_str

SCHEMA_VERSION = "1.0"

COMMANDS = (
    "verify-presentation",
    "schur-weyl",
    "build-cyclotomic",
    "verify-isomorphism",
    "eigen-crosscheck",
    "center",
    "counterexample",
    "young4-tables",
)
NEEDS_ASSUMPTION = {"build-cyclotomic", "verify-isomorphism", "eigen-crosscheck", "young4-tables"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    r: int = 1
    t: int = 1
    m: int = 6
    n: int = 6
    delta: str = "2"
    precision: int = DEFAULT_PRECISION
    tolerance: float = DEFAULT_RELATION_TOL
    scalar_tolerance: float = DEFAULT_SCALAR_TOL
    cache_dir: str | None = None
    use_cache: bool = True
    out: str | None = None
    csv: str | None = None
    degree: int | None = None
    extras: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; choose one of {', '.join(COMMANDS)}")
        if self.r < 0 or self.t < 0:
            raise ConfigError("--r and --t must be non-negative")
        if self.command != "counterexample" and self.r + self.t == 0:
            raise ConfigError("need r + t >= 1 strands")
        if self.m <= 0 or self.n <= 0:
            raise ConfigError("--m and --n must be positive")
        try:
            rational(self.delta)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"--delta must be a rational like 2 or 3/2, got {self.delta!r}") from exc
        if self.precision < 53:
            raise ConfigError("--precision must be at least 53 bits")
        if self.command in NEEDS_ASSUMPTION:
            try:
                self.params().check_assumption(self.r, self.t)
            except AssumptionViolation as exc:
                raise ConfigError(
                    f"parameters m={self.m}, n={self.n}, delta={self.delta} are outside the supported range "
                    f"for r={self.r}, t={self.t}: {exc}. Try larger m, n (e.g. --m 6 --n 6 --delta 2)."
                ) from exc

    def params(self) -> Params:
        return Params(self.m, self.n, rational(self.delta))


# ---------------------------------------------------------------------------
# pipelines: each returns (reports: dict name -> Report-like, extra data)


def _run_presentation(cfg):
    from .walled_brauer import block_dimensions, check_jm_commutativity, verify_presentation

    reps = {
        "presentation": verify_presentation(cfg.r, cfg.t),
        "jm_commutativity": check_jm_commutativity(cfg.r, cfg.t),
    }
    dims = block_dimensions(cfg.r, cfg.t)
    want = math.factorial(cfg.r + cfg.t)
    reps["dimensions"] = _DictReport(
        "block-dimensions",
        {f"{b}<-{a}": d == want for (b, a), d in dims.items()},
        {f"{b}<-{a}": d for (b, a), d in dims.items()},
    )
    return reps, {}


def _run_schur_weyl(cfg):
    from .schur_weyl import schur_weyl_report

    return {"schur_weyl": schur_weyl_report(cfg.m, cfg.r, cfg.t)}, {}


def _build(cfg):
    from .cyclotomic import build

    return build(cfg.r, cfg.t, cfg.params(), use_cache=cfg.use_cache)


def _run_build_cyclotomic(cfg):
    from .cyclotomic import FTable, cache_path, check_dimensions, check_f, eigenspace_checks, verify_relations

    alg = _build(cfg)
    table = FTable(alg)
    reps = {
        "relations": verify_relations(alg),
        "dimensions": check_dimensions(alg),
        "truncation": check_f(alg, table),
        "eigenspaces": eigenspace_checks(alg),
    }
    return reps, {"cache_file": str(cache_path(cfg.r, cfg.t, cfg.params())), "params": cfg.params().to_json()}


def _run_isomorphism(cfg):
    from .isomorphism import verify_all

    alg = _build(cfg)
    reps = verify_all(alg, precision=cfg.precision, tol=cfg.tolerance)
    residuals = reps["relations"].data.get("residuals", {})
    tau_sq = {k: v for k, v in residuals.items() if k.startswith("Br5|")}
    extra = {
        "params": cfg.params().to_json(),
        "tau_squared_residual": max(tau_sq.values(), default=None),
        "tau_squared_residuals": tau_sq,
        "max_relation_residual": reps["relations"].data.get("max_residual"),
    }
    return reps, extra


def _run_eigen(cfg):
    from .cyclotomic import eigen_cross_check

    alg = _build(cfg)
    return {"eigen_crosscheck": eigen_cross_check(alg)}, {"params": cfg.params().to_json()}


def _run_center(cfg):
    from .center import MultiPoly, center_csv, center_dimension, central_element, verify_central

    res = center_dimension(cfg.r, cfg.t, rational(cfg.delta), cfg.degree)
    n = cfg.r + cfg.t
    samples = {
        "p1": MultiPoly.power_sum(n, 1),
        "p3": MultiPoly.power_sum(n, 3),
        "super_p2": MultiPoly.power_sum(n, 2, range(1, cfg.r + 1)) - MultiPoly.power_sum(n, 2, range(cfg.r + 1, n + 1)),
    }
    reps = {f"central[{name}]": verify_central(central_element(p, cfg.r, cfg.t), cfg.r, cfg.t) for name, p in samples.items()}
    reps["dimension"] = _DictReport(
        "center-dimension",
        {
            "constructed<=full": res.constructed_dim <= res.full_dim,
            "constructed-central": res.all_constructed_central,
            "w-choice-independent": res.choice_independent,
        },
        res.to_json(),
    )
    if cfg.csv:
        Path(cfg.csv).write_text(center_csv([res]))
    return reps, {"center": res.to_json()}


def _run_counterexample(cfg):
    from .center import reproduce_counterexample

    rep = reproduce_counterexample()
    return {"counterexample": rep}, {"terms": rep.data}


def _run_young4(cfg):
    from .young4 import enumerate_paths, paths_csv, predicted_spectrum, sum_of_squares

    params = cfg.params()
    seqs = sequences(cfg.r, cfg.t)
    checks, tables, counts, every = {}, {}, {}, []
    want = math.factorial(cfg.r + cfg.t)
    for a in seqs:
        full = enumerate_paths(a, params)
        small = enumerate_paths(a, params, small_only=True)
        tables[seq_str(a)] = paths_csv(full)
        every.extend(full)
        counts[seq_str(a)] = {"full": len(full), "small": len(small)}
        for b in seqs:
            dim = sum(predicted_spectrum(b, a, params, left_small=True, right_small=True).values())
            checks[f"small-pairs({seq_str(b)}<-{seq_str(a)})=(r+t)!"] = dim == want
    for k in range(1, cfg.r + cfg.t + 1):
        checks[f"sum f_Y^2 = {k}!"] = sum_of_squares(k) == math.factorial(k)
    if cfg.csv:
        Path(cfg.csv).write_text(paths_csv(every))
    return {"young4": _DictReport("young4-tables", checks, {"path_counts": counts})}, {"tables": tables}


PIPELINES = {
    "verify-presentation": _run_presentation,
    "schur-weyl": _run_schur_weyl,
    "build-cyclotomic": _run_build_cyclotomic,
    "verify-isomorphism": _run_isomorphism,
    "eigen-crosscheck": _run_eigen,
    "center": _run_center,
    "counterexample": _run_counterexample,
    "young4-tables": _run_young4,
}


class _DictReport:
    def __init__(self, name, checks: dict, data: dict):
        self.name, self.checks, self.data = name, checks, data

    @property
    def passed(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": len(self.checks),
            "failures": [k for k, v in self.checks.items() if not v],
            "results": self.checks,
            "data": self.data,
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        if isinstance(x, float) and not math.isfinite(x):
            return str(x)
        return x
    try:
        return rational_to_str(x)
    except Exception:
        return str(x)


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns (exit code, report dict)."""
    cfg.validate()
    if cfg.cache_dir:
        os.environ["WBALG_CACHE_DIR"] = cfg.cache_dir
    t0 = time.perf_counter()
    reps, extra = PIPELINES[cfg.command](cfg)
    elapsed = time.perf_counter() - t0
    passed = all(r.passed for r in reps.values())
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "config": {k: v for k, v in asdict(cfg).items() if k not in ("extras",)},
        "passed": passed,
        "reports": {name: r.to_json() for name, r in reps.items()},
        "timings": {"total_seconds": round(elapsed, 3)},
        **extra,
    }
    return (0 if passed else 1), _jsonable(report)


def _common(f):
    opts = [
        click.option("--r", "r", type=int, default=1, show_default=True, help="number of UP strands"),
        click.option("--t", "t", type=int, default=1, show_default=True, help="number of DOWN strands"),
        click.option("--m", "m", type=int, default=6, show_default=True),
        click.option("--n", "n", type=int, default=6, show_default=True),
        click.option("--delta", default="2", show_default=True, help="rational parameter"),
        click.option("--precision", type=int, default=DEFAULT_PRECISION, show_default=True, help="bits"),
        click.option("--tol", "tolerance", type=float, default=DEFAULT_RELATION_TOL, show_default=True),
        click.option("--cache-dir", default=None, help="overrides $WBALG_CACHE_DIR"),
        click.option("--no-cache", is_flag=True, default=False),
        click.option("--out", default=None, help="write JSON here instead of stdout"),
        click.option("--csv", "csv_path", default=None, help="also write a CSV table (center, young4-tables)"),
        click.option("--degree", type=int, default=None, help="degree bound for center (default 2(r+t))"),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


@click.group()
def main():
    """Walled Brauer algebra verification suite."""


def _make_command(name):
    @main.command(name)
    @_common
    def cmd(r, t, m, n, delta, precision, tolerance, cache_dir, no_cache, out, csv_path, degree):
        cfg = RunConfig(name, r, t, m, n, delta, precision, tolerance, DEFAULT_SCALAR_TOL, cache_dir, not no_cache,
                        out, csv_path, degree)
        try:
            code, report = run(cfg)
        except ConfigError as exc:
            raise click.UsageError(str(exc))
        text = json.dumps(report, indent=2)
        if out:
            Path(out).write_text(text + "\n")
            click.echo(f"{name}: {'pass' if code == 0 else 'FAIL'} -> {out}", err=True)
        else:
            click.echo(text)
        sys.exit(code)

    return cmd


for _name in COMMANDS:
    _make_command(_name)


if __name__ == "__main__":
    main()
