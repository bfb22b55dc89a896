"""Acceptance suite: one line of PASS/FAIL output per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear even without ``-s``).
"""

import math
import random
import time

import gmpy2
import pytest

from conftest import cyclotomic, ftable
from test_matrix_calculus import random_matrix
from wbalg import linalg as la
from wbalg.center import MultiPoly, central_element, reproduce_counterexample, verify_central
from wbalg.cyclotomic import check_dimensions, eigen_cross_check, verify_relations
from wbalg.diagrams import enumerate_diagrams, sequences
from wbalg.isomorphism import verify_all
from wbalg.matrix_calculus import (
    poly_matrix,
    spectral_decompose,
    sqrt_parts,
    sqrt_of_polynomial,
    sqrt_series_coefficients,
    truncated_inverse,
)
from wbalg.scalars import mp_context
from wbalg.schur_weyl import schur_weyl_report
from wbalg.walled_brauer import verify_presentation
from wbalg.young4 import sum_of_squares

Q = gmpy2.mpq
RANKS4 = [(r, n - r) for n in range(1, 5) for r in range(n + 1)]
RANKS3 = [rt for rt in RANKS4 if sum(rt) <= 3]
CYC = [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (1, 2)]


@pytest.fixture
def announce(capsys):
    def emit(number, title, ok, started, detail=""):
        line = f"CRITERION {number} {'PASS' if ok else 'FAIL'} [{time.perf_counter() - started:.1f}s] {title}"
        with capsys.disabled():
            print("\n" + line + (f" :: {detail}" if detail else ""))
        assert ok, line + " " + detail

    return emit


def test_criterion_1_presentation(announce):
    t0 = time.perf_counter()
    bad = [rt for rt in RANKS4 if not verify_presentation(*rt).passed]
    announce(1, "walled Brauer presentation, r+t <= 4, formal delta", not bad, t0, f"failing {bad}" if bad else "")


def test_criterion_2_dimension_counts(announce):
    t0 = time.perf_counter()
    bad = []
    for r, t in RANKS4:
        for a in sequences(r, t):
            for b in sequences(r, t):
                if len(enumerate_diagrams(a, b)) != math.factorial(r + t):
                    bad.append((a, b))
    announce(2, "|enumerate(a,b)| = (r+t)!, r+t <= 4", not bad, t0)


def test_criterion_3_schur_weyl(announce):
    t0 = time.perf_counter()
    bad = [rt for rt in RANKS3 if not schur_weyl_report(3, *rt).passed]
    announce(3, "Schur-Weyl oracle at m = 3, r+t <= 3", not bad, t0, f"failing {bad}" if bad else "")


def test_criterion_4_square_root_calculus(announce):
    t0 = time.perf_counter()
    head = sqrt_series_coefficients(5) == [Q(1), Q(1, 2), Q(-1, 8), Q(1, 16), Q(-5, 128)]
    ctx = mp_context(256)
    rng = random.Random(20240601)
    worst, exact_cases, bad = 0, 0, []
    for i in range(100):
        size = rng.randint(1, 8)
        A = random_matrix(rng, size)
        spec = spectral_decompose(A)
        shift = max(abs(x) for x in spec.eigenvalues) + rng.randint(1, 3)
        f = [Q(shift), Q(1)]
        fA = poly_matrix(f, A)
        _, parts = sqrt_parts(A, f, spec)
        S = sqrt_of_polynomial(A, f, spec)
        S2 = la.matmul(S, S)
        if all(isinstance(root, type(Q(0))) for root, _ in parts):
            exact_cases += 1
            if not la.is_zero(la.sub(S2, fA)):
                bad.append((i, "sqrt exact"))
        else:
            fn = la.mat_convert(fA, lambda x: ctx.mpf(int(x.numerator)) / int(x.denominator))
            res = la.max_abs(la.sub(S2, fn))
            worst = max(worst, res)
            if res >= 1e-30:
                bad.append((i, "sqrt numeric"))
        avoid = (rng.choice(spec.eigenvalues),)
        g_f = [Q(rng.randint(1, 5)), Q(1)]
        try:
            eta, g = truncated_inverse(A, g_f, avoid, spec)
        except ZeroDivisionError:
            continue
        if not la.is_zero(la.sub(la.matmul(g, la.matmul(poly_matrix(g_f, A), eta)), eta)):
            bad.append((i, "inverse"))
    ok = head and not bad
    announce(4, "series head and 100 random square roots / truncated inverses", ok, t0,
             f"exact={exact_cases} numeric_worst={float(worst):.1e} bad={bad[:5]}")


def test_criterion_5_cyclotomic_build(announce):
    t0 = time.perf_counter()
    bad = []
    for rt in CYC:
        alg = cyclotomic(*rt)
        if not check_dimensions(alg).passed:
            bad.append((rt, "dimension"))
        if not verify_relations(alg).passed:
            bad.append((rt, "relations"))
    announce(5, "cyclotomic block dimension 2^(r+t)(r+t)! and relations", not bad, t0, f"{bad}" if bad else "")


def test_criterion_6_eigen_cross_check(announce):
    t0 = time.perf_counter()
    bad = [rt for rt in RANKS3 if not eigen_cross_check(cyclotomic(*rt), table=ftable(*rt)).passed]
    announce(6, "joint spectra match 4-Young path predictions, r+t <= 3", not bad, t0, f"{bad}" if bad else "")


def test_criterion_7_isomorphism(announce):
    t0 = time.perf_counter()
    bad, worst, gains = [], 0.0, []
    for rt in RANKS3:
        reps = verify_all(cyclotomic(*rt))
        for name, rep in reps.items():
            if not rep.passed:
                bad.append((rt, name))
        worst = max(worst, reps["relations"].data.get("max_residual") or 0.0)
        g = reps["scaling"].data.get("min_gain_orders")
        if g is not None:
            gains.append(g)
    announce(7, "isomorphism images satisfy Br(-delta), JM transport, dimensions, scaling", not bad, t0,
             f"max_residual={float(worst):.1e} min_gain={min(gains, default=float('nan')):.1f} bad={bad}")


def test_criterion_8_center(announce):
    t0 = time.perf_counter()
    ps = MultiPoly.power_sum
    polys = {"p1": ps(3, 1), "p3": ps(3, 3), "p1^2": ps(3, 1) ** 2, "p1p3": ps(3, 1) * ps(3, 3)}
    bad = [k for k, p in polys.items() if not verify_central(central_element(p, 2, 1), 2, 1).passed]
    ce = reproduce_counterexample()
    ok = not bad and ce.passed
    announce(8, "central elements at (2,1) for formal delta and the x2x3 counterexample", ok, t0,
             f"non-central={bad} counterexample={'ok' if ce.passed else 'FAIL'}")


def test_criterion_9_sum_of_squares(announce):
    t0 = time.perf_counter()
    bad = [n for n in range(1, 7) if sum_of_squares(n) != math.factorial(n)]
    announce(9, "sum over Y of f_Y^2 = n!, n <= 6", not bad, t0)
