import random

import gmpy2
import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wbalg import linalg as la
from wbalg.matrix_calculus import (
    EigenvalueHit,
    IrrationalSpectrum,
    inverse_of_polynomial,
    minimal_polynomial,
    poly_matrix,
    spectral_decompose,
    sqrt_of_polynomial,
    sqrt_series_coefficients,
    truncated_inverse,
)
from wbalg.scalars import mp_context

Q = gmpy2.mpq


def diag(*xs):
    n = len(xs)
    return [[Q(xs[i]) if i == j else Q(0) for j in range(n)] for i in range(n)]


def jordan(a, n):
    return [[Q(a) if i == j else (Q(1) if j == i + 1 else Q(0)) for j in range(n)] for i in range(n)]


def random_matrix(rng, size, max_block=3):
    """P J P^-1 with rational eigenvalues and random Jordan structure."""
    blocks, left = [], size
    while left:
        k = rng.randint(1, min(max_block, left))
        blocks.append((Q(rng.randint(-6, 6), rng.choice([1, 2, 3])), k))
        left -= k
    J = la.zeros(size)
    pos = 0
    for a, k in blocks:
        for i in range(k):
            J[pos + i][pos + i] = a
            if i + 1 < k:
                J[pos + i][pos + i + 1] = Q(1)
        pos += k
    while True:
        P = [[Q(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)]
        if la.rank(P) == size:
            break
    return la.matmul(la.matmul(P, J), la.inverse(P))


def test_series_head():
    assert sqrt_series_coefficients(5) == [Q(1), Q(1, 2), Q(-1, 8), Q(1, 16), Q(-5, 128)]


def test_identity_decomposition():
    sd = spectral_decompose(la.eye(3))
    assert [(c.eigenvalue, c.index) for c in sd.components] == [(1, 1)]
    assert sd.components[0].matrix == la.eye(3)


def test_nilpotent_jordan_block():
    sd = spectral_decompose(jordan(0, 2))
    assert [(c.eigenvalue, c.index) for c in sd.components] == [(0, 2)]


def test_diagonal_components():
    sd = spectral_decompose(diag(2, 2, 5))
    comps = {c.eigenvalue: c for c in sd.components}
    assert set(comps) == {2, 5}
    assert la.rank(comps[Q(2)].matrix) == 2 and la.rank(comps[Q(5)].matrix) == 1
    for c in sd.components:
        assert la.matmul(c.matrix, c.matrix) == c.matrix


def test_irrational_spectrum_detected():
    with pytest.raises(IrrationalSpectrum):
        spectral_decompose([[Q(0), Q(2)], [Q(1), Q(0)]])


def test_inverse_examples():
    assert inverse_of_polynomial(diag(2, 5), [Q(1)]) == la.eye(2)
    assert inverse_of_polynomial(diag(2, 5), [Q(0), Q(1)]) == diag(Q(1, 2), Q(1, 5))
    J = jordan(3, 2)
    assert la.matmul(inverse_of_polynomial(J, [Q(0), Q(1)]), J) == la.eye(2)


def test_inverse_hits_eigenvalue():
    with pytest.raises(EigenvalueHit):
        inverse_of_polynomial(diag(0, 1), [Q(0), Q(1)])


def test_sqrt_examples():
    assert sqrt_of_polynomial(la.eye(3), [Q(1)]) == la.eye(3)
    J = jordan(0, 2)
    S = sqrt_of_polynomial(J, [Q(1), Q(1)])
    assert la.matmul(S, S) == la.add(la.eye(2), J)


def test_truncated_inverse_examples():
    eta, g = truncated_inverse(diag(2, 5), [Q(0), Q(1)], avoid=())
    assert eta == la.eye(2) and g == diag(Q(1, 2), Q(1, 5))
    eta, g = truncated_inverse(diag(0, 1), [Q(0), Q(1)], avoid=(Q(0),))
    assert eta == diag(0, 1) and g == diag(0, 1)


def test_truncated_inverse_is_not_an_inverse():
    A = diag(0, 1)
    eta, g = truncated_inverse(A, [Q(0), Q(1)], avoid=(Q(0),))
    assert la.matmul(A, g) == eta != la.eye(2)




@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_random_truncated_inverse(size, seed):
    rng = random.Random(seed)
    A = random_matrix(rng, size)
    spec = spectral_decompose(A).eigenvalues
    avoid = (rng.choice(spec),)
    f = [Q(rng.randint(1, 4)), Q(1)]
    try:
        eta, g = truncated_inverse(A, f, avoid)
    except EigenvalueHit:
        return
    fA = poly_matrix(f, A)
    assert la.matmul(la.matmul(fA, eta), g) == eta
    assert la.matmul(g, la.matmul(fA, eta)) == eta
    assert la.matmul(la.matmul(eta, g), eta) == g


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_random_minimal_polynomial_annihilates(size, seed):
    A = random_matrix(random.Random(seed), size)
    mu = minimal_polynomial(A)
    assert la.is_zero(poly_matrix(mu, A))
    sd = spectral_decompose(A)
    total = la.zeros(size)
    for c in sd.components:
        total = la.add(total, c.matrix)
        N = la.sub(A, la.scale(c.eigenvalue, la.eye(size)))
        P = c.matrix
        for _ in range(c.index):
            P = la.matmul(N, P)
        assert la.is_zero(P)
    assert total == la.eye(size)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_sqrt_commutes_with_argument(size, seed):
    rng = random.Random(seed)
    A = random_matrix(rng, size)
    shift = max(abs(x) for x in spectral_decompose(A).eigenvalues) + 1
    S = sqrt_of_polynomial(A, [Q(shift), Q(1)])
    ctx = mp_context(256)
    An = [[ctx.mpf(int(x.numerator)) / int(x.denominator) for x in row] for row in A]
    assert la.max_abs(la.sub(la.matmul(S, An), la.matmul(An, S))) < 1e-60
