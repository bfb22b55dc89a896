"""Small dense linear algebra over exact rationals and mpmath numbers.

Matrices are lists of row lists.  Entries may be ``mpq`` (exact) or mpmath
``mpf``/``mpc`` (numeric); the routines only rely on ``+ - * /`` and, for
numeric pivoting, ``abs``.
"""

from __future__ import annotations

import gmpy2

Q0 = gmpy2.mpq(0)
Q1 = gmpy2.mpq(1)


def zeros(n, m=None, zero=Q0):
    m = n if m is None else m
    return [[zero] * m for _ in range(n)]


def eye(n, one=Q1, zero=Q0):
    out = zeros(n, n, zero)
    for i in range(n):
        out[i][i] = one
    return out


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def matmul(A, B):
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} @ {k2}x{m}")
    zero = _zero_of(A, B)
    out = []
    for row in A:
        acc = [zero] * m
        for j, a in enumerate(row):
            if not a:
                continue
            brow = B[j]
            for c in range(m):
                b = brow[c]
                if b:
                    acc[c] = acc[c] + a * b
        out.append(acc)
    return out


def _zero_of(*mats):
    for M in mats:
        for row in M:
            for x in row:
                if not isinstance(x, type(Q0)):
                    return x * 0
    return Q0


def matvec(A, v):
    zero = _zero_of(A, [v])
    out = []
    for row in A:
        acc = zero
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def sub(A, B):
    return [[a + (-b) for a, b in zip(r, s)] for r, s in zip(A, B)]


def scale(c, A):
    return [[c * a for a in r] for r in A]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def mat_convert(A, fn):
    return [[fn(x) for x in r] for r in A]


def max_abs(A):
    best = 0
    for r in A:
        for x in r:
            v = abs(x)
            if v > best:
                best = v
    return best


def is_zero(A) -> bool:
    return all(not x for r in A for x in r)


def rref(M, tol=None):
    """Reduced row echelon form; ``tol`` enables numeric pivoting."""
    A = [list(r) for r in M]
    n, m = shape(A)
    pivots = []
    row = 0
    for col in range(m):
        if row >= n:
            break
        if tol is None:
            piv = next((i for i in range(row, n) if A[i][col]), None)
        else:
            piv, best = None, tol
            for i in range(row, n):
                v = abs(A[i][col])
                if v > best:
                    piv, best = i, v
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        p = A[row][col]
        prow = [x / p for x in A[row]]
        A[row] = prow
        nz = [c for c in range(col, m) if prow[c]]
        for i in range(n):
            if i == row:
                continue
            f = A[i][col]
            if f:
                ri = A[i]
                for c in nz:
                    ri[c] = ri[c] + (-(f * prow[c]))
                if tol is not None:
                    ri[col] = ri[col] * 0
        pivots.append(col)
        row += 1
    return A, pivots


def rank(M, tol=None) -> int:
    if not M:
        return 0
    return len(rref(M, tol)[1])


def nullspace(M, tol=None):
    """Basis (list of vectors) of {x : M x = 0}."""
    n, m = shape(M)
    R, piv = rref(M, tol)
    free = [c for c in range(m) if c not in piv]
    one = Q1 if tol is None else (R[0][0] * 0 + 1 if R else 1)
    zero = one * 0
    basis = []
    for f in free:
        v = [zero] * m
        v[f] = one
        for r, pc in enumerate(piv):
            v[pc] = -R[r][f]
        basis.append(v)
    return basis


def inverse(M, tol=None):
    n, m = shape(M)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    one = Q1 if tol is None else M[0][0] * 0 + 1
    aug = [list(r) + [one if i == j else one * 0 for j in range(n)] for i, r in enumerate(M)]
    R, piv = rref(aug, tol)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def solve_left_inverse(B):
    """L with L·B = I for a full-column-rank exact B (n x k)."""
    Bt = transpose(B)
    G = matmul(Bt, B)
    return matmul(inverse(G), Bt)


def column_space_basis(vectors, tol=None):
    """Independent subset (as rows) spanning the same space, echelon-reduced."""
    if not vectors:
        return []
    R, piv = rref(vectors, tol)
    return R[: len(piv)]


def independent_extend(basis_rows, pivots_cache, v):
    """Helper for incremental span growth (exact): returns reduced v or None."""
    w = list(v)
    for row, pc in zip(basis_rows, pivots_cache):
        c = w[pc]
        if c:
            w = [x + (-(c * y)) for x, y in zip(w, row)]
    pc = next((i for i, x in enumerate(w) if x), None)
    if pc is None:
        return None, None
    p = w[pc]
    return [x / p for x in w], pc


class SpanBuilder:
    """Incrementally maintained exact (or numeric) row space in echelon form."""

    def __init__(self, dim, tol=None):
        self.dim = dim
        self.rows: list = []
        self.pivots: list = []
        self.tol = tol

    def reduce(self, v):
        w = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = w[pc]
            if c:
                w = [x + (-(c * y)) for x, y in zip(w, row)]
        return w

    def add(self, v) -> bool:
        w = self.reduce(v)
        if self.tol is None:
            pc = next((i for i, x in enumerate(w) if x), None)
        else:
            pc, best = None, self.tol
            for i, x in enumerate(w):
                if abs(x) > best:
                    pc, best = i, abs(x)
        if pc is None:
            return False
        p = w[pc]
        w = [x / p for x in w]
        # keep rows fully reduced at the new pivot
        for i, row in enumerate(self.rows):
            c = row[pc]
            if c:
                self.rows[i] = [x + (-(c * y)) for x, y in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(pc)
        return True

    def __len__(self):
        return len(self.rows)


def sparse_rank(rows) -> int:
    """Exact rank of sparse rational rows (dicts col -> value)."""
    pivots: dict = {}
    for row in rows:
        r = {c: gmpy2.mpq(v) for c, v in row.items() if v}
        while r:
            c = min(r)
            if c in pivots:
                prow = pivots[c]
                f = r[c]
                for cc, vv in prow.items():
                    x = r.get(cc, 0) - f * vv
                    if x:
                        r[cc] = x
                    else:
                        r.pop(cc, None)
            else:
                inv = 1 / r[c]
                pivots[c] = {cc: vv * inv for cc, vv in r.items()}
                break
    return len(pivots)
