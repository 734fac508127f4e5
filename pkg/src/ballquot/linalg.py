"""Exact integer and rational matrix algebra.

Matrices are plain nested lists (rows) of ``int`` or ``fractions.Fraction``.
Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

Matrix = list  # list[list[int | Fraction]]


class SmithDecomposition(NamedTuple):
    """``U @ M @ V == D`` with ``D`` diagonal and ``d_1 | d_2 | ...``."""

    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    if not M:
        return 0, 0
    return len(M), len(M[0])


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def bilinear(G: Sequence[Sequence], x: Sequence, y: Sequence):
    """``x^T G y``."""
    return sum(xi * gy for xi, gy in zip(x, matvec(G, y)))


def congruence(G: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    """``B^T G B`` where the columns of ``B`` are the new basis vectors."""
    return matmul(transpose(B), matmul(G, B))


def columns_to_matrix(cols: Sequence[Sequence], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form over the integers.

    Returns ``(D, U, V)`` with ``U M V = D``, ``U`` and ``V`` unimodular and
    the diagonal of ``D`` non-negative with each entry dividing the next.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[int(x) for x in row] for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        if c:
            A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col_dst += c * col_src
        if c:
            for R in (A, V):
                for row in R:
                    row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            # pivot: smallest nonzero |entry| in the trailing block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return _finish(A, U, V)
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                continue
            # divisibility: pivot must divide the whole trailing block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return _finish(A, U, V)


def _finish(A, U, V) -> SmithDecomposition:
    return SmithDecomposition(A, U, V)


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    return smith_normal_form(M).diagonal


# ---------------------------------------------------------------------------
# Hermite normal form, kernels, saturation

def hnf_rows(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Zero rows are dropped; pivots are positive and entries above a pivot are
    reduced into ``[0, pivot)``.  The result is a canonical basis of the span.
    """
    rows = [[int(x) for x in v] for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list[int]] = []
    r = 0
    for c in range(n):
        # euclid on column c among rows[r:]
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[k] = rows[k], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][c]:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
            piv = rows[r][c]
            for i in range(r):
                q = rows[i][c] // piv
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            r += 1
            if r == len(rows):
                break
    out = [row for row in rows[:r] if any(row)]
    return out


def saturated_kernel(M: Sequence[Sequence]) -> list[list[int]]:
    """Z-basis of ``{x in Z^n : M x = 0}``, returned as a list of vectors.

    Accepts rational entries (rows are cleared of denominators).  An integer
    kernel is automatically saturated; the basis is put in Hermite normal form
    so the answer does not depend on elimination order.
    """
    if not M:
        return []
    n = len(M[0])
    rows = [clear_denominators(row) for row in M]
    if not any(any(r) for r in rows):
        return [list(v) for v in identity(n)]
    snf = smith_normal_form(rows)
    r = snf.rank
    V = snf.V
    basis = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return hnf_rows(basis)


def saturate(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Primitive closure ``(span_Q vectors) ∩ Z^n`` of independent vectors."""
    vecs = [[int(x) for x in v] for v in vectors]
    if not vecs:
        return []
    n = len(vecs[0])
    K = columns_to_matrix(vecs, n)
    snf = smith_normal_form(K)
    r = snf.rank
    if r != len(vecs):
        raise ValueError("vectors are linearly dependent")
    Uinv = inverse_unimodular(snf.U)
    return hnf_rows([[Uinv[i][j] for i in range(n)] for j in range(r)])


def is_saturated(vectors: Sequence[Sequence[int]]) -> bool:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return True
    K = columns_to_matrix(vecs, len(vecs[0]))
    diag = smith_normal_form(K).diagonal
    return all(d == 1 for d in diag)


def inverse_unimodular(U: Sequence[Sequence[int]]) -> Matrix:
    inv = rat_inverse(U)
    out = [[int(x) for x in row] for row in inv]
    if any(Fraction(a) != b for ra, rb in zip(out, inv) for a, b in zip(ra, rb)):
        raise ValueError("matrix is not unimodular")
    return out


def clear_denominators(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive-in-denominator integer vector."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in fr]


def primitive_part(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return [int(x) // g for x in v]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


# ---------------------------------------------------------------------------
# Determinants, inverses, rational solving

def determinant(M: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in M for x in row):
        return _rat_det(M)
    A = [[int(x) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _rat_det(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return det


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def rat_inverse(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of ``A x = b`` for ``A`` of full column rank.

    Raises ``ValueError`` if the system is inconsistent.
    """
    m = len(A)
    n = len(A[0])
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = rref(aug)
    if n in piv:
        raise ValueError("inconsistent linear system")
    if len(piv) != n:
        raise ValueError("system has no unique solution")
    return [R[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Characteristic polynomials and exact inertia

def charpoly(M: Sequence[Sequence]) -> list:
    """Characteristic polynomial ``det(xI - M)`` by Berkowitz's algorithm.

    Division free, so integer input gives integer coefficients.  Returned
    highest degree first: ``[1, c_{n-1}, ..., c_0]``.
    """
    n = len(M)
    if n == 0:
        return [1]
    A = [list(row) for row in M]
    # Berkowitz: build Toeplitz products from the bottom-right corner outwards
    poly = [1, -A[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        size = n - k  # current principal submatrix A[k:, k:]
        a = A[k][k]
        R = A[k][k + 1:]  # row
        C = [A[i][k] for i in range(k + 1, n)]  # column
        S = [row[k + 1:] for row in A[k + 1:]]
        # column of the Toeplitz matrix: 1, -a, -R C, -R S C, -R S^2 C, ...
        col = [1, -a]
        v = C
        for _ in range(size - 1):
            col.append(-sum(r * x for r, x in zip(R, v)))
            v = matvec(S, v)
        # multiply lower-triangular Toeplitz (size+1 x size) by previous poly
        new = []
        for i in range(size + 1):
            s = 0
            for j in range(min(i + 1, size)):
                s += col[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly


def _sign_changes(coeffs: Sequence) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def inertia(G: Sequence[Sequence]) -> tuple[int, int, int]:
    """Exact inertia ``(n_plus, n_minus, n_zero)`` of a symmetric matrix.

    The characteristic polynomial of a real symmetric matrix has only real
    roots, so Descartes' rule of signs counts them exactly.
    """
    n = len(G)
    if n == 0:
        return 0, 0, 0
    fr = [[Fraction(x) for x in row] for row in G]
    if any(fr[i][j] != fr[j][i] for i in range(n) for j in range(i)):
        raise ValueError("matrix is not symmetric")
    den = 1
    for row in fr:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    Z = [[int(x * den) for x in row] for row in fr]
    cp = charpoly(Z)  # degree n, highest first
    zero = 0
    while cp and cp[-1] == 0:
        cp = cp[:-1]
        zero += 1
    pos = _sign_changes(cp)
    deg = len(cp) - 1
    neg_poly = [c * (-1) ** (deg - i) for i, c in enumerate(cp)]
    neg = _sign_changes(neg_poly)
    return pos, neg, zero


def signature(G: Sequence[Sequence]) -> tuple[int, int]:
    """Exact signature ``(s_plus, s_minus)`` of a non-degenerate symmetric matrix."""
    pos, neg, zero = inertia(G)
    if zero:
        raise ValueError("degenerate form")
    return pos, neg


def diagonalize_congruence(G: Sequence[Sequence]) -> tuple[Matrix, list[Fraction]]:
    """Rational ``P`` with ``P^T G P`` diagonal; returns ``(P, diagonal)``.

    Columns of ``P`` are the new basis vectors.
    """
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(src, dst, c):  # basis_dst += c * basis_src, as congruence
        for row in P:
            row[dst] += c * row[src]
        for row in A:
            row[dst] += c * row[src]
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]

    def swap(i, j):
        for row in P:
            row[i], row[j] = row[j], row[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        A[i], A[j] = A[j], A[i]

    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    continue
                col_op(j, k, Fraction(1))
                if A[k][k] == 0:  # char 0: 2 A_kj != 0 after one more step
                    col_op(j, k, Fraction(1))
        for j in range(k + 1, n):
            if A[k][j]:
                col_op(k, j, -A[k][j] / A[k][k])
    return P, [A[i][i] for i in range(n)]
