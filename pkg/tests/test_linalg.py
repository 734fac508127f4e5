import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ballquot import linalg

small_int = st.integers(-9, 9)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=m, max_size=m)))


def check_snf(A):
    D, U, V = linalg.smith_normal_form(A)
    m, n = len(A), len(A[0])
    assert linalg.matmul(linalg.matmul(U, A), V) == D
    assert abs(linalg.determinant(U)) == 1 and abs(linalg.determinant(V)) == 1
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0


def test_snf_500_seeded_matrices():
    rng = random.Random(12345)
    for _ in range(500):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        check_snf([[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])


@given(matrices())
def test_snf_property(A):
    check_snf(A)


def test_snf_a2():
    assert linalg.invariant_factors([[-2, 1], [1, -2]]) == [1, 3]


def test_snf_zero_matrix():
    D, U, V = linalg.smith_normal_form([[0, 0], [0, 0]])
    assert D == [[0, 0], [0, 0]]


@given(matrices())
def test_saturated_kernel_property(A):
    K = linalg.saturated_kernel(A)
    for v in K:
        assert linalg.matvec(A, v) == [0] * len(A)
    assert len(K) == len(A[0]) - linalg.rank(A)
    assert linalg.is_saturated(K)
    assert K == linalg.hnf_rows(K)


def test_kernel_examples():
    assert linalg.saturated_kernel([[2, 2, -2]]) == [[1, 0, 1], [0, 1, 1]]
    assert linalg.saturated_kernel([[1, 1], [1, 1]]) == [[1, -1]]
    assert linalg.saturated_kernel([[Fraction(1, 2), Fraction(1, 3)]]) == [[2, -3]]


def test_saturate():
    assert linalg.saturate([[2, 4, 0]]) == [[1, 2, 0]]
    assert linalg.is_saturated([[1, 3]])
    assert not linalg.is_saturated([[2, 2]])
    with pytest.raises(ValueError):
        linalg.saturate([[1, 2], [2, 4]])


@given(matrices(4, 4))
def test_hnf_idempotent_and_same_span(A):
    H = linalg.hnf_rows(A)
    assert linalg.hnf_rows(H) == H
    assert len(H) == linalg.rank(A)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_rational(A):
    assert Fraction(linalg.determinant(A)) == linalg.determinant([[Fraction(x) for x in r] for r in A])


def test_charpoly_examples():
    assert linalg.charpoly([[0, -1], [1, -1]]) == [1, 1, 1]
    assert linalg.charpoly([[2]]) == [1, -2]


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_constant_term(A):
    n = len(A)
    cp = linalg.charpoly(A)
    assert cp[0] == 1 and len(cp) == n + 1
    assert cp[-1] == (-1) ** n * linalg.determinant(A)
    assert cp[1] == -sum(A[i][i] for i in range(n))


def symmetric(n_max=5):
    def build(n):
        return st.lists(small_int, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
            lambda xs: _sym(n, xs))
    return st.integers(1, n_max).flatmap(build)


def _sym(n, xs):
    G = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = next(it)
    return G


@given(symmetric())
def test_inertia_matches_diagonalization(G):
    P, diag = linalg.diagonalize_congruence(G)
    pos = sum(d > 0 for d in diag)
    neg = sum(d < 0 for d in diag)
    assert linalg.inertia(G) == (pos, neg, len(G) - pos - neg)
    D = linalg.congruence([[Fraction(x) for x in r] for r in G], P)
    assert all(D[i][j] == (diag[i] if i == j else 0) for i in range(len(G)) for j in range(len(G)))


def test_signature_degenerate():
    with pytest.raises(ValueError, match="degenerate"):
        linalg.signature([[1, 1], [1, 1]])


def test_solve_and_inverse():
    A = [[2, 1], [1, 1]]
    assert linalg.solve(A, [3, 2]) == [1, 1]
    inv = linalg.rat_inverse(A)
    assert linalg.matmul(A, inv) == linalg.identity(2)
    with pytest.raises(ValueError):
        linalg.solve([[1], [1]], [1, 2])


def test_primitive_part_and_content():
    assert linalg.content([4, -6, 8]) == 2
    assert linalg.primitive_part([4, -6, 8]) == [2, -3, 4]
    with pytest.raises(ValueError):
        linalg.primitive_part([0, 0])
