"""Isometries of prime order: invariant and coinvariant lattices, ball dimensions, O⁺."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .lattice import Lattice, _is_prime
from .sublattice import PrimitiveEmbedding, orthogonal_complement


def block_diagonal(*blocks: Sequence[Sequence[int]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for B in blocks:
        for i, row in enumerate(B):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(B)
    return out


def matrix_power(M, e: int):
    R = linalg.identity(len(M))
    B = [list(r) for r in M]
    while e:
        if e & 1:
            R = linalg.matmul(R, B)
        B = linalg.matmul(B, B)
        e >>= 1
    return R


def is_isometry(M, ambient: Lattice) -> bool:
    G = [list(r) for r in ambient.gram]
    return linalg.congruence(G, M) == G


def cyclotomic_poly(p: int) -> list[int]:
    """``Φ_p = x^{p-1} + ... + 1`` for prime ``p``, highest degree first."""
    return [1] * p


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class IsometryAction:
    """An isometry ``M`` of ``ambient`` with ``M^p = 1``, acting on column vectors."""

    ambient: Lattice
    matrix: tuple[tuple[int, ...], ...]
    order: int

    @cached_property
    def invariant(self) -> PrimitiveEmbedding:
        """``T = ker(M - 1)``, saturated."""
        n = self.ambient.rank
        A = [[self.matrix[i][j] - (i == j) for j in range(n)] for i in range(n)]
        return PrimitiveEmbedding(self.ambient, tuple(tuple(v) for v in linalg.saturated_kernel(A)))

    @cached_property
    def coinvariant(self) -> PrimitiveEmbedding:
        return orthogonal_complement(self.invariant)

    @property
    def glue_index(self) -> int:
        return self.invariant.glue_index

    @cached_property
    def restricted_to_coinvariant(self) -> list[list[Fraction]]:
        """Matrix of ``M`` on the basis of ``S``."""
        S = self.coinvariant
        B = S.basis_matrix
        MB = linalg.matmul([list(r) for r in self.matrix], B)
        cols = [linalg.solve(B, [MB[i][j] for i in range(len(MB))]) for j in range(S.rank)]
        return linalg.columns_to_matrix(cols, S.rank)

    def to_dict(self) -> dict:
        return {
            "ambient": self.ambient.to_dict(),
            "matrix": [list(r) for r in self.matrix],
            "order": self.order,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IsometryAction":
        from .sublattice import _ambient_from
        return verify(d["matrix"], _ambient_from(d["ambient"]), d["order"])


def _build(matrix, ambient: Lattice, p: int) -> IsometryAction:
    if not _is_prime(p):
        raise ValueError(f"order {p} is not prime")
    n = ambient.rank
    M = [[int(x) for x in row] for row in matrix]
    if len(M) != n or any(len(r) != n for r in M):
        raise ValueError("matrix size does not match the ambient rank")
    if not is_isometry(M, ambient):
        raise ValueError("Gram not preserved")
    if M == linalg.identity(n) or matrix_power(M, p) != linalg.identity(n):
        raise ValueError("order mismatch")
    return IsometryAction(ambient, tuple(tuple(r) for r in M), p)


def verify(matrix, ambient: Lattice, p: int) -> IsometryAction:
    """Check ``matrix`` is an isometry of exact prime order ``p`` with ``T != 0``."""
    action = _build(matrix, ambient, p)
    T = action.invariant
    if T.rank == 0:
        raise ValueError("invariant lattice degenerate")
    sig = linalg.signature(T.gram)
    if sig != (1, T.rank - 1):
        warnings.warn(f"invariant lattice has signature {sig}, expected (1, {T.rank - 1})")
    S = action.coinvariant
    for v in S.basis:
        if not S.contains(linalg.matvec(action.matrix, v)):
            raise ValueError("coinvariant lattice not preserved")
    return action


def coinvariant_charpoly_check(action: IsometryAction) -> int:
    """``k`` with ``charpoly(M|S) = Φ_p^k``."""
    p = action.order
    rS = action.coinvariant.rank
    if rS % (p - 1):
        raise ValueError("non-free cyclotomic action")
    k = rS // (p - 1)
    R = action.restricted_to_coinvariant
    cp = linalg.charpoly(R)
    target = [1]
    for _ in range(k):
        target = poly_mul(target, cyclotomic_poly(p))
    if [Fraction(c) for c in cp] != [Fraction(c) for c in target]:
        raise ValueError("non-free cyclotomic action")
    return k


def ball_dimension(rank_S: int, p: int) -> int:
    """``dim S(ξ) - 1 = rank S / (p - 1) - 1``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if rank_S <= 0 or rank_S % (p - 1):
        raise ValueError("no free cyclotomic structure")
    return rank_S // (p - 1) - 1


def totient_bound(p: int, b2: int, rho: int) -> bool:
    """``φ(p) <= b2 - ρ``."""
    if rho < 1:
        raise ValueError("Picard number must be >= 1")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p - 1 <= b2 - rho


def max_picard_number(p: int, b2: int) -> int:
    return b2 - (p - 1)


def coxeter_matrix(k: int) -> list[list[int]]:
    """Coxeter element ``s_1 s_2 ... s_k`` of ``A_k`` in the simple-root basis."""
    from .catalog import a_gram
    G = a_gram(k)
    M = linalg.identity(k)
    for i in range(k):
        M = linalg.matmul(M, _root_reflection(G, i))
    return M


def _root_reflection(G, i):
    # x -> x + (x, α_i) α_i for a root of norm -2; columns are images of e_j
    n = len(G)
    R = linalg.identity(n)
    for j in range(n):
        R[i][j] += G[i][j]
    return R


def coxeter_action(k: int) -> IsometryAction:
    """Fixed-point-free order ``k+1`` isometry of ``A_k``; ``k+1`` must be prime."""
    if not _is_prime(k + 1):
        raise ValueError(f"k+1 = {k + 1} is not prime")
    from .catalog import LatticeName, make
    return _build(coxeter_matrix(k), make(LatticeName("A", k)), k + 1)


def reflection(delta: Sequence[int], ambient: Lattice) -> list[list[int]]:
    """Integral reflection ``x -> x - 2 (x, δ)/(δ, δ) δ``."""
    qd = ambient.q(delta)
    if qd == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    Gd = ambient.pairings(delta)
    n = ambient.rank
    R = []
    for i in range(n):
        row = []
        for j in range(n):
            val = Fraction(int(i == j)) - Fraction(2 * Gd[j] * delta[i], qd)
            if val.denominator != 1:
                raise ValueError("reflection is not integral")
            row.append(int(val))
        R.append(row)
    return R


def positive_frame(ambient: Lattice) -> list[list[Fraction]]:
    """Vectors spanning a maximal positive-definite subspace (exact)."""
    P, diag = linalg.diagonalize_congruence(ambient.gram)
    n = ambient.rank
    return [[P[i][j] for i in range(n)] for j in range(n) if diag[j] > 0]


def in_O_plus(matrix, ambient: Lattice) -> bool:
    """Whether an isometry preserves the orientation of positive-definite subspaces.

    With ``F`` a positive frame, the orthogonal projection of ``M F`` back to
    ``span F`` has determinant of the same sign as ``det(F^T G M F)``.
    """
    M = [[int(x) for x in row] for row in matrix]
    if not is_isometry(M, ambient):
        raise ValueError("Gram not preserved")
    frame = positive_frame(ambient)
    if not frame:
        return True
    F = linalg.columns_to_matrix(frame, ambient.rank)
    pairing = linalg.matmul(linalg.transpose(F), linalg.matmul(ambient.gram, linalg.matmul(M, F)))
    det = linalg.determinant(pairing)
    if det == 0:
        raise ArithmeticError("degenerate frame pairing")
    return det > 0


def trace(M) -> int:
    return sum(M[i][i] for i in range(len(M)))


def glue_power_check(obj, p: int) -> bool:
    """Whether the glue index of an action (or embedding) is a power of ``p``."""
    d = obj.glue_index
    while d % p == 0:
        d //= p
    return d == 1
