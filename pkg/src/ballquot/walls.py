"""Wall divisors, short-vector enumeration and the Δ / Δ′ arrangements.

Δ and Δ′ are infinite, so every membership answer here is a bounded-search
certificate: either a concrete witness or "clear up to bound B".
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from . import linalg
from .cyclotomic import CycVector, pairing
from .lattice import Lattice
from .sublattice import PrimitiveEmbedding, decompose_vector, divisibility

WALL_NORMS_K3N2 = (-2, -10)
BRUTE_FORCE_LIMIT = 20_000_000

Predicate = Callable[[Sequence[int], Lattice], bool]


@dataclass(frozen=True)
class WallVector:
    """A primitive negative vector with its norm and divisibility."""

    coords: tuple[int, ...]
    norm: int
    div: int

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if self.norm >= 0:
            raise ValueError("wall vectors have negative norm")
        if linalg.content(self.coords) != 1:
            raise ValueError("wall vectors must be primitive")

    @classmethod
    def of(cls, delta: Sequence[int], ambient: Lattice, coords: Sequence[int] | None = None) -> "WallVector":
        """Build from ambient coordinates; ``coords`` overrides the stored coordinates."""
        return cls(tuple(coords if coords is not None else delta), int(ambient.q(delta)),
                   divisibility(delta, ambient))

    def to_dict(self) -> dict:
        return {"coords": list(self.coords), "norm": self.norm, "div": self.div}


@dataclass(frozen=True)
class WallVerdict:
    """``HIT`` with a witness, or ``CLEAR_UP_TO_BOUND`` (``bound=None`` means exhaustive)."""

    status: str
    bound: int | None
    witness: WallVector | None = None
    witnesses: tuple[WallVector, ...] = field(default=())

    @property
    def hit(self) -> bool:
        return self.status == "HIT"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "bound": self.bound,
            "witness": self.witness.to_dict() if self.witness else None,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def is_wall_divisor(delta: Sequence[int], ambient: Lattice, n: int = 2,
                    predicate: Predicate | None = None) -> bool:
    """Numerical wall-divisor test for K3^[2]-type: ``q = -2``, or ``q = -10`` with div 2."""
    if not any(delta):
        raise ValueError("zero vector")
    if linalg.content(delta) != 1:
        raise ValueError("wall test expects a primitive vector")
    if predicate is not None:
        return bool(predicate(delta, ambient))
    if n != 2:
        raise ValueError(f"no wall criterion for n = {n}; pass a predicate")
    qd = ambient.q(delta)
    if qd == -2:
        return True
    return qd == -10 and divisibility(delta, ambient) == 2


# ---------------------------------------------------------------------------
# enumeration

def _check_target(target: int) -> int:
    target = int(target)
    if target >= 0:
        raise ValueError("target norm must be negative")
    return target


def _lll(Q: list[list[int]]) -> list[list[int]]:
    """Unimodular ``T`` (rows = new basis) making the positive form ``Q`` LLL-reduced.

    The reduction runs on a scaled, rounded Cholesky embedding; only the
    transformation is kept, so exactness of the later search is unaffected.
    """
    R = np.linalg.cholesky(np.array(Q, dtype=float)).T  # Q = R^T R
    scale = 2.0 ** 40 / max(1.0, float(np.abs(R).max()))
    rows = [[ZZ(int(round(x * scale))) for x in R[:, j]] for j in range(len(Q))]
    n = len(Q)
    _, T = DomainMatrix(rows, (n, n), ZZ).lll_transform()
    T = [[int(x) for x in row] for row in T.to_list()]
    if abs(linalg.determinant(T)) != 1:
        raise ArithmeticError("LLL transform is not unimodular")
    return T


def _ldl(Q: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact ``q(x) = sum d_i (x_i + sum_{j>i} mu_ij x_j)^2``."""
    n = len(Q)
    A = [[Fraction(x) for x in row] for row in Q]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i]
        if d[i] <= 0:
            raise ValueError("form is not definite")
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= mu[i][j] * A[i][k]
                A[k][j] = A[j][k]
    return d, mu


def _fincke_pohst(Q: list[list[int]], N: int) -> list[list[int]]:
    """All ``x`` with ``x^T Q x = N`` for positive definite integral ``Q``.

    Pruning is exact: each coordinate range is bracketed with integer square
    roots and every partial sum is kept as a rational.
    """
    n = len(Q)
    d, mu = _ldl(Q)
    out: list[list[int]] = []
    x = [0] * n

    def rec(i: int, budget: Fraction):
        c = -sum((mu[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        t = budget / d[i]
        r = math.isqrt(t.numerator // t.denominator) + 1
        for v in range(math.floor(c) - r, math.ceil(c) + r + 1):
            rest = budget - d[i] * (v - c) ** 2
            if rest < 0:
                continue
            x[i] = v
            if i == 0:
                if rest == 0:
                    out.append(x[:])
            else:
                rec(i - 1, rest)
        x[i] = 0

    if n:
        rec(n - 1, Fraction(N))
    return out


def enumerate_definite(L: Lattice, target_norm: int) -> list[list[int]]:
    """All vectors of a negative definite lattice with ``q = target_norm``, sorted."""
    target = _check_target(target_norm)
    if not L.is_negative_definite():
        raise ValueError("lattice is not negative definite; use enumerate_box")
    Q = [[-x for x in row] for row in L.gram]
    T = _lll(Q) if L.rank > 8 else linalg.identity(L.rank)
    Qr = linalg.congruence(Q, linalg.transpose(T))
    found = _fincke_pohst(Qr, -target)
    Tt = linalg.transpose(T)
    vecs = [linalg.matvec(Tt, y) for y in found]
    return sorted(vecs)


def _schur_search(Q: list[list[int]], N: int, B: int) -> list[list[int]]:
    """Box-clipped search over a positive form, pruning with Schur complements.

    Coordinates are fixed front to back; given the prefix, the least value of
    ``Q`` over the free tail is ``prefix^T S_k prefix`` with ``S_k`` the Schur
    complement of the tail block.  All of it is exact rational arithmetic.
    """
    n = len(Q)
    F = [[Fraction(x) for x in row] for row in Q]
    schur = [None]
    for k in range(1, n + 1):
        if k == n:
            schur.append(F)
            continue
        A = [row[:k] for row in F[:k]]
        Bm = [row[k:] for row in F[:k]]
        Cinv = linalg.rat_inverse([row[k:] for row in F[k:]])
        BC = linalg.matmul(Bm, Cinv)
        schur.append([[A[i][j] - sum(BC[i][t] * Bm[j][t] for t in range(n - k)) for j in range(k)]
                      for i in range(k)])
    # clear denominators: level k works with the integer matrix D_k S_k and bound D_k N
    scaled = [None]
    for S in schur[1:]:
        D = math.lcm(*(e.denominator for row in S for e in row))
        scaled.append(([[int(e * D) for e in row] for row in S], D * N))
    out: list[list[int]] = []
    x: list[int] = []

    def rec(k: int):
        # x[k] must keep a v^2 + 2 b v + c <= N, the Schur value on the first k+1 coordinates
        S, M = scaled[k + 1]
        a = S[k][k]
        row = S[k]
        b = sum(row[j] * x[j] for j in range(k))
        c = sum(S[i][j] * x[i] * x[j] for i in range(k) for j in range(k))
        disc = b * b - a * (c - M)
        if disc < 0:
            return
        r = math.isqrt(disc) + 1
        lo = max(-B, (-b - r) // a)
        hi = min(B, -((b - r) // a))
        for v in range(lo, hi + 1):
            if a * v * v + 2 * b * v + c > M:
                continue
            x.append(v)
            if k == n - 1:
                if linalg.bilinear(Q, x, x) == N:
                    out.append(x[:])
            else:
                rec(k + 1)
            x.pop()

    if n:
        rec(0)
    return out


def _box_bruteforce(G, target: int, B: int, limit: int) -> list[list[int]]:
    n = len(G)
    side = 2 * B + 1
    if side ** n > limit:
        raise ValueError(f"box of {side}^{n} points exceeds the brute-force limit")
    Gmax = max((abs(x) for row in G for x in row), default=0)
    if n * n * B * B * max(Gmax, 1) >= 2 ** 62:
        raise OverflowError("box values may overflow int64")
    Gn = np.array(G, dtype=np.int64).reshape(n, n)
    m = n
    while m > 1 and side ** m > 200_000:
        m -= 1
    h = n - m
    rng = range(-B, B + 1)
    tail = np.array(list(itertools.product(rng, repeat=m)), dtype=np.int64).reshape(-1, m)
    Gtt = Gn[h:, h:]
    tail_q = np.einsum("ij,jk,ik->i", tail, Gtt, tail)
    Gth = Gn[h:, :h]
    Ghh = Gn[:h, :h]
    out = []
    for head in itertools.product(rng, repeat=h):
        hv = np.array(head, dtype=np.int64)
        vals = tail_q + (int(hv @ Ghh @ hv) if h else 0)
        if h:
            vals = vals + 2 * (tail @ (Gth @ hv))
        for idx in np.nonzero(vals == target)[0]:
            out.append(list(head) + [int(t) for t in tail[idx]])
    return out


def enumerate_box(L: Lattice, target_norm: int, bound: int,
                  limit: int = BRUTE_FORCE_LIMIT) -> list[list[int]]:
    """All vectors with coordinates in ``[-B, B]`` and ``q = target_norm``, sorted."""
    target = _check_target(target_norm)
    if bound < 0:
        raise ValueError("box bound must be >= 0")
    if bound == 0 or L.rank == 0:
        return []
    pos, neg = L.signature
    if pos == 0:
        Q = [[-x for x in row] for row in L.gram]
        return sorted(_schur_search(Q, -target, bound))
    if neg == 0:
        return []
    return sorted(_box_bruteforce(L.gram, target, bound, limit))


# ---------------------------------------------------------------------------
# Δ′ and the parity obstruction

def _perp_inertia(delta: Sequence, emb: PrimitiveEmbedding) -> tuple[int, int, int]:
    """Inertia of the saturated sublattice ``E ∩ δ^⊥``."""
    row = emb.pairing_rows(delta)
    K = linalg.saturated_kernel([row])
    if not K:
        return (0, 0, 0)
    return linalg.inertia(linalg.congruence(emb.gram, linalg.columns_to_matrix(K, emb.rank)))


def delta_prime_test(delta: Sequence[int], emb: PrimitiveEmbedding) -> bool:
    """Signature test: ``T ∩ δ^⊥`` of type ``(1, rT-2)`` and ``S ∩ δ^⊥`` of type ``(2, rS-3)``."""
    if not any(delta):
        raise ValueError("zero vector")
    S = emb.complement
    return (_perp_inertia(delta, emb) == (1, emb.rank - 2, 0)
            and _perp_inertia(delta, S) == (2, S.rank - 3, 0))


def projection_test(delta: Sequence[int], emb: PrimitiveEmbedding) -> bool:
    """``q(δ_T) < 0`` and ``q(δ_S) < 0`` for the rational split ``δ = δ_T + δ_S``."""
    dT, dS = decompose_vector(delta, emb)
    L = emb.ambient
    return L.q(dT) < 0 and L.q(dS) < 0


def delta_prime_equiv_check(delta: Sequence[int], emb: PrimitiveEmbedding) -> bool:
    """Whether the signature test and the projection test agree on ``δ``.

    They agree whenever ``T`` has one positive direction and ``S`` two.
    """
    return delta_prime_test(delta, emb) == projection_test(delta, emb)


def two_torsion_obstruction(S: Lattice) -> bool:
    """True iff ``A_S`` has no 2-torsion, so no primitive ``δ ∈ S`` has div 2."""
    return S.det % 2 != 0


def divisible_sublattice(S: PrimitiveEmbedding, d: int) -> list[list[int]]:
    """Basis (in ``S`` coordinates) of ``{δ ∈ S : (δ, L) ⊆ dZ}``."""
    n = S.ambient.rank
    A = [S.ambient.pairings(s) for s in S.basis]  # A[j][i] = (s_j, e_i)
    r = S.rank
    M = [[A[j][i] for j in range(r)] + [-d * (k == i) for k in range(n)] for i in range(n)]
    K = linalg.saturated_kernel(M)
    return linalg.hnf_rows([v[:r] for v in K])


def value_ideal(gram: Sequence[Sequence[int]]) -> int:
    """Generator of the ideal containing every value ``q(x)``: ``gcd(G_ii, 2 G_ij)``."""
    g = 0
    n = len(gram)
    for i in range(n):
        g = math.gcd(g, gram[i][i])
        for j in range(i + 1, n):
            g = math.gcd(g, 2 * gram[i][j])
    return g


@dataclass(frozen=True)
class SieveCertificate:
    """Outcome of the congruence sieve for vectors of given norm and divisibility."""

    norm: int
    div: int
    basis: tuple[tuple[int, ...], ...]
    ideal: int
    excluded: bool


def divisible_norm_sieve(S: PrimitiveEmbedding, norm: int = -10, d: int = 2) -> SieveCertificate:
    """Certify that no ``δ ∈ S`` has ``q(δ) = norm`` and ``d | div δ``.

    Such ``δ`` lie in ``Λ_d = {δ ∈ S : (δ, L) ⊆ dZ}``; if ``norm`` is outside the
    value ideal of ``Λ_d`` the search space is empty for every box bound.
    """
    basis = divisible_sublattice(S, d)
    H = linalg.congruence(S.gram, linalg.columns_to_matrix(basis, S.rank))
    g = value_ideal(H)
    excluded = g != 0 and norm % g != 0
    return SieveCertificate(norm, d, tuple(tuple(v) for v in basis), g, excluded)


# ---------------------------------------------------------------------------
# hyperplanes of the period ball

def hyperplane_membership(x: CycVector, delta: WallVector | Sequence[int]) -> bool:
    """Exact test of ``(δ, x) = 0`` over Q(ζ_p)."""
    coords = delta.coords if isinstance(delta, WallVector) else delta
    if len(coords) != x.ambient.rank:
        raise ValueError("wall vector and period live in different ambients")
    return not pairing(list(coords), x)


def orthogonal_in_S(x: CycVector, S: PrimitiveEmbedding) -> list[list[int]]:
    """Basis (in ``S`` coordinates) of ``Λ = S ∩ x^⊥``."""
    p = x.p
    pair = [pairing(list(s), x) for s in S.basis]
    rows = [[pair[j].coeffs[i] for j in range(S.rank)] for i in range(p - 1)]
    return linalg.saturated_kernel(rows)


def _scan_norms(n: int, predicate, norms, S: PrimitiveEmbedding) -> tuple[int, ...]:
    if predicate is not None:
        if norms is None:
            raise ValueError("a custom wall predicate needs explicit norms")
        return tuple(norms)
    if n != 2:
        raise ValueError(f"no wall criterion for n = {n}; pass a predicate")
    if norms is not None:
        return tuple(norms)
    # div 2 vectors of S need 2-torsion in A_S
    return (-2,) if two_torsion_obstruction(S.lattice) else WALL_NORMS_K3N2


def _verdict(found: list[WallVector], bound) -> WallVerdict:
    if found:
        found = sorted(found, key=lambda w: w.coords)
        return WallVerdict("HIT", bound, found[0], tuple(found))
    return WallVerdict("CLEAR_UP_TO_BOUND", bound)


def delta_scan(x: CycVector, emb: PrimitiveEmbedding, bound: int | None = 3, n: int = 2,
               predicate: Predicate | None = None, norms: Iterable[int] | None = None) -> WallVerdict:
    """Search wall vectors ``δ ∈ S`` (S-coordinates bounded by ``B``) with ``(δ, x) = 0``.

    Rather than scanning the box, the candidates are enumerated exactly in the
    negative definite lattice ``S ∩ x^⊥`` and then clipped to the box, which
    gives the same answer.  ``bound=None`` returns the exhaustive result.
    """
    S = emb.complement
    if bound is not None and bound <= 0:
        return WallVerdict("CLEAR_UP_TO_BOUND", 0)
    wanted = _scan_norms(n, predicate, norms, S)
    K = orthogonal_in_S(x, S)
    if not K:
        return WallVerdict("CLEAR_UP_TO_BOUND", bound)
    Kmat = linalg.columns_to_matrix(K, S.rank)
    lam = Lattice.from_rows(linalg.congruence(S.gram, Kmat))
    if not lam.is_negative_definite():
        raise ValueError("S ∩ x^⊥ is not negative definite; x is not a period point")
    L = emb.ambient
    found = []
    for norm in wanted:
        for y in enumerate_definite(lam, norm):
            c = linalg.matvec(Kmat, y)
            if bound is not None and max(abs(t) for t in c) > bound:
                continue
            if linalg.content(c) != 1:
                continue
            delta = S.to_ambient(c)
            if is_wall_divisor(delta, L, n, predicate):
                found.append(WallVector.of(delta, L))
    return _verdict(found, bound)


def delta_scan_box(x: CycVector, emb: PrimitiveEmbedding, bound: int, n: int = 2,
                   predicate: Predicate | None = None, norms: Iterable[int] | None = None) -> WallVerdict:
    """Literal box scan over ``S``; an oracle for :func:`delta_scan` on small ranks."""
    S = emb.complement
    if bound <= 0:
        return WallVerdict("CLEAR_UP_TO_BOUND", 0)
    wanted = _scan_norms(n, predicate, norms, S)
    L = emb.ambient
    found = []
    for norm in wanted:
        for c in enumerate_box(S.lattice, norm, bound):
            if linalg.content(c) != 1:
                continue
            delta = S.to_ambient(c)
            if is_wall_divisor(delta, L, n, predicate) and hyperplane_membership(x, delta):
                found.append(WallVector.of(delta, L))
    return _verdict(found, bound)
