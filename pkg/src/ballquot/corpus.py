"""Fixture actions and embeddings used by the tests, the demos and verify-paper."""
from __future__ import annotations

from functools import lru_cache

from . import linalg
from .catalog import U, LatticeName, k3n_lattice, make, parse
from .isometry import IsometryAction, block_diagonal, coxeter_matrix, reflection, verify
from .lattice import Lattice, direct_sum
from .sublattice import PrimitiveEmbedding


def coxeter_extension(p: int) -> IsometryAction:
    """``id_U ⊕ cox(A_{p-1})`` on ``U ⊕ A_{p-1}``."""
    ambient = parse(f"U⊕A{p - 1}")
    return verify(block_diagonal(linalg.identity(2), coxeter_matrix(p - 1)), ambient, p)


def cox_a2_ext() -> IsometryAction:
    return coxeter_extension(3)


def toy_ball() -> IsometryAction:
    """Order 3 on ``U ⊕ A2(-1) ⊕ A2 ⊕ A2``: T = U and S of signature (2, 4), a 2-ball."""
    A2 = make(LatticeName("A", 2))
    ambient = Lattice(direct_sum(U, _a2_positive(), A2, A2).gram, "U⊕A2(-1)⊕A2⊕A2")
    c = coxeter_matrix(2)
    return verify(block_diagonal(linalg.identity(2), c, c, c), ambient, 3)


def _a2_positive() -> Lattice:
    return Lattice.from_rows([[2, -1], [-1, 2]], "A2(-1)")


def sextic_embedding() -> PrimitiveEmbedding:
    """``<6>`` spanned by ``v = 2e + 2f + z`` in ``K3n(2)``; glue index 3."""
    L = k3n_lattice(2)
    v = [0] * 23
    v[0], v[1], v[22] = 2, 2, 1
    return PrimitiveEmbedding(L, (tuple(v),))


def naive_sextic_embedding() -> PrimitiveEmbedding:
    """``<6>`` spanned by ``e + 3f`` in ``U``; glue index 6."""
    return PrimitiveEmbedding(U, ((1, 3),))


def _e8_a2_blocks(offset: int) -> list[tuple[list[int], list[int]]]:
    """Four mutually orthogonal A2 root pairs inside the E8 block at ``offset``."""
    from .walls import enumerate_definite
    E8 = make(LatticeName("E", 8))
    roots = enumerate_definite(E8, -2)

    def search(chosen):
        if len(chosen) == 4:
            return chosen
        used = [r for pair in chosen for r in pair]
        free = [r for r in roots if all(E8.b(r, u) == 0 for u in used)]
        for a in free:
            for b in free:
                if E8.b(a, b) == 1:
                    out = search(chosen + [(a, b)])
                    if out:
                        return out
            return None
        return None

    blocks = search([])
    if blocks is None:
        raise ArithmeticError("no A2^4 found in E8")

    def lift(r):
        v = [0] * 23
        v[offset:offset + 8] = r
        return v

    return [(lift(a), lift(b)) for a, b in blocks]


def _vec(**entries) -> list[int]:
    v = [0] * 23
    for k, x in entries.items():
        v[int(k[1:])] = x
    return v


@lru_cache(maxsize=None)
def sextic_action() -> IsometryAction:
    """An order-3 isometry of ``K3n(2)`` whose invariant lattice is the ``<6>`` above.

    S is split (up to finite index) into one A2(-1) and ten A2 blocks; on each
    block the action is the product of the two reflections in its basis.
    Coordinates: e1,f1,e2,f2,e3,f3, two E8 blocks, z.
    """
    L = k3n_lattice(2)
    blocks = [
        (_vec(c0=1, c22=1), _vec(c1=-1, c22=-1)),             # A2 in U1 ⊕ <-2>
        (_vec(c2=1, c3=1), _vec(c2=-1, c4=1, c5=1)),          # A2(-1) in U2 ⊕ U3
        (_vec(c2=1, c3=-1, c5=-1), _vec(c2=-1, c3=1, c4=1)),  # A2 in U2 ⊕ U3
    ]
    blocks += _e8_a2_blocks(6) + _e8_a2_blocks(14)
    M = linalg.identity(23)
    for a, b in blocks:
        M = linalg.matmul(M, linalg.matmul(reflection(a, L), reflection(b, L)))
    return verify(M, L, 3)


def delta_prime_witness() -> tuple[PrimitiveEmbedding, list[int]]:
    """``T = U`` inside ``U ⊕ U ⊕ <2>`` and a vector ``δ`` passing the Δ′ test."""
    L = Lattice(direct_sum(U, U, Lattice.from_rows([[2]])).gram, "U⊕U⊕<2>")
    emb = PrimitiveEmbedding(L, ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0)))
    return emb, [1, -3, 1, -1, 0]


def corpus_embeddings() -> dict[str, PrimitiveEmbedding]:
    """Embeddings with T of signature (1, *) and S of signature (2, *)."""
    return {
        "toy-ball": toy_ball().invariant,
        "delta-prime-witness": delta_prime_witness()[0],
        "sextic": sextic_embedding(),
    }


def period_point(action: IsometryAction, k: int = 1, seed: int = 0, orthogonal_to=None):
    """A period point ``x`` in the ζ^k-eigenspace with ``q(x + x̄) > 0``.

    A positive direction is found among small combinations of the eigenspace
    basis, then perturbed by a seeded random element scaled down until the
    point is still positive.  With ``orthogonal_to`` (an ambient integer
    vector) the point is taken inside that vector's hyperplane.
    """
    import random
    from fractions import Fraction
    from itertools import combinations
    from .cyclotomic import CycScalar, eigenspace_basis, pairing, positivity_check

    basis = eigenspace_basis(action, k)
    if orthogonal_to is not None:
        pr = [pairing(list(orthogonal_to), b) for b in basis]
        j = next((i for i, c in enumerate(pr) if c), None)
        if j is not None:
            basis = [b + basis[j].scale(-(pr[i] / pr[j])) for i, b in enumerate(basis) if i != j]
    if not basis:
        raise ValueError("eigenspace is zero")
    candidates = list(basis)
    candidates += [a + b for a, b in combinations(basis, 2)]
    candidates += [a + b.scale(-1) for a, b in combinations(basis, 2)]
    base = next((c for c in candidates if c and positivity_check(c, k).positive), None)
    if base is None:
        raise ValueError("no positive direction found in the eigenspace")
    rng = random.Random(seed)
    p = action.order
    noise = None
    for b in basis:
        c = CycScalar(p, tuple(Fraction(rng.randint(-5, 5)) for _ in range(p - 1)))
        noise = b.scale(c) if noise is None else noise + b.scale(c)
    eps = Fraction(1, 4)
    for _ in range(64):
        x = base + noise.scale(eps)
        if x and positivity_check(x, k).positive:
            return x
        eps /= 4
    return base
