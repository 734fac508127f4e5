"""Chambers of the positive cone of a hyperbolic lattice T, named by sign vectors."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .lattice import Lattice
from .sublattice import PrimitiveEmbedding
from .walls import (WALL_NORMS_K3N2, Predicate, WallVector, delta_prime_test,
                    enumerate_box, is_wall_divisor)


def cone_membership(x: Sequence, T: Lattice, reference: Sequence) -> bool:
    """Whether ``x`` lies in the component of ``{q > 0}`` containing ``reference``."""
    if T.q(reference) <= 0:
        raise ValueError("reference vector must have positive square")
    return T.q(x) > 0 and T.b(x, reference) > 0


def _sign_normalize(v: list[int]) -> list[int]:
    first = next(a for a in v if a)
    return v if first > 0 else [-a for a in v]


def local_walls(emb: PrimitiveEmbedding, bound: int, n: int = 2,
                predicate: Predicate | None = None,
                norms: Iterable[int] = WALL_NORMS_K3N2) -> list[WallVector]:
    """Wall vectors of ``T`` with coordinates bounded by ``B``, one per ± pair.

    Coordinates are in the basis of ``T``; norm and divisibility are computed
    in the ambient lattice.
    """
    T = emb.lattice
    if T.signature != (1, T.rank - 1):
        raise ValueError(f"T must have signature (1, {T.rank - 1}), got {T.signature}")
    L = emb.ambient
    seen = set()
    out = []
    for norm in norms:
        for c in enumerate_box(T, norm, bound):
            if linalg.content(c) != 1:
                continue
            c = _sign_normalize(c)
            if tuple(c) in seen:
                continue
            delta = emb.to_ambient(c)
            if is_wall_divisor(delta, L, n, predicate):
                seen.add(tuple(c))
                out.append(WallVector.of(delta, L, coords=c))
    return sorted(out, key=lambda w: w.coords)


@dataclass(frozen=True)
class Chamber:
    """A chamber of the cone, identified by its signs against an ordered wall list."""

    lattice: Lattice
    walls: tuple[WallVector, ...]
    signs: tuple[int, ...]
    witness: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.walls) != len(self.signs):
            raise ValueError("one sign per wall")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def contains(self, x: Sequence) -> bool:
        if self.lattice.b(x, self.witness) <= 0 or self.lattice.q(x) <= 0:
            return False
        try:
            return sign_vector(x, self.walls, self.lattice) == self.signs
        except ValueError:
            return False


def sign_vector(x: Sequence, walls: Sequence[WallVector], T: Lattice) -> tuple[int, ...]:
    signs = []
    for w in walls:
        v = T.b(x, w.coords)
        if v == 0:
            raise ValueError(f"on wall {list(w.coords)}")
        signs.append(1 if v > 0 else -1)
    return tuple(signs)


def chamber_of(x: Sequence, walls: Sequence[WallVector], T: Lattice,
               reference: Sequence | None = None) -> Chamber:
    """Chamber containing ``x``; errors if ``x`` lies on a wall."""
    if reference is not None and not cone_membership(x, T, reference):
        raise ValueError("point is outside the positive cone component")
    xs = tuple(Fraction(a) for a in x)
    return Chamber(T, tuple(walls), sign_vector(xs, walls, T), xs)


def crossing_count(x: Sequence, y: Sequence, walls: Sequence[WallVector], T: Lattice) -> int:
    """Number of walls separating ``x`` and ``y``."""
    sx = sign_vector(x, walls, T)
    sy = sign_vector(y, walls, T)
    return sum(a != b for a, b in zip(sx, sy))


def integer_grid(rank: int, radius: int) -> list[tuple[int, ...]]:
    """All integer points of ``[-R, R]^rank``."""
    return list(itertools.product(range(-radius, radius + 1), repeat=rank))


def refine_by_delta_prime(K: Chamber, delta_prime_walls: Sequence[Sequence[int]],
                          grid: Iterable[Sequence], emb: PrimitiveEmbedding | None = None) -> int:
    """Lower bound for the number of pieces of ``K`` cut out by Δ′ hyperplanes.

    With ``emb`` the walls are ambient vectors (checked by the Δ′ test) and the
    hyperplane in ``T`` is ``{t : (t, δ) = 0}``; without it they are given in
    the coordinates of ``T``.  Counts distinct sign vectors of grid points
    inside ``K``.
    """
    T = K.lattice
    if emb is not None:
        functionals = []
        for d in delta_prime_walls:
            if not delta_prime_test(d, emb):
                raise ValueError(f"{list(d)} fails the Δ′ test")
            functionals.append(emb.pairing_rows(d))
    else:
        functionals = [T.pairings(d) for d in delta_prime_walls]
    grid = list(grid)
    if not grid:
        raise ValueError("empty grid")
    inside = [g for g in grid if K.contains(g)]
    if not inside:
        raise ValueError("empty grid: no sample point inside the chamber")
    if not functionals:
        return 1
    patterns = set()
    for g in inside:
        vals = [sum(a * b for a, b in zip(f, g)) for f in functionals]
        if any(v == 0 for v in vals):
            continue
        patterns.add(tuple(v > 0 for v in vals))
    return max(1, len(patterns))
