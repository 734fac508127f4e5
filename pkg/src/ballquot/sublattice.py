"""Primitive sublattices T ⊂ L, their complements S = T^⊥ and the glue T ⊕ S ⊂ L."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .lattice import Lattice


@dataclass(frozen=True)
class PrimitiveEmbedding:
    """A saturated sublattice given by basis columns in ambient coordinates."""

    ambient: Lattice
    basis: tuple[tuple[int, ...], ...]  # one tuple per basis vector

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        n = self.ambient.rank
        if any(len(v) != n for v in basis):
            raise ValueError("basis vectors must have ambient rank length")
        if basis and linalg.rank([list(v) for v in basis]) != len(basis):
            raise ValueError("basis vectors are linearly dependent")
        if not linalg.is_saturated(basis):
            raise ValueError("sublattice is not primitive; use saturate()")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def basis_matrix(self) -> list[list[int]]:
        """Ambient-rank x rank matrix whose columns are the basis vectors."""
        return linalg.columns_to_matrix(self.basis, self.ambient.rank)

    @cached_property
    def gram(self) -> list[list[int]]:
        return linalg.congruence(self.ambient.gram, self.basis_matrix) if self.basis else []

    @cached_property
    def lattice(self) -> Lattice:
        return Lattice.from_rows(self.gram)

    @cached_property
    def complement(self) -> "PrimitiveEmbedding":
        return orthogonal_complement(self)

    @cached_property
    def glue_index(self) -> int:
        return glue_index(self)

    def to_ambient(self, coords: Sequence) -> list:
        """Ambient coordinates of a vector given in this sublattice's basis."""
        return linalg.matvec(self.basis_matrix, coords) if self.basis else [0] * self.ambient.rank

    def pairing_rows(self, v: Sequence) -> list:
        """Pairings ``(b_i, v)`` of the basis with an ambient vector."""
        Gv = self.ambient.pairings(v)
        return [sum(a * b for a, b in zip(bi, Gv)) for bi in self.basis]

    def contains(self, v: Sequence) -> bool:
        """Whether the ambient vector lies in ``T ⊗ Q``."""
        if not any(v):
            return True
        if not self.basis:
            return False
        return linalg.rank([list(b) for b in self.basis] + [list(v)]) == self.rank

    def to_dict(self) -> dict:
        return {"ambient": self.ambient.to_dict(), "basis": [list(v) for v in self.basis]}

    @classmethod
    def from_dict(cls, d: dict, ambient: Lattice | None = None) -> "PrimitiveEmbedding":
        amb = ambient if ambient is not None else _ambient_from(d["ambient"])
        return cls(amb, tuple(tuple(v) for v in d["basis"]))


def _ambient_from(obj) -> Lattice:
    if isinstance(obj, str):
        from . import catalog
        return catalog.parse(obj)
    return Lattice.from_dict(obj)


def saturate(vectors: Sequence[Sequence[int]], ambient: Lattice) -> PrimitiveEmbedding:
    """Primitive closure of the span of independent ``vectors``.

    An input basis that is already primitive is kept as given.
    """
    vecs = [list(v) for v in vectors]
    if vecs and linalg.rank(vecs) != len(vecs):
        raise ValueError("vectors are linearly dependent")
    if linalg.is_saturated(vecs):
        return PrimitiveEmbedding(ambient, tuple(tuple(v) for v in vecs))
    return PrimitiveEmbedding(ambient, tuple(tuple(v) for v in linalg.saturate(vecs)))


def orthogonal_complement(emb: PrimitiveEmbedding) -> PrimitiveEmbedding:
    """``S = T^⊥ ∩ L`` as a saturated kernel, basis in Hermite normal form."""
    n = emb.ambient.rank
    if not emb.basis:
        return PrimitiveEmbedding(emb.ambient, tuple(tuple(v) for v in linalg.identity(n)))
    rows = [emb.ambient.pairings(v) for v in emb.basis]
    return PrimitiveEmbedding(emb.ambient, tuple(tuple(v) for v in linalg.saturated_kernel(rows)))


def glue_index(emb: PrimitiveEmbedding) -> int:
    """``|L / (T ⊕ S)|``, cross-checked against ``d² |det L| = |det T| |det S|``."""
    S = emb.complement
    cols = list(emb.basis) + list(S.basis)
    d = abs(int(linalg.determinant(linalg.columns_to_matrix(cols, emb.ambient.rank))))
    detT = abs(int(linalg.determinant(emb.gram))) if emb.basis else 1
    detS = abs(int(linalg.determinant(S.gram))) if S.basis else 1
    if d * d * abs(emb.ambient.det) != detT * detS:
        raise ArithmeticError("glue index inconsistent with determinants")
    return d


def decompose_vector(delta: Sequence, emb: PrimitiveEmbedding) -> tuple[list[Fraction], list[Fraction]]:
    """Orthogonal split ``δ = δ_T + δ_S`` over Q, both in ambient coordinates."""
    delta = [Fraction(x) for x in delta]
    if not emb.basis:
        return [Fraction(0)] * len(delta), delta
    rhs = emb.pairing_rows(delta)
    coeffs = linalg.solve(emb.gram, rhs)
    dT = [Fraction(x) for x in emb.to_ambient(coeffs)]
    dS = [a - b for a, b in zip(delta, dT)]
    return dT, dS


def coordinates_in(v: Sequence, emb: PrimitiveEmbedding) -> list[Fraction]:
    """Coordinates of an ambient vector of ``T ⊗ Q`` in the basis of ``T``."""
    return linalg.solve(emb.basis_matrix, list(v))


def divisibility(delta: Sequence[int], ambient: Lattice) -> int:
    """Positive generator of the ideal ``(δ, L)`` in Z."""
    if not any(delta):
        raise ValueError("divisibility of the zero vector is undefined")
    return linalg.content(ambient.pairings(delta))
