"""Even integral lattices, their duals and discriminant forms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg


def _mod(x: Fraction, m: int) -> Fraction:
    return x - m * (x // m)


@dataclass(frozen=True)
class Lattice:
    """A free Z-module with a non-degenerate symmetric integral Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix must be symmetric")
        if n and linalg.determinant(g) == 0:
            raise ValueError("degenerate form")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], name: str | None = None) -> "Lattice":
        return cls(tuple(tuple(r) for r in rows), name)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return int(linalg.determinant(self.gram))

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def signature(self) -> tuple[int, int]:
        return linalg.signature(self.gram)

    def is_negative_definite(self) -> bool:
        return self.signature == (0, self.rank)

    def q(self, v: Sequence) -> int | Fraction:
        """Quadratic value ``(v, v)``."""
        return linalg.bilinear(self.gram, v, v)

    def b(self, v: Sequence, w: Sequence) -> int | Fraction:
        return linalg.bilinear(self.gram, v, w)

    def pairings(self, v: Sequence) -> list:
        """Pairings of ``v`` with the basis vectors."""
        return linalg.matvec(self.gram, v)

    def to_dict(self) -> dict:
        d = {"rank": self.rank, "gram": [list(r) for r in self.gram]}
        if self.name is not None:
            d = {"name": self.name, **d}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Lattice":
        gram = d["gram"]
        if "rank" in d and d["rank"] != len(gram):
            raise ValueError("rank does not match Gram matrix")
        return cls.from_rows(gram, d.get("name"))

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"Lattice({label}, det={self.det})"


EMPTY = Lattice(())


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(L.rank for L in lattices)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                rows[off + i][off + j] = L.gram[i][j]
        off += L.rank
    names = [L.name for L in lattices if L.rank]
    name = "⊕".join(names) if names and all(names) else None
    return Lattice.from_rows(rows, name)


def twist(L: Lattice, t: int) -> Lattice:
    """``L(t)``: the bilinear form multiplied by ``t``."""
    if t == 0:
        raise ValueError("degenerate twist")
    if t < 0:
        raise ValueError("twist factor must be a positive integer")
    name = f"{L.name}({t})" if L.name and t != 1 else L.name
    return Lattice.from_rows([[t * x for x in row] for row in L.gram], name)


def dual_gram(L: Lattice) -> list[list[Fraction]]:
    """Gram matrix of ``L^∨`` in the dual basis, i.e. the inverse Gram."""
    return linalg.rat_inverse(L.gram)


# ---------------------------------------------------------------------------
# discriminant groups and forms

@dataclass(frozen=True)
class DiscriminantGroup:
    """``L^∨/L`` as a product of cyclic groups with explicit generators.

    Generators are rational coordinate vectors in the basis of ``L``,
    reduced into ``[0, 1)``.
    """

    cyclic_orders: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.cyclic_orders:
            out *= d
        return out

    @property
    def length(self) -> int:
        return len(self.cyclic_orders)

    def elements(self):
        """Iterate over coefficient tuples of all group elements."""
        return itertools.product(*(range(d) for d in self.cyclic_orders))


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Discriminant quadratic form: q in Q/2Z, bilinear pairing in Q/Z."""

    group: DiscriminantGroup
    q_values: tuple[Fraction, ...]
    pairings: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = self.group.length
        if len(self.q_values) != k or len(self.pairings) != k:
            raise ValueError("form data does not match the group length")
        if any(not 0 <= x < 2 for x in self.q_values):
            raise ValueError("q-values must lie in [0, 2)")
        if any(not 0 <= x < 1 for row in self.pairings for x in row):
            raise ValueError("pairings must lie in [0, 1)")

    @property
    def is_trivial(self) -> bool:
        return self.group.length == 0

    def value(self, coeffs: Sequence[int]) -> Fraction:
        """``q(sum c_i g_i)`` reduced into ``[0, 2)``."""
        k = len(coeffs)
        tot = Fraction(0)
        for i in range(k):
            if coeffs[i]:
                tot += coeffs[i] * coeffs[i] * self.q_values[i]
                for j in range(i + 1, k):
                    if coeffs[j]:
                        tot += 2 * coeffs[i] * coeffs[j] * self.pairings[i][j]
        return _mod(tot, 2)

    def pairing(self, c1: Sequence[int], c2: Sequence[int]) -> Fraction:
        tot = Fraction(0)
        for i, a in enumerate(c1):
            if a:
                for j, b in enumerate(c2):
                    if b:
                        tot += a * b * self.pairings[i][j]
        return _mod(tot, 1)

    def negated(self) -> "FiniteQuadraticForm":
        k = self.group.length
        return FiniteQuadraticForm(
            self.group,
            tuple(_mod(-x, 2) for x in self.q_values),
            tuple(tuple(_mod(-self.pairings[i][j], 1) for j in range(k)) for i in range(k)),
        )


@dataclass(frozen=True)
class GenusSymbol:
    s_plus: int
    s_minus: int
    form: FiniteQuadraticForm


def _reduce_mod_lattice(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(_mod(Fraction(x), 1) for x in v)


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    """Cyclic decomposition of ``A_L`` read off the Smith form of the Gram.

    With ``U G V = D``, the class of ``V e_i / d_i`` generates the cyclic
    factor of order ``d_i``.  When ``A_L`` is ``(Z/p)^a`` for an odd prime
    ``p`` the generators are further changed to an orthogonal basis in which
    ``q`` takes the values ``2/p`` except possibly the last one.
    """
    if L.rank == 0:
        return DiscriminantGroup((), ())
    snf = linalg.smith_normal_form(L.gram)
    orders, gens = [], []
    n = L.rank
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            orders.append(d)
            gens.append(_reduce_mod_lattice([Fraction(snf.V[r][i], d) for r in range(n)]))
    group = DiscriminantGroup(tuple(orders), tuple(gens))
    p = orders[0] if orders else 0
    if orders and all(d == p for d in orders) and p % 2 and _is_prime(p) and L.is_even:
        group = _normalize_odd_elementary(L, group, p)
    return group


def _raw_form(L: Lattice, group: DiscriminantGroup) -> FiniteQuadraticForm:
    gens = group.generators
    k = len(gens)
    qv = tuple(_mod(Fraction(L.q(g)), 2) for g in gens)
    pair = tuple(tuple(_mod(Fraction(L.b(gens[i], gens[j])), 1) for j in range(k))
                 for i in range(k))
    return FiniteQuadraticForm(group, qv, pair)


def discriminant_form(L: Lattice) -> FiniteQuadraticForm:
    """The finite quadratic form ``q_L: A_L -> Q/2Z`` on stored generators."""
    if not L.is_even:
        raise ValueError("form undefined mod 2")
    return _raw_form(L, discriminant_group(L))


def is_p_elementary(L: Lattice, p: int) -> tuple[bool, int | None]:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    orders = discriminant_group(L).cyclic_orders
    if all(d == p for d in orders):
        return True, len(orders)
    return False, None


def genus_triple(L: Lattice) -> GenusSymbol:
    sp, sm = L.signature
    return GenusSymbol(sp, sm, discriminant_form(L))


# ---------------------------------------------------------------------------
# odd p-elementary normal form

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smallest_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


def _sqrt_mod(a: int, p: int) -> int:
    a %= p
    return next(x for x in range(p) if x * x % p == a)


def _value_matrix(L: Lattice, gens, p: int) -> list[list[int]]:
    """Symmetric F_p matrix A with ``q(sum c g) = (2/p) c^T A c  mod 2``."""
    inv2 = pow(2, -1, p)
    k = len(gens)
    A = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            b = Fraction(L.b(gens[i], gens[j])) * p
            if i == j:
                # q(g) = 2a/p  mod 2
                qv = _mod(Fraction(L.q(gens[i])), 2) * p / 2
                A[i][i] = int(qv) % p
            else:
                A[i][j] = int(b) * inv2 % p
    return A


def _normalize_odd_elementary(L: Lattice, group: DiscriminantGroup, p: int) -> DiscriminantGroup:
    gens = [list(g) for g in group.generators]
    k = len(gens)
    A = _value_matrix(L, gens, p)
    # basis change C (rows = new generators as F_p combinations of old ones)
    C = [[int(i == j) for j in range(k)] for i in range(k)]

    def form(u, v):
        return sum(u[i] * A[i][j] * v[j] for i in range(k) for j in range(k)) % p

    basis = [row[:] for row in C]
    diag: list[int] = []
    out: list[list[int]] = []
    while basis:
        pick = next((v for v in basis if form(v, v)), None)
        if pick is None:
            # all self-values vanish: u + w has value 2 B(u, w) != 0
            u = basis[0]
            w = next(v for v in basis[1:] if form(u, v))
            pick = [(a + b) % p for a, b in zip(u, w)]
            basis = [pick] + [v for v in basis if v is not u]
        else:
            basis = [pick] + [v for v in basis if v is not pick]
        a = form(pick, pick)
        inv_a = pow(a, -1, p)
        rest = []
        for v in basis[1:]:
            c = form(pick, v) * inv_a % p
            rest.append([(x - c * y) % p for x, y in zip(v, pick)])
        # drop the dependent vector created by the u + w swap, if any
        rest = _independent(rest, p)
        out.append(pick)
        diag.append(a)
        basis = rest
    # scale to 1 or the canonical non-residue; fold non-residues pairwise
    nr = smallest_nonresidue(p)
    squares = [i for i, a in enumerate(diag) if legendre(a, p) == 1]
    nonsq = [i for i, a in enumerate(diag) if legendre(a, p) == -1]
    new_rows: list[list[int]] = []
    for i in squares:
        s = pow(_sqrt_mod(diag[i], p), -1, p)
        new_rows.append([s * x % p for x in out[i]])
    while len(nonsq) >= 2:
        i, j = nonsq.pop(), nonsq.pop()
        # scale both to value nr, then rotate nr(x^2 + y^2) into 1 + 1
        si = pow(_sqrt_mod(diag[i] * pow(nr, -1, p), p), -1, p)
        sj = pow(_sqrt_mod(diag[j] * pow(nr, -1, p), p), -1, p)
        u = [si * x % p for x in out[i]]
        w = [sj * x % p for x in out[j]]
        target = pow(nr, -1, p)
        a, b = next((a, b) for a in range(p) for b in range(p) if (a * a + b * b) % p == target)
        new_rows.append([(a * x + b * y) % p for x, y in zip(u, w)])
        new_rows.append([(-b * x + a * y) % p for x, y in zip(u, w)])
    if nonsq:
        i = nonsq[0]
        s = pow(_sqrt_mod(diag[i] * pow(nr, -1, p), p), -1, p)
        new_rows.append([s * x % p for x in out[i]])
    new_gens = []
    for row in new_rows:
        v = [sum(c * gens[j][r] for j, c in enumerate(row)) for r in range(L.rank)]
        new_gens.append(_reduce_mod_lattice(v))
    return DiscriminantGroup(group.cyclic_orders, tuple(new_gens))


def _independent(vectors, p):
    out = []
    rows = []
    for v in vectors:
        cand = rows + [v]
        if _rank_mod_p(cand, p) == len(cand):
            rows = cand
            out.append(v)
    return out


def _rank_mod_p(rows, p):
    M = [r[:] for r in rows]
    rk = 0
    ncol = len(M[0]) if M else 0
    for c in range(ncol):
        piv = next((i for i in range(rk, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        inv = pow(M[rk][c], -1, p)
        for i in range(len(M)):
            if i != rk and M[i][c] % p:
                f = M[i][c] * inv % p
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rk])]
        rk += 1
    return rk


def _det_mod_p(A: list[list[int]], p: int) -> int:
    M = [[x % p for x in row] for row in A]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for i in range(c + 1, n):
            f = M[i][c] * inv % p
            if f:
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[c])]
    return det % p


def _form_value_matrix(F: FiniteQuadraticForm, p: int) -> list[list[int]]:
    k = F.group.length
    inv2 = pow(2, -1, p)
    A = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i == j:
                A[i][i] = int(F.q_values[i] * p / 2) % p
            else:
                A[i][j] = int(F.pairings[i][j] * p) * inv2 % p
    return A


# ---------------------------------------------------------------------------
# opposite forms

_BRUTE_FORCE_LIMIT = 3 ** 4


def forms_opposite(F1: FiniteQuadraticForm, F2: FiniteQuadraticForm) -> bool:
    """Decide whether ``F1`` is isometric to ``-F2``.

    Odd p-elementary forms are compared by rank and determinant square class;
    other groups of order at most 81 by exhaustive search.  Anything else
    raises ``ValueError("undecided")``.
    """
    if sorted(F1.group.cyclic_orders) != sorted(F2.group.cyclic_orders):
        return False
    if F1.is_trivial:
        return True
    orders = F1.group.cyclic_orders
    p = orders[0]
    if all(d == p for d in orders) and p % 2 and _is_prime(p):
        a = len(orders)
        d1 = _det_mod_p(_form_value_matrix(F1, p), p)
        d2 = _det_mod_p(_form_value_matrix(F2, p), p)
        if d1 == 0 or d2 == 0:
            raise ValueError("degenerate discriminant form")
        return legendre(d1, p) == legendre((-1) ** a * d2, p)
    if F1.group.order <= _BRUTE_FORCE_LIMIT:
        return isometric(F1, F2.negated())
    raise ValueError("undecided")


def isometric(F1: FiniteQuadraticForm, F2: FiniteQuadraticForm) -> bool:
    """Exhaustive isometry search between two small finite quadratic forms."""
    if sorted(F1.group.cyclic_orders) != sorted(F2.group.cyclic_orders):
        return False
    k = F1.group.length
    if k == 0:
        return True
    elems2 = list(F2.group.elements())
    orders2 = F2.group.cyclic_orders

    def elem_order(c):
        o = 1
        for ci, d in zip(c, orders2):
            if ci:
                oi = d // _gcd(ci, d)
                o = o * oi // _gcd(o, oi)
        return o

    by_order: dict[int, list] = {}
    for c in elems2:
        by_order.setdefault(elem_order(c), []).append(c)

    images: list = []

    def extend(i):
        if i == k:
            return _injective(images, F1.group.cyclic_orders, orders2)
        for c in by_order.get(F1.group.cyclic_orders[i], []):
            if F2.value(c) != F1.q_values[i]:
                continue
            if any(F2.pairing(images[j], c) != F1.pairings[j][i] for j in range(i)):
                continue
            images.append(c)
            if extend(i + 1):
                return True
            images.pop()
        return False

    return extend(0)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _injective(images, orders1, orders2) -> bool:
    seen = set()
    for coeffs in itertools.product(*(range(d) for d in orders1)):
        img = tuple(
            sum(c * im[t] for c, im in zip(coeffs, images)) % orders2[t]
            for t in range(len(orders2))
        )
        if img in seen:
            return False
        seen.add(img)
    return True
