"""Exact arithmetic in Q(ζ_p) and the ζ-eigenspaces that carry period points."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from mpmath.ctx_iv import MPIntervalContext

from .lattice import Lattice

DEFAULT_PRECISION = 128
PRECISION_CAP = 4096


@dataclass(frozen=True)
class CycScalar:
    """An element ``sum c_i ζ^i`` (``0 <= i < p-1``) of the p-th cyclotomic field."""

    p: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) != self.p - 1:
            raise ValueError(f"expected {self.p - 1} coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_rational(cls, p: int, x) -> "CycScalar":
        return cls(p, (Fraction(x),) + (Fraction(0),) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycScalar":
        full = [Fraction(0)] * p
        full[k % p] = Fraction(1)
        return cls._reduce(p, full)

    @staticmethod
    def _reduce(p: int, full: Sequence[Fraction]) -> "CycScalar":
        # length-p representative modulo x^p - 1, then subtract c_{p-1} Φ_p
        top = full[p - 1]
        return CycScalar(p, tuple(full[i] - top for i in range(p - 1)))

    def _full(self) -> list[Fraction]:
        return list(self.coeffs) + [Fraction(0)]

    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.p != self.p:
                raise ValueError("cyclotomic fields differ")
            return other
        return CycScalar.from_rational(self.p, other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycScalar(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycScalar):
            f = Fraction(other)
            return CycScalar(self.p, tuple(a * f for a in self.coeffs))
        o = self._coerce(other)
        p = self.p
        full = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CycScalar._reduce(p, full)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois(self, k: int) -> "CycScalar":
        """Image under the automorphism ``ζ -> ζ^k``."""
        if k % self.p == 0:
            raise ValueError("k must be prime to p")
        full = [Fraction(0)] * self.p
        for i, a in enumerate(self.coeffs):
            full[(i * k) % self.p] += a
        return CycScalar._reduce(self.p, full)

    def conjugate(self) -> "CycScalar":
        """Complex conjugation ``ζ -> ζ^{-1}``."""
        return self.galois(self.p - 1)

    def norm(self) -> Fraction:
        out = self
        for k in range(2, self.p):
            out = out * self.galois(k)
        if not out.is_rational():
            raise ArithmeticError("norm is not rational")
        return out.coeffs[0]

    def inverse(self) -> "CycScalar":
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        rest = CycScalar.from_rational(self.p, 1)
        for k in range(2, self.p):
            rest = rest * self.galois(k)
        n = (self * rest).coeffs[0]
        return rest * (1 / n)

    def to_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_strings(cls, p: int, items: Iterable[str]) -> "CycScalar":
        return cls(p, tuple(Fraction(s) for s in items))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}·ζ^{i}")
        return f"CycScalar(p={self.p}: {' + '.join(terms) or '0'})"


@dataclass(frozen=True)
class CycVector:
    """A vector of ``L ⊗ Q(ζ_p)`` in the basis of ``ambient``."""

    ambient: Lattice
    entries: tuple[CycScalar, ...]

    def __post_init__(self):
        if len(self.entries) != self.ambient.rank:
            raise ValueError("entry count must equal the ambient rank")

    @property
    def p(self) -> int:
        return self.entries[0].p

    def __bool__(self):
        return any(bool(e) for e in self.entries)

    def scale(self, c) -> "CycVector":
        return CycVector(self.ambient, tuple(e * c for e in self.entries))

    def __add__(self, other: "CycVector") -> "CycVector":
        return CycVector(self.ambient, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def conjugate(self) -> "CycVector":
        return CycVector(self.ambient, tuple(e.conjugate() for e in self.entries))

    def to_dict(self) -> dict:
        return {"p": self.p, "coords": [e.to_strings() for e in self.entries]}

    @classmethod
    def from_dict(cls, d: dict, ambient: Lattice) -> "CycVector":
        p = d["p"]
        return cls(ambient, tuple(CycScalar.from_strings(p, c) for c in d["coords"]))

    @classmethod
    def from_rational(cls, ambient: Lattice, v: Sequence, p: int) -> "CycVector":
        return cls(ambient, tuple(CycScalar.from_rational(p, x) for x in v))


def pairing(x: CycVector | Sequence, y: CycVector) -> CycScalar:
    """Bilinear extension of the lattice form; ``x`` may be an integer vector."""
    G = y.ambient.gram
    p = y.p
    Gy = []
    for row in G:
        acc = CycScalar.from_rational(p, 0)
        for g, e in zip(row, y.entries):
            if g:
                acc = acc + e * g
        Gy.append(acc)
    xs = x.entries if isinstance(x, CycVector) else x
    out = CycScalar.from_rational(p, 0)
    for a, b in zip(xs, Gy):
        if a:
            out = out + b * a
    return out


def q(x: CycVector) -> CycScalar:
    return pairing(x, x)


def _kernel(rows: list[list[CycScalar]], p: int) -> list[list[CycScalar]]:
    """Basis of the right kernel of a matrix over Q(ζ_p)."""
    A = [r[:] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    zero = CycScalar.from_rational(p, 0)
    one = CycScalar.from_rational(p, 1)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [a * inv if a else zero for a in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [zero] * n
        v[fcol] = one
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fcol]
        basis.append(v)
    return basis


def eigenspace_basis(action, k: int = 1) -> list[CycVector]:
    """Basis of ``ker(M - ζ^k)`` over ``Q(ζ_p)``."""
    p = action.order
    if not 1 <= k <= p - 1:
        raise ValueError("root index must lie in 1..p-1")
    z = CycScalar.zeta(p, k)
    n = action.ambient.rank
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = CycScalar.from_rational(p, action.matrix[i][j])
            if i == j:
                e = e - z
            row.append(e)
        rows.append(row)
    return [CycVector(action.ambient, tuple(v)) for v in _kernel(rows, p)]


def random_eigen_sample(action, k: int = 1, seed: int = 0, spread: int = 5) -> CycVector:
    """Random Q(ζ)-combination of the eigenspace basis (a convenience sampler)."""
    rng = random.Random(seed)
    basis = eigenspace_basis(action, k)
    if not basis:
        raise ValueError("eigenspace is zero")
    p = action.order
    out = None
    for b in basis:
        c = CycScalar(p, tuple(Fraction(rng.randint(-spread, spread)) for _ in range(p - 1)))
        if not c:
            c = CycScalar.from_rational(p, 1)
        term = b.scale(c)
        out = term if out is None else out + term
    return out


def isotropy_check(x: CycVector) -> bool:
    """Exact test of ``q(x) = 0``."""
    return not q(x)


class PositivityCertificate(NamedTuple):
    status: str  # "positive", "negative", "boundary" or "undecided"
    precision: int
    lower: str | None
    upper: str | None
    value: CycScalar

    @property
    def positive(self) -> bool:
        return self.status == "positive"


def real_value(a: CycScalar, k: int, precision: int):
    """Interval enclosure of ``a`` under ``ζ -> exp(2πik/p)`` (real part)."""
    ctx = MPIntervalContext()
    ctx.prec = precision
    p = a.p
    acc = ctx.mpf(0)
    for j, c in enumerate(a.coeffs):
        if c:
            ang = 2 * ctx.pi * ((j * k) % p) / p
            acc += ctx.mpf(c.numerator) / c.denominator * ctx.cos(ang)
    return acc


def positivity_check(x: CycVector, k: int = 1, precision: int = DEFAULT_PRECISION,
                     cap: int = PRECISION_CAP) -> PositivityCertificate:
    """Certified sign of ``q(x + x̄)`` in the complex embedding ``ζ -> e^{2πik/p}``.

    An exact zero is reported as ``"boundary"``; otherwise the interval
    enclosure is refined by doubling the precision until it excludes zero.
    """
    if not x:
        raise ValueError("zero vector")
    y = x + x.conjugate()
    val = q(y)
    if val != val.conjugate():
        raise ArithmeticError("q(x + x̄) is not real")
    if not val:
        return PositivityCertificate("boundary", 0, "0", "0", val)
    if val.is_rational():
        sign = "positive" if val.coeffs[0] > 0 else "negative"
        s = str(val.coeffs[0])
        return PositivityCertificate(sign, 0, s, s, val)
    prec = precision
    while prec <= cap:
        iv = real_value(val, k, prec)
        if iv.a > 0:
            return PositivityCertificate("positive", prec, str(iv.a), str(iv.b), val)
        if iv.b < 0:
            return PositivityCertificate("negative", prec, str(iv.a), str(iv.b), val)
        prec *= 2
    return PositivityCertificate("undecided", cap, str(iv.a), str(iv.b), val)


def is_period_point(x: CycVector, k: int = 1) -> bool:
    return isotropy_check(x) and positivity_check(x, k).positive
