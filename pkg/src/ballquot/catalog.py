"""Named lattices: U, ADE root lattices, E6^∨(3), rank-one lattices, K3 and K3^[n].

Root lattices are negative definite.  Basis order follows the diagram node
order; sums keep the order in which the summands are written.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .lattice import Lattice, direct_sum, twist

TAGS = ("U", "A", "D", "E", "RankOne", "E6dual3", "K3", "K3n")


@dataclass(frozen=True)
class LatticeName:
    tag: str
    param: int | None = None
    twist: int = 1

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown lattice tag {self.tag!r}")
        if self.twist < 1:
            raise ValueError("twist factor must be >= 1")
        p = self.param
        if self.tag == "A" and (p is None or p < 1):
            raise ValueError("A_k requires k >= 1")
        if self.tag == "D" and (p is None or p < 4):
            raise ValueError("D_h requires h >= 4")
        if self.tag == "E" and p not in (6, 7, 8):
            raise ValueError("E_l requires l in {6, 7, 8}")
        if self.tag == "K3n" and (p is None or p < 2):
            raise ValueError("K3^[n] requires n >= 2")
        if self.tag == "RankOne" and (p is None or p == 0 or p % 2):
            raise ValueError("<m> requires a nonzero even m")

    def label(self) -> str:
        base = {
            "U": "U",
            "A": f"A{self.param}",
            "D": f"D{self.param}",
            "E": f"E{self.param}",
            "RankOne": f"<{self.param}>",
            "E6dual3": "E6v3",
            "K3": "K3",
            "K3n": f"K3n({self.param})",
        }[self.tag]
        return base if self.twist == 1 else f"{base}({self.twist})"


def _dynkin(n: int, edges) -> list[list[int]]:
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = -2
    for i, j in edges:
        G[i][j] = G[j][i] = 1
    return G


def a_gram(k: int) -> list[list[int]]:
    return _dynkin(k, [(i, i + 1) for i in range(k - 1)])


def d_gram(h: int) -> list[list[int]]:
    edges = [(i, i + 1) for i in range(h - 2)] + [(h - 3, h - 1)]
    return _dynkin(h, edges)


def e_gram(l: int) -> list[list[int]]:
    # Bourbaki labelling 1..l: chain 1-3-4-5-...-l, node 2 attached to 4
    edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, l - 1)]
    return _dynkin(l, edges)


U = Lattice.from_rows([[0, 1], [1, 0]], "U")


def e6_dual_3() -> Lattice:
    """``E_6^∨(3) = 3 · (Gram E_6)^{-1}``, integral because det E_6 = 3."""
    inv = linalg.rat_inverse(e_gram(6))
    rows = [[3 * x for x in row] for row in inv]
    if any(Fraction(x).denominator != 1 for row in rows for x in row):
        raise ArithmeticError("E6 inverse times 3 is not integral")
    return Lattice.from_rows([[int(x) for x in row] for row in rows], "E6v3")


def make(name: LatticeName) -> Lattice:
    t, p = name.tag, name.param
    if t == "U":
        L = U
    elif t == "A":
        L = Lattice.from_rows(a_gram(p), f"A{p}")
    elif t == "D":
        L = Lattice.from_rows(d_gram(p), f"D{p}")
    elif t == "E":
        L = Lattice.from_rows(e_gram(p), f"E{p}")
    elif t == "RankOne":
        L = Lattice.from_rows([[p]], f"<{p}>")
    elif t == "E6dual3":
        L = e6_dual_3()
    elif t == "K3":
        L = k3_lattice()
    else:
        L = k3n_lattice(p)
    if name.twist != 1:
        L = twist(L, name.twist)
    return L


def k3_lattice() -> Lattice:
    """``U^⊕3 ⊕ E_8^⊕2``."""
    E8 = make(LatticeName("E", 8))
    L = direct_sum(U, U, U, E8, E8)
    return Lattice(L.gram, "K3")


def k3n_lattice(n: int) -> Lattice:
    """``U^⊕3 ⊕ E_8^⊕2 ⊕ <-2(n-1)>``, the lattice of K3^[n]-type manifolds."""
    if n < 2:
        raise ValueError("K3^[n] requires n >= 2")
    L = direct_sum(k3_lattice(), Lattice.from_rows([[-2 * (n - 1)]]))
    return Lattice(L.gram, f"K3n({n})")


# ---------------------------------------------------------------------------
# string names: "U(3)", "A2^5", "E6v3", "<-2>", "K3n(2)", "U⊕A2^5⊕<-2>"

_TERM = re.compile(
    r"""^(?:
        (?P<k3n>K3n)\((?P<n>\d+)\)
      | (?P<k3>K3)
      | (?P<e6v3>E6v3)
      | (?P<one><(?P<m>[+-]?\d+)>)
      | (?P<u>U)
      | (?P<ade>[ADE])(?P<k>\d+)
    )
    (?:\((?P<tw>\d+)\))?
    (?:\^(?P<pow>\d+))?$""",
    re.VERBOSE,
)


def parse_term(term: str) -> tuple[LatticeName, int]:
    m = _TERM.match(term.strip())
    if not m:
        raise ValueError(f"cannot parse lattice name {term!r}")
    tw = int(m["tw"]) if m["tw"] else 1
    power = int(m["pow"]) if m["pow"] else 1
    if m["k3n"]:
        name = LatticeName("K3n", int(m["n"]), tw)
    elif m["k3"]:
        name = LatticeName("K3", None, tw)
    elif m["e6v3"]:
        name = LatticeName("E6dual3", None, tw)
    elif m["one"]:
        name = LatticeName("RankOne", int(m["m"]), tw)
    elif m["u"]:
        name = LatticeName("U", None, tw)
    else:
        name = LatticeName(m["ade"], int(m["k"]), tw)
    if power < 1:
        raise ValueError("power must be >= 1")
    return name, power


def parse(spec: str) -> Lattice:
    """Build a lattice from a ``⊕``- or ``+``-separated name string."""
    terms = [t for t in re.split(r"⊕|\+(?![^<]*>)", spec) if t.strip()]
    if not terms:
        raise ValueError("empty lattice name")
    blocks = []
    for term in terms:
        name, power = parse_term(term)
        blocks.extend([make(name)] * power)
    L = blocks[0] if len(blocks) == 1 else direct_sum(*blocks)
    return Lattice(L.gram, spec.replace("+", "⊕") if len(blocks) > 1 else L.name)
