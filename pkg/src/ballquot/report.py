"""Structured reports and the suite of checks against the concrete numbers of the theory."""
from __future__ import annotations

import hashlib
import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import linalg
from .catalog import LatticeName, k3n_lattice, make, parse
from .chambers import chamber_of, crossing_count, integer_grid, local_walls, refine_by_delta_prime
from .corpus import (corpus_embeddings, coxeter_extension, naive_sextic_embedding,
                     sextic_action, sextic_embedding)
from .cyclotomic import CycScalar, eigenspace_basis, isotropy_check
from .io import jsonable
from .isometry import (ball_dimension, glue_power_check, in_O_plus, is_isometry,
                       max_picard_number, reflection, totient_bound)
from .lattice import Lattice, discriminant_form, forms_opposite
from .sublattice import PrimitiveEmbedding, divisibility
from .walls import (delta_prime_equiv_check, delta_prime_test, divisible_norm_sieve,
                    enumerate_box, enumerate_definite, two_torsion_obstruction)

SCHEMA_VERSION = "1"
DEFAULT_SEED = 20240229


@dataclass
class Report:
    command: list[str]
    results: dict = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)
    inputs_digest: str = ""
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        if not self.inputs_digest:
            blob = json.dumps(list(self.command), sort_keys=True).encode()
            self.inputs_digest = hashlib.sha256(blob).hexdigest()

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def add_check(self, name: str, ok: bool, detail=None) -> None:
        self.checks.append({"name": name, "status": "pass" if ok else "fail",
                            "detail": jsonable(detail if detail is not None else {})})

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": list(self.command),
            "inputs_digest": self.inputs_digest,
            "results": jsonable(self.results),
            "checks": jsonable(self.checks),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
        return cls(d["command"], d["results"], d["checks"], d["inputs_digest"], d["schema_version"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"# {' '.join(self.command)}"]
        for k, v in jsonable(self.results).items():
            lines.append(f"{k}: {json.dumps(v, ensure_ascii=False)}")
        for c in self.checks:
            lines.append(f"[{c['status'].upper()}] {c['name']}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# checks; each returns (ok, detail)

class _Context:
    def __init__(self, seed: int, overrides: dict | None):
        self.seed = seed
        self.overrides = overrides or {}

    def lattice(self, name: str) -> Lattice:
        return self.overrides.get(name) or parse(name)


def check_e6v3_form(ctx):
    t0 = time.perf_counter()
    F = discriminant_form(ctx.lattice("E6v3"))
    elapsed = time.perf_counter() - t0
    orders = list(F.group.cyclic_orders)
    ok = orders == [3] * 5 and all(v == Fraction(2, 3) for v in F.q_values) and elapsed < 1.0
    return ok, {"orders": orders, "q_values": list(F.q_values), "seconds_lt_1": elapsed < 1.0}


def check_opposite_forms(ctx):
    FE = discriminant_form(ctx.lattice("E6v3"))
    FA = discriminant_form(ctx.lattice("A2^5"))
    a2 = discriminant_form(ctx.lattice("A2"))
    ok = forms_opposite(FE, FA) and list(a2.q_values) == [Fraction(4, 3)]
    return ok, {"opposite": forms_opposite(FE, FA), "A2_value": list(a2.q_values)}


def check_ball_dims(ctx):
    got = {"22,3": ball_dimension(22, 3), "10,3": ball_dimension(10, 3), "22,23": ball_dimension(22, 23)}
    return got == {"22,3": 10, "10,3": 4, "22,23": 0}, got


def check_sextic_embedding(ctx):
    emb = sextic_embedding()
    S = emb.complement
    ref = parse("A2⊕U^2⊕E8^2")
    # the saturated-kernel basis starts with e+z, f+z; the rest are unit vectors
    block = [row[:2] for row in S.gram[:2]]
    rest_ok = [row[2:] for row in S.gram[2:]] == [list(r[2:]) for r in parse("A2⊕U^2⊕E8^2").gram[2:]]
    cross_ok = all(S.gram[i][j] == 0 for i in range(2) for j in range(2, 22))
    naive = naive_sextic_embedding()
    detail = {
        "det_S": S.lattice.det, "glue": emb.glue_index, "A2_block": block,
        "naive_glue": naive.glue_index, "naive_power_of_3": glue_power_check(naive, 3),
        "divisibility_v": divisibility(emb.basis[0], emb.ambient),
    }
    ok = (abs(S.lattice.det) == 3 and abs(ref.det) == 3 and block == [[-2, -1], [-1, -2]]
          and rest_ok and cross_ok and emb.glue_index == 3 and glue_power_check(emb, 3)
          and naive.glue_index == 6 and not glue_power_check(naive, 3)
          and S.lattice.signature == ref.signature)
    return ok, detail


def _reduced_sextic(extra_u: int) -> PrimitiveEmbedding:
    """``<6>`` via ``2e+2f+z`` in ``U^(1+extra) ⊕ <-2>``."""
    L = parse("⊕".join(["U"] * (1 + extra_u) + ["<-2>"]))
    v = [0] * L.rank
    v[0], v[1], v[-1] = 2, 2, 1
    return PrimitiveEmbedding(L, (tuple(v),))


def check_det3_obstruction(ctx):
    S = sextic_embedding().complement
    sieve = divisible_norm_sieve(S, -10, 2)
    # Λ_2 = 2S: every δ with (δ, L) ⊆ 2Z is twice a vector of S
    two_s = [list(v) for v in sieve.basis] == [[2 * x for x in r] for r in linalg.identity(S.rank)]
    literal = {}
    for extra in (0, 1, 2):
        emb = _reduced_sextic(extra)
        Sx = emb.complement
        hits = [c for c in enumerate_box(Sx.lattice, -10, 4)
                if divisibility(Sx.to_ambient(c), emb.ambient) == 2]
        literal[f"rank_S={Sx.rank}"] = {"obstruction": two_torsion_obstruction(Sx.lattice), "hits": len(hits)}
    ok = (two_torsion_obstruction(S.lattice) and sieve.excluded and two_s
          and all(v["obstruction"] and v["hits"] == 0 for v in literal.values()))
    return ok, {"obstruction": two_torsion_obstruction(S.lattice), "sieve_ideal": sieve.ideal,
                "sieve_excludes": sieve.excluded, "lambda2_is_2S": two_s, "box4_reduced": literal}


def check_delta_prime_rank_one(ctx, samples: int = 2000):
    scanned = 0
    positives = 0
    for extra in (0, 1, 2):
        emb = _reduced_sextic(extra)
        for c in integer_grid(emb.ambient.rank, 2):
            if any(c):
                scanned += 1
                positives += delta_prime_test(c, emb)
    emb = sextic_embedding()
    rng = random.Random(ctx.seed)
    for _ in range(samples):
        c = [rng.randint(-2, 2) for _ in range(emb.ambient.rank)]
        if any(c):
            scanned += 1
            positives += delta_prime_test(c, emb)
    K = chamber_of([1], local_walls(emb, 2), emb.lattice)
    refined = refine_by_delta_prime(K, [], [(1,), (2,), (3,)], emb=emb)
    return positives == 0 and refined == 1, {"vectors_tested": scanned, "passing": positives,
                                             "refinement": refined, "local_walls": len(K.walls)}


def negative_definite_catalog() -> list[Lattice]:
    names = [f"A{k}" for k in range(1, 9)] + [f"D{h}" for h in range(4, 9)] + ["E6", "E7", "E8", "E6v3"]
    return [parse(n) for n in names]


def radius_box(L: Lattice, norm: int) -> int:
    """Coordinate bound ``max_i sqrt(|norm| (Q^{-1})_ii)`` for ``Q = -G``."""
    inv = linalg.rat_inverse([[-x for x in row] for row in L.gram])
    return max(math.isqrt(math.floor(-norm * inv[i][i])) for i in range(L.rank))


def check_enumeration_oracle(ctx):
    t0 = time.perf_counter()
    counts = {}
    ok = True
    for L in negative_definite_catalog():
        for norm in (-2, -4, -10):
            a = enumerate_definite(L, norm)
            b = enumerate_box(L, norm, max(1, radius_box(L, norm)))
            ok &= a == b
            counts[f"{L.name}/{norm}"] = len(a)
    elapsed = time.perf_counter() - t0
    ok &= counts["A2/-2"] == 6 and counts["E8/-2"] == 240 and counts["A2/-10"] == 0 and elapsed < 30
    return ok, {"counts": counts, "seconds_lt_30": elapsed < 30}


def check_cyclotomic_dims(ctx):
    rng = random.Random(ctx.seed)
    detail = {}
    ok = True
    for p in (3, 5, 7):
        act = coxeter_extension(p)
        want = act.coinvariant.rank // (p - 1)
        dims = []
        for k in range(1, p):
            basis = eigenspace_basis(act, k)
            dims.append(len(basis))
            ok &= all(isotropy_check(b) for b in basis)
            for _ in range(3):
                c = CycScalar(p, tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(p - 1)))
                if c:
                    ok &= isotropy_check(basis[0].scale(c))
        ok &= all(d == want for d in dims)
        detail[f"p={p}"] = {"dims": dims, "expected": want}
    act = sextic_action()
    basis = eigenspace_basis(act, 1)
    ok &= len(basis) == 11 and all(isotropy_check(b) for b in basis)
    detail["sextic"] = {"dim": len(basis), "ball_dimension": ball_dimension(act.coinvariant.rank, 3)}
    return ok, detail


def check_totient_table(ctx):
    table = {}
    ok = True
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        rho = max_picard_number(p, 23)
        ok &= rho == 23 - (p - 1) and totient_bound(p, 23, rho) and not totient_bound(p, 23, rho + 1)
        table[p] = rho
    ok &= table[23] == 1
    return ok, {"max_rho": table}


def _random_isometry_factors(L: Lattice, rng: random.Random, count: int):
    pool = []
    # roots of norm -2 and vectors of norm +2 in the hyperbolic and E8 blocks
    for v in enumerate_definite(make(LatticeName("E", 8)), -2)[:40]:
        w = [0] * L.rank
        w[6:14] = v
        pool.append(w)
    for a, b in ((1, -1), (1, 1)):
        for off in (0, 2, 4):
            w = [0] * L.rank
            w[off], w[off + 1] = a, b
            pool.append(w)
    z = [0] * L.rank
    z[-1] = 1
    pool.append(z)
    return [rng.choice(pool) for _ in range(count)]


def check_o_plus(ctx, products: int = 100):
    L = k3n_lattice(2)
    n = L.rank
    ident = linalg.identity(n)
    neg = [[-x for x in r] for r in ident]
    ok = in_O_plus(ident, L) and not in_O_plus(neg, L)
    roots = [v for v in _random_isometry_factors(L, random.Random(0), 60) if L.q(v) == -2][:10]
    ok &= all(in_O_plus(reflection(r, L), L) for r in roots)
    rng = random.Random(ctx.seed)
    agree = 0
    for _ in range(products):
        factors = _random_isometry_factors(L, rng, rng.randint(1, 4))
        M = ident
        expected = True
        for v in factors:
            R = reflection(v, L)
            M = linalg.matmul(M, R)
            expected ^= not in_O_plus(R, L)
        if rng.random() < 0.5:
            M = linalg.matmul(M, neg)
            expected ^= True
        if is_isometry(M, L) and in_O_plus(M, L) == expected:
            agree += 1
    ok &= agree == products
    return ok, {"roots_tested": len(roots), "products_agreeing": agree, "products": products}


def check_property_suites(ctx, snf_count: int = 500, triples: int = 200):
    rng = random.Random(ctx.seed)
    snf_ok = 0
    for _ in range(snf_count):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        D, Uu, V = linalg.smith_normal_form(A)
        diag = [D[i][i] for i in range(min(m, n))]
        good = (linalg.matmul(linalg.matmul(Uu, A), V) == D
                and abs(linalg.determinant(Uu)) == 1 and abs(linalg.determinant(V)) == 1
                and all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
                and all(d >= 0 for d in diag)
                and all(diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0
                        for i in range(len(diag) - 1)))
        snf_ok += good

    # chambers in T = U ⊕ <-2> inside K3n(2)
    L = k3n_lattice(2)
    basis = [[0] * 23 for _ in range(3)]
    basis[0][0] = basis[1][1] = basis[2][22] = 1
    emb = PrimitiveEmbedding(L, tuple(tuple(b) for b in basis))
    T = emb.lattice
    walls = local_walls(emb, 2)
    ref = [1, 1, 0]

    def random_point():
        while True:
            x = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(3)]
            if T.q(x) > 0 and T.b(x, ref) > 0 and all(T.b(x, w.coords) != 0 for w in walls):
                return x

    invariance_ok = 0
    for _ in range(50):
        x = random_point()
        c = chamber_of(x, walls, T)
        scaled = chamber_of([3 * a for a in x], walls, T)
        m = min(abs(T.b(x, w.coords)) for w in walls)
        eps = Fraction(m, 4 * max(1, max(sum(abs(g) for g in T.pairings(w.coords)) for w in walls)))
        y = [a + eps * rng.choice((-1, 1)) for a in x]
        invariance_ok += c.signs == scaled.signs == chamber_of(y, walls, T).signs
    metric_ok = 0
    for _ in range(triples):
        x, y, z = random_point(), random_point(), random_point()
        d = lambda a, b: crossing_count(a, b, walls, T)
        metric_ok += (d(x, x) == 0 and d(x, y) == d(y, x) and d(x, z) <= d(x, y) + d(y, z))

    equiv_total = equiv_ok = 0
    for name, e in corpus_embeddings().items():
        vecs = [[rng.randint(-3, 3) for _ in range(e.ambient.rank)] for _ in range(40)]
        if name == "delta-prime-witness":
            vecs.append([1, -3, 1, -1, 0])
        for v in vecs:
            if any(v):
                equiv_total += 1
                equiv_ok += delta_prime_equiv_check(v, e)
    ok = (snf_ok == snf_count and invariance_ok == 50 and metric_ok == triples
          and equiv_ok == equiv_total)
    return ok, {"snf": f"{snf_ok}/{snf_count}", "chamber_invariance": f"{invariance_ok}/50",
                "pseudometric": f"{metric_ok}/{triples}", "delta_prime_equiv": f"{equiv_ok}/{equiv_total}"}


CHECKS: dict[str, Callable] = {
    "e6v3-form": check_e6v3_form,
    "opposite-forms": check_opposite_forms,
    "ball-dims": check_ball_dims,
    "sextic-embedding": check_sextic_embedding,
    "det3-obstruction": check_det3_obstruction,
    "delta-prime-rank-one": check_delta_prime_rank_one,
    "enumeration-oracle": check_enumeration_oracle,
    "cyclotomic-dims": check_cyclotomic_dims,
    "totient-table": check_totient_table,
    "o-plus": check_o_plus,
    "property-suites": check_property_suites,
}


def verify_paper(only: list[str] | None = None, seed: int = DEFAULT_SEED,
                 overrides: dict[str, Lattice] | None = None) -> Report:
    """Run the named checks (all by default); ``overrides`` replaces catalog lattices."""
    names = list(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    ctx = _Context(seed, overrides)
    report = Report(["verify-paper"] + (["--only", ",".join(names)] if only else []) + ["--seed", str(seed)])
    t0 = time.perf_counter()
    for name in names:
        try:
            ok, detail = CHECKS[name](ctx)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
        report.add_check(name, ok, detail)
    report.results = {"checks_run": len(names), "all_pass": report.passed,
                      "under_two_minutes": time.perf_counter() - t0 < 120}
    return report
