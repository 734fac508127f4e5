"""Acceptance criteria 1 to 11, one test each.

Pinned limits: criterion 1 under 1 s, criterion 7 under 30 s, the full
verify-paper run under 120 s.  All other comparisons are exact.
"""
import time
from fractions import Fraction

from ballquot import linalg
from ballquot.catalog import k3n_lattice, parse
from ballquot.chambers import chamber_of, integer_grid, local_walls, refine_by_delta_prime
from ballquot.corpus import coxeter_extension, naive_sextic_embedding, sextic_embedding
from ballquot.cyclotomic import eigenspace_basis, isotropy_check
from ballquot.isometry import ball_dimension, glue_power_check, in_O_plus, max_picard_number, reflection, totient_bound
from ballquot.lattice import discriminant_form, forms_opposite, isometric
from ballquot.report import CHECKS, negative_definite_catalog, radius_box, verify_paper
from ballquot.sublattice import PrimitiveEmbedding, divisibility
from ballquot.walls import (delta_prime_test, divisible_norm_sieve, enumerate_box, enumerate_definite,
                            two_torsion_obstruction)

E6V3_SECONDS = 1.0
ORACLE_SECONDS = 30.0
VERIFY_SECONDS = 120.0


def check(name):
    rep = verify_paper([name])
    assert rep.passed, rep.checks


def test_criterion_01_e6v3_discriminant_form():
    t0 = time.perf_counter()
    F = discriminant_form(parse("E6v3"))
    elapsed = time.perf_counter() - t0
    assert list(F.group.cyclic_orders) == [3] * 5
    assert list(F.q_values) == [Fraction(2, 3)] * 5
    assert elapsed < E6V3_SECONDS
    check("e6v3-form")


def test_criterion_02_opposite_forms():
    assert forms_opposite(discriminant_form(parse("E6v3")), discriminant_form(parse("A2^5")))
    assert list(discriminant_form(parse("A2")).q_values) == [Fraction(4, 3)]
    check("opposite-forms")


def test_criterion_03_ball_dimensions():
    assert ball_dimension(22, 3) == 10
    assert ball_dimension(10, 3) == 4
    assert ball_dimension(22, 23) == 0
    check("ball-dims")


def test_criterion_04_sextic_embedding():
    emb = sextic_embedding()
    S = emb.complement.lattice
    assert S.det == 3 and divisibility(emb.basis[0], emb.ambient) == 2
    ref = parse("A2⊕U^2⊕E8^2")
    G = emb.complement.gram
    # derived basis e+z, f+z, then unit vectors: Gram blocks A2 ⊕ U^2 ⊕ E8^2 with no cross terms
    assert [row[:2] for row in G[:2]] == [[-2, -1], [-1, -2]]
    assert [row[2:] for row in G[2:]] == [list(r[2:]) for r in ref.gram[2:]]
    assert all(G[i][j] == 0 for i in range(2) for j in range(2, 22))
    assert S.signature == ref.signature
    assert isometric(discriminant_form(S), discriminant_form(ref))
    assert emb.glue_index == 3 and glue_power_check(emb, 3)
    naive = naive_sextic_embedding()
    assert naive.glue_index == 6 and not glue_power_check(naive, 3)
    check("sextic-embedding")


def test_criterion_05_det3_obstruction():
    emb = sextic_embedding()
    S = emb.complement
    assert two_torsion_obstruction(S.lattice)
    # every box vector with (δ, L) ⊆ 2Z lies in Λ_2 = 2S, where norms are in 8Z: no norm -10 at any bound
    cert = divisible_norm_sieve(S, -10, 2)
    assert cert.excluded and cert.ideal == 8
    assert [list(r) for r in cert.basis] == [[2 * x for x in r] for r in linalg.identity(S.rank)]
    # literal B = 4 box searches where they fit: the same construction in U^k ⊕ <-2>
    for k in (1, 2, 3):
        L = parse("⊕".join(["U"] * k + ["<-2>"]))
        v = [0] * L.rank
        v[0], v[1], v[-1] = 2, 2, 1
        small = PrimitiveEmbedding(L, (tuple(v),))
        Sk = small.complement
        assert abs(Sk.lattice.det) == 3 and two_torsion_obstruction(Sk.lattice)
        hits = [c for c in enumerate_box(Sk.lattice, -10, 4) if divisibility(Sk.to_ambient(c), L) == 2]
        assert hits == []
    check("det3-obstruction")


def test_criterion_06_delta_prime_empty_for_rank_one():
    for k in (1, 2):
        L = parse("⊕".join(["U"] * k + ["<-2>"]))
        v = [0] * L.rank
        v[0], v[1], v[-1] = 2, 2, 1
        small = PrimitiveEmbedding(L, (tuple(v),))
        assert not any(delta_prime_test(c, small) for c in integer_grid(L.rank, 2) if any(c))
    emb = sextic_embedding()
    for i in range(23):
        for s in (1, 2):
            c = [0] * 23
            c[i] = s
            assert not delta_prime_test(c, emb)
    K = chamber_of([1], local_walls(emb, 2), emb.lattice)
    assert refine_by_delta_prime(K, [], integer_grid(1, 2), emb=emb) == 1
    check("delta-prime-rank-one")


def test_criterion_07_enumeration_oracle():
    t0 = time.perf_counter()
    counts = {}
    for L in negative_definite_catalog():
        assert L.rank <= 8
        for norm in (-2, -4, -10):
            a = enumerate_definite(L, norm)
            b = enumerate_box(L, norm, max(1, radius_box(L, norm)))
            assert {tuple(x) for x in a} == {tuple(x) for x in b}
            counts[(L.name, norm)] = len(a)
    elapsed = time.perf_counter() - t0
    assert counts[("A2", -2)] == 6 and counts[("E8", -2)] == 240 and counts[("A2", -10)] == 0
    assert elapsed < ORACLE_SECONDS


def test_criterion_08_cyclotomic_dimensions():
    for p in (3, 5, 7):
        act = coxeter_extension(p)
        for k in range(1, p):
            basis = eigenspace_basis(act, k)
            assert len(basis) == act.coinvariant.rank // (p - 1)
            assert all(isotropy_check(b) for b in basis)
    check("cyclotomic-dims")


def test_criterion_09_totient_table():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        rho = max_picard_number(p, 23)
        assert rho == 23 - (p - 1)
        assert totient_bound(p, 23, rho) and not totient_bound(p, 23, rho + 1)
    assert max_picard_number(23, 23) == 1
    check("totient-table")


def test_criterion_10_o_plus():
    L = k3n_lattice(2)
    assert L.signature == (3, 20)
    ident = linalg.identity(23)
    assert in_O_plus(ident, L)
    assert not in_O_plus([[-x for x in r] for r in ident], L)
    z = [0] * 23
    z[22] = 1
    assert in_O_plus(reflection(z, L), L)
    check("o-plus")


def test_criterion_11_property_suites_and_full_run():
    t0 = time.perf_counter()
    rep = verify_paper()
    elapsed = time.perf_counter() - t0
    assert [c["name"] for c in rep.checks] == list(CHECKS)
    assert rep.passed, [c for c in rep.checks if c["status"] != "pass"]
    suites = next(c for c in rep.checks if c["name"] == "property-suites")["detail"]
    assert suites["snf"] == "500/500" and suites["pseudometric"] == "200/200"
    assert elapsed < VERIFY_SECONDS
    assert verify_paper(["property-suites"]).to_dict() == verify_paper(["property-suites"]).to_dict()
