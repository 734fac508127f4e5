from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from ballquot.catalog import U, k3n_lattice, parse
from ballquot.chambers import (Chamber, chamber_of, cone_membership, crossing_count, integer_grid,
                               local_walls, refine_by_delta_prime, sign_vector)
from ballquot.corpus import delta_prime_witness, sextic_embedding
from ballquot.sublattice import PrimitiveEmbedding
from ballquot.walls import WallVector

K3N2 = k3n_lattice(2)


def k3_u():
    e = [0] * 23
    f = [0] * 23
    e[0] = f[1] = 1
    return PrimitiveEmbedding(K3N2, (tuple(e), tuple(f)))


def k3_u_z():
    rows = []
    for i in (0, 1, 22):
        v = [0] * 23
        v[i] = 1
        rows.append(tuple(v))
    return PrimitiveEmbedding(K3N2, tuple(rows))


U_WALLS = [WallVector((1, -1), -2, 1)]


def test_cone_membership_examples():
    ref = [1, 1]
    assert cone_membership([1, 2], U, ref)
    assert not cone_membership([-1, -1], U, ref)
    assert not cone_membership([1, -1], U, ref)
    with pytest.raises(ValueError):
        cone_membership([1, 2], U, [1, 0])


def test_local_walls_examples():
    walls = local_walls(k3_u(), 5)
    assert [w.coords for w in walls] == [(1, -1)]
    assert local_walls(sextic_embedding(), 5) == []
    walls = local_walls(k3_u_z(), 2)
    assert (0, 0, 1) in [w.coords for w in walls]
    assert all(w.norm < 0 for w in walls)


def test_local_walls_wrong_signature():
    emb = PrimitiveEmbedding(parse("A2⊕U"), ((1, 0, 0, 0), (0, 1, 0, 0)))
    with pytest.raises(ValueError, match="signature"):
        local_walls(emb, 3)


def test_local_walls_prefix_closed():
    emb = k3_u_z()
    prev = set()
    for B in range(1, 5):
        cur = {w.coords for w in local_walls(emb, B)}
        assert prev <= cur
        prev = cur


def test_chamber_of_examples():
    x, y = [1, 2], [2, 1]
    cx = chamber_of(x, U_WALLS, U, reference=[1, 1])
    cy = chamber_of(y, U_WALLS, U, reference=[1, 1])
    assert cx.signs == (1,) and cy.signs == (-1,)
    assert chamber_of([3, 6], U_WALLS, U).signs == cx.signs
    with pytest.raises(ValueError, match="on wall"):
        chamber_of([1, 1], U_WALLS, U)
    with pytest.raises(ValueError):
        chamber_of([-1, -2], U_WALLS, U, reference=[1, 1])


def test_crossing_examples():
    assert crossing_count([1, 2], [1, 3], U_WALLS, U) == 0
    assert crossing_count([1, 2], [2, 1], U_WALLS, U) == 1


def test_chamber_contains_and_label():
    c = chamber_of([1, 2], U_WALLS, U)
    assert c.label() == "+"
    assert c.contains([1, 5]) and not c.contains([5, 1]) and not c.contains([1, 1])
    with pytest.raises(ValueError):
        Chamber(U, tuple(U_WALLS), (0,), (Fraction(1), Fraction(2)))


EMB3 = k3_u_z()
WALLS3 = local_walls(EMB3, 2)
T3 = EMB3.lattice
REF3 = [1, 2, 0]  # q = 4

# q(a, b, c) = 2ab - 2c^2 is positive for a, b >= 1 and |c| < 1
cone_point = st.tuples(
    st.fractions(min_value=1, max_value=6, max_denominator=7),
    st.fractions(min_value=1, max_value=6, max_denominator=7),
    st.fractions(min_value=Fraction(-6, 7), max_value=Fraction(6, 7), max_denominator=7),
).map(list)


def off_wall(v):
    return all(T3.b(v, w.coords) != 0 for w in WALLS3)


@given(cone_point, st.integers(1, 9))
def test_chamber_scaling_invariance(x, c):
    assume(off_wall(x))
    assert chamber_of(x, WALLS3, T3).signs == chamber_of([c * a for a in x], WALLS3, T3).signs


@given(cone_point, st.lists(st.integers(-1, 1), min_size=3, max_size=3))
def test_chamber_locally_constant(x, direction):
    assume(off_wall(x))
    m = min(abs(T3.b(x, w.coords)) for w in WALLS3)
    worst = max(sum(abs(a) for a in T3.pairings(w.coords)) for w in WALLS3)
    eps = m / (2 * worst)
    y = [a + eps * d for a, d in zip(x, direction)]
    assert sign_vector(y, WALLS3, T3) == sign_vector(x, WALLS3, T3)


@given(cone_point, cone_point, cone_point)
def test_crossing_pseudometric(x, y, z):
    assume(off_wall(x) and off_wall(y) and off_wall(z))
    assert crossing_count(x, x, WALLS3, T3) == 0
    assert crossing_count(x, y, WALLS3, T3) == crossing_count(y, x, WALLS3, T3)
    assert crossing_count(x, z, WALLS3, T3) <= crossing_count(x, y, WALLS3, T3) + crossing_count(y, z, WALLS3, T3)


def test_refine_rank_one_is_one():
    emb = sextic_embedding()
    T = emb.lattice
    assert local_walls(emb, 3) == []
    K = chamber_of([1], [], T)
    assert refine_by_delta_prime(K, [], integer_grid(1, 3), emb) == 1


def test_refine_examples():
    emb, d = delta_prime_witness()
    T = emb.lattice
    K = chamber_of([1, 2], U_WALLS, T, reference=[1, 1])
    grid = integer_grid(2, 6)
    assert refine_by_delta_prime(K, [d], grid, emb) == 2
    # in T coordinates: (1, 1)^⊥ misses the cone, (1, -3)^⊥ = span(1, 3) cuts the chamber {b > a}
    assert refine_by_delta_prime(K, [(1, 1)], grid) == 1
    assert refine_by_delta_prime(K, [(1, -3)], grid) == 2


def test_refine_errors():
    emb, d = delta_prime_witness()
    K = chamber_of([1, 2], U_WALLS, emb.lattice)
    with pytest.raises(ValueError, match="empty grid"):
        refine_by_delta_prime(K, [d], [], emb)
    with pytest.raises(ValueError, match="Δ′"):
        refine_by_delta_prime(K, [[1, -1, 0, 0, 0]], integer_grid(2, 3), emb)


def test_refine_monotone_in_grid():
    emb, d = delta_prime_witness()
    K = chamber_of([1, 2], U_WALLS, emb.lattice)
    counts = [refine_by_delta_prime(K, [d], integer_grid(2, r), emb) for r in (3, 5, 8)]
    assert counts == sorted(counts)
