from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ballquot.catalog import U, parse
from ballquot.lattice import (EMPTY, Lattice, direct_sum, discriminant_form, discriminant_group,
                              dual_gram, forms_opposite, genus_triple, is_p_elementary, isometric,
                              twist)

CORPUS = ["A1", "A2", "A4", "D4", "D5", "E6", "E7", "E8", "E6v3", "U", "U(3)", "<6>", "<-2>",
          "A2^5", "U⊕A2", "U⊕<-2>", "K3n(2)", "K3n(6)", "U⊕A2^5⊕<-2>", "A2⊕<-2>", "D4⊕<6>"]


def test_validation():
    with pytest.raises(ValueError, match="degenerate"):
        Lattice.from_rows([[2, 2], [2, 2]])
    with pytest.raises(ValueError, match="symmetric"):
        Lattice.from_rows([[2, 1], [0, 2]])
    with pytest.raises(ValueError):
        Lattice.from_rows([[2, 1]])


def test_direct_sum_examples():
    L = direct_sum(U, parse("<-2>"))
    assert L.rank == 3 and abs(L.det) == 2 and L.signature == (1, 2)
    UU = direct_sum(U, U)
    assert abs(UU.det) == 1 and UU.signature == (2, 2)
    assert direct_sum(U, EMPTY).gram == U.gram


def test_twist_examples():
    assert twist(U, 3).gram == ((0, 3), (3, 0)) and abs(twist(U, 3).det) == 9
    assert twist(U, 1) == U
    assert twist(parse("<2>"), 3) == parse("<6>")
    with pytest.raises(ValueError, match="degenerate twist"):
        twist(U, 0)


def test_dual_gram_examples():
    assert dual_gram(parse("<6>")) == [[Fraction(1, 6)]]
    assert dual_gram(U) == [[0, 1], [1, 0]]
    third = Fraction(1, 3)
    assert dual_gram(parse("A2")) == [[-2 * third, -third], [-third, -2 * third]]


def test_discriminant_group_examples():
    assert discriminant_group(parse("A2")).cyclic_orders == (3,)
    assert discriminant_group(U).cyclic_orders == ()
    assert discriminant_group(parse("E6v3")).cyclic_orders == (3,) * 5


def test_discriminant_form_examples():
    assert discriminant_form(parse("<-2>")).q_values == (Fraction(3, 2),)
    assert discriminant_form(parse("<6>")).q_values == (Fraction(1, 6),)
    assert discriminant_form(parse("E6v3")).q_values == (Fraction(2, 3),) * 5
    assert discriminant_form(parse("K3n(2)")).q_values == (Fraction(3, 2),)
    with pytest.raises(ValueError, match="form undefined mod 2"):
        discriminant_form(Lattice.from_rows([[1]]))


def test_p_elementary_examples():
    assert is_p_elementary(parse("E6v3"), 3) == (True, 5)
    assert is_p_elementary(U, 5) == (True, 0)
    assert is_p_elementary(parse("<6>"), 3)[0] is False


def test_genus_examples():
    g = genus_triple(U)
    assert (g.s_plus, g.s_minus) == (1, 1) and g.form.is_trivial
    g = genus_triple(parse("A2"))
    assert (g.s_plus, g.s_minus) == (0, 2) and g.form.q_values == (Fraction(4, 3),)
    g = genus_triple(parse("E8"))
    assert (g.s_plus, g.s_minus) == (0, 8) and g.form.is_trivial


def test_forms_opposite_examples():
    FE, FA = discriminant_form(parse("E6v3")), discriminant_form(parse("A2^5"))
    assert forms_opposite(FE, FA)
    triv = discriminant_form(U)
    assert forms_opposite(triv, triv)
    a = discriminant_form(parse("E6v3(1)"))
    z3 = discriminant_form(Lattice.from_rows([[2, 1], [1, 2]]))  # value 2/3
    assert z3.q_values == (Fraction(2, 3),)
    assert not forms_opposite(z3, z3)
    assert forms_opposite(z3, discriminant_form(parse("A2")))
    assert not forms_opposite(a, a)


def test_forms_opposite_small_mixed_groups_by_search():
    F = discriminant_form(parse("<6>"))
    G = discriminant_form(parse("<-6>"))
    assert forms_opposite(F, G)
    assert not forms_opposite(F, F)


def test_forms_opposite_undecided():
    F = discriminant_form(parse("<10>⊕<10>"))
    with pytest.raises(ValueError, match="undecided"):
        forms_opposite(F, F)


def test_opposite_agrees_with_search_on_small_elementary():
    pairs = [("A2", "A2"), ("A2", "<6>⊕<-2>"), ("A2^2", "E6v3(1)"), ("A2^2", "A2^2")]
    for a, b in pairs:
        F1, F2 = discriminant_form(parse(a)), discriminant_form(parse(b))
        if sorted(F1.group.cyclic_orders) == sorted(F2.group.cyclic_orders):
            assert forms_opposite(F1, F2) == isometric(F1, F2.negated())


@pytest.mark.parametrize("name", CORPUS)
def test_invariants_on_corpus(name):
    L = parse(name)
    F = discriminant_form(L)
    A = F.group
    assert A.order == abs(L.det)
    assert A.length <= L.rank
    k = A.length
    for i in range(k):
        for j in range(k):
            x = [int(t == i) for t in range(k)]
            y = [int(t == j) for t in range(k)]
            s = [a + b for a, b in zip(x, y)]
            lhs = F.value(s) - F.value(x) - F.value(y)
            assert (lhs - 2 * F.pairing(x, y)) % 2 == 0
    for p in (2, 3, 5):
        flag, a = is_p_elementary(L, p)
        if flag:
            bound = p if p % 2 else 2 * p
            assert all(bound % v.denominator == 0 for v in F.q_values)


def test_serialization_round_trip():
    L = parse("U⊕A2^5⊕<-2>")
    assert Lattice.from_dict(L.to_dict()) == L
    assert Lattice.from_dict(L.to_dict()).to_dict() == L.to_dict()


@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from(["A2", "U", "D4", "<6>"]))
def test_twist_composition(s, t, name):
    L = parse(name)
    assert twist(L, s * t).gram == twist(twist(L, s), t).gram
    assert twist(L, t).det == t ** L.rank * L.det


def test_direct_sum_associative():
    a, b, c = parse("A2"), U, parse("<6>")
    assert direct_sum(direct_sum(a, b), c).gram == direct_sum(a, direct_sum(b, c)).gram
