import pytest

from ballquot.catalog import LatticeName, k3_lattice, k3n_lattice, make, parse
from ballquot.lattice import discriminant_form


def test_examples():
    assert make(LatticeName("A", 2)).gram == ((-2, 1), (1, -2))
    assert make(LatticeName("RankOne", -2)).gram == ((-2,),)
    E = make(LatticeName("E6dual3"))
    assert E.rank == 6 and abs(E.det) == 3 ** 5 and E.signature == (0, 6)


def test_k3_lattices():
    K = k3_lattice()
    assert K.rank == 22 and abs(K.det) == 1 and K.signature == (3, 19)
    L = k3n_lattice(2)
    assert L.rank == 23 and abs(L.det) == 2 and L.signature == (3, 20)
    assert k3n_lattice(6).gram[-1][-1] == -10
    assert abs(k3n_lattice(6).det) == 10
    with pytest.raises(ValueError):
        k3n_lattice(1)


@pytest.mark.parametrize("tag,param", [("A", 0), ("D", 3), ("E", 9), ("K3n", 1), ("RankOne", 3)])
def test_bad_parameters(tag, param):
    with pytest.raises(ValueError):
        LatticeName(tag, param)


@pytest.mark.parametrize("k", range(1, 9))
def test_a_dets(k):
    L = make(LatticeName("A", k))
    assert abs(L.det) == k + 1 and L.signature == (0, k) and L.is_even


@pytest.mark.parametrize("h", range(4, 9))
def test_d_dets(h):
    assert abs(make(LatticeName("D", h)).det) == 4


@pytest.mark.parametrize("l,d", [(6, 3), (7, 2), (8, 1)])
def test_e_dets(l, d):
    L = make(LatticeName("E", l))
    assert abs(L.det) == d and L.signature == (0, l)


def test_k3n2_discriminant():
    F = discriminant_form(k3n_lattice(2))
    assert F.group.cyclic_orders == (2,)
    assert str(F.q_values[0]) == "3/2"


@pytest.mark.parametrize("spec", ["U", "U(3)", "A2", "D4", "E8", "E6v3", "<6>", "<-2>", "K3", "K3n(2)",
                                  "U⊕A2^5⊕<-2>", "U+A2^5+<-2>"])
def test_parse_names(spec):
    L = parse(spec)
    assert L.is_even


def test_parse_sum_and_ascii_agree():
    assert parse("U⊕A2^5⊕<-2>").gram == parse("U+A2^5+<-2>").gram
    L = parse("U⊕A2^5⊕<-2>")
    assert L.rank == 13 and abs(L.det) == 486 and L.signature == (1, 12)
    assert parse("U(3)").gram == ((0, 3), (3, 0))


def test_parse_errors():
    for bad in ("", "F4", "A0", "E9", "K3n(1)", "<3>"):
        with pytest.raises(ValueError):
            parse(bad)
