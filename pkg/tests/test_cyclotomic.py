from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ballquot.catalog import parse
from ballquot.corpus import cox_a2_ext, coxeter_extension, period_point, sextic_action, toy_ball
from ballquot.cyclotomic import (CycScalar, CycVector, eigenspace_basis, isotropy_check, positivity_check,
                                 q, random_eigen_sample, real_value)

PRIMES = [3, 5, 7]


def scalars(p):
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                    min_size=p - 1, max_size=p - 1).map(lambda c: CycScalar(p, tuple(c)))


def test_arithmetic_examples():
    for p in PRIMES:
        z = CycScalar.zeta(p)
        assert z * CycScalar.zeta(p, p - 1) == CycScalar.from_rational(p, 1)
        total = sum((CycScalar.zeta(p, i) for i in range(p)), CycScalar.from_rational(p, 0))
        assert not total
    z = CycScalar.zeta(3)
    assert (1 - z).inverse() == (1 - CycScalar.zeta(3, 2)) * Fraction(1, 3)
    with pytest.raises(ZeroDivisionError):
        CycScalar.from_rational(3, 0).inverse()


def test_conjugate_examples():
    z = CycScalar.zeta(3)
    assert z.conjugate() == CycScalar(3, (-1, -1))
    r = CycScalar.from_rational(5, Fraction(7, 3))
    assert r.conjugate() == r


@pytest.mark.parametrize("p", PRIMES)
@given(data=st.data())
def test_field_axioms(p, data):
    a, b, c = data.draw(scalars(p)), data.draw(scalars(p)), data.draw(scalars(p))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if a:
        assert a * a.inverse() == CycScalar.from_rational(p, 1)
        assert a.norm() > 0


def test_eigenspace_examples():
    B = eigenspace_basis(cox_a2_ext(), 1)
    assert len(B) == 1
    assert all(not e for e in B[0].entries[:2])
    assert len(eigenspace_basis(sextic_action(), 1)) == 11


def test_identity_block_has_zero_eigenspace():
    from ballquot.isometry import IsometryAction
    U = parse("U")
    fake = IsometryAction(U, ((1, 0), (0, 1)), 3)
    assert eigenspace_basis(fake, 1) == []


@pytest.mark.parametrize("p", PRIMES)
def test_dimension_independent_of_k(p):
    a = coxeter_extension(p)
    dims = {len(eigenspace_basis(a, k)) for k in range(1, p)}
    assert dims == {a.coinvariant.rank // (p - 1)}


def test_toy_ball_dims():
    a = toy_ball()
    assert [len(eigenspace_basis(a, k)) for k in (1, 2)] == [3, 3]


@pytest.mark.parametrize("make", [cox_a2_ext, toy_ball, lambda: coxeter_extension(5), lambda: coxeter_extension(7)])
def test_isotropy_of_eigenvectors_and_combinations(make):
    a = make()
    for k in range(1, a.order):
        for b in eigenspace_basis(a, k):
            assert isotropy_check(b)
        for seed in range(3):
            assert isotropy_check(random_eigen_sample(a, k, seed))


def test_isotropy_a2_explicit():
    A2 = parse("A2")
    z = CycScalar.zeta(3)
    x = CycVector(A2, (CycScalar.from_rational(3, 1), -(z * z)))
    # -2 - 2ζ^4 - 2ζ^2 = -2(1 + ζ + ζ^2) = 0
    assert not q(x)
    assert isotropy_check(x)


def test_isotropy_false_on_invariant_part():
    a = cox_a2_ext()
    x = CycVector.from_rational(a.ambient, [1, 1, 0, 0], 3)
    assert not isotropy_check(x)


def test_positivity_examples():
    B = eigenspace_basis(cox_a2_ext(), 1)[0]
    cert = positivity_check(B)
    assert cert.status == "negative" and not cert.positive
    a = cox_a2_ext()
    x = CycVector.from_rational(a.ambient, [1, 1, 0, 0], 3)
    assert positivity_check(x).status == "positive"
    x = period_point(toy_ball(), seed=3)
    assert positivity_check(x).positive == positivity_check(x.scale(2)).positive
    assert positivity_check(x).positive


def test_positivity_boundary_and_zero():
    U = parse("U")
    x = CycVector.from_rational(U, [1, 0], 3)
    assert positivity_check(x).status == "boundary"
    with pytest.raises(ValueError):
        positivity_check(CycVector.from_rational(U, [0, 0], 3))


def test_positivity_uses_interval_for_irrational_values():
    a = toy_ball()
    x = period_point(a, seed=1)
    cert = positivity_check(x)
    if not cert.value.is_rational():
        assert cert.precision >= 128
    iv = real_value(CycScalar.zeta(5) + CycScalar.zeta(5, 4), 1, 128)  # 2cos(2π/5) > 0
    assert iv.a > 0


def test_serialization_round_trip():
    x = period_point(toy_ball(), seed=2)
    d = x.to_dict()
    assert all("/" in c for coords in d["coords"] for c in coords)
    assert CycVector.from_dict(d, x.ambient) == x


def test_bad_root_index():
    with pytest.raises(ValueError):
        eigenspace_basis(cox_a2_ext(), 3)
