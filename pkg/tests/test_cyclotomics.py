from fractions import Fraction

import pytest

from cyclotomics import Cyclotomic, zeta_polynomial, cyc_arith, cyc_conj


def zeta(n, k=1):
    return Cyclotomic.root_of_unity(n, k)


@pytest.mark.unit
def test_cube_roots_of_unity_sum_to_minus_one():
    assert zeta(3) + zeta(3, 2) == -1
    assert zeta(3) * zeta(3, 2) == 1


@pytest.mark.unit
def test_values_of_different_conductors_compare_after_lifting():
    assert zeta(6, 2) == zeta(3)
    assert zeta(12, 3) == zeta(4)
    assert hash(zeta(6, 2)) == hash(zeta(3))
    assert Cyclotomic.from_rational(2, conductor=5) == 2


@pytest.mark.unit
def test_conjugation_and_galois():
    i = zeta(4)
    assert i.conjugate() == -i
    assert cyc_conj(zeta(7, 2)) == zeta(7, 5)
    assert zeta(7).galois(3) == zeta(7, 3)
    with pytest.raises(ValueError):
        zeta(6).galois(2)


@pytest.mark.unit
def test_gaussian_period_of_seven():
    eta = zeta(7) + zeta(7, 2) + zeta(7, 4)
    assert eta * eta + eta + 2 == 0
    assert not eta.is_rational()
    assert (eta + eta.conjugate()).to_rational() == -1


@pytest.mark.unit
def test_rational_arithmetic():
    half = Cyclotomic.from_rational(Fraction(1, 2))
    assert half * 2 == 1
    assert (half - 1).to_rational() == Fraction(-1, 2)
    assert not half.is_integral()
    assert cyc_arith(half, half, 'add') == 1
    with pytest.raises(ValueError):
        cyc_arith(half, half, 'div')


@pytest.mark.unit
def test_zeta_polynomial_reduces_exponents():
    assert zeta_polynomial(7, [0] * 7 + [1]) == 1
    assert zeta_polynomial(7, [1] * 7) == 0
    assert zeta_polynomial(3, [0, 1]) == zeta(3)


@pytest.mark.unit
def test_real_septic_values_sum_to_minus_one():
    a1 = zeta_polynomial(7, [1, 0, 3, 1, 1, 3, 0])
    a2 = zeta_polynomial(7, [0, 0, -1, 2, 2, -1, 0])
    a3 = zeta_polynomial(7, [-2, 0, -2, -3, -3, -2, 0])
    assert a1 + a2 + a3 == -1
    for value in (a1, a2, a3):
        assert value.conjugate() == value


@pytest.mark.unit
def test_json_form():
    value = zeta(5) - Cyclotomic.from_rational(Fraction(1, 3))
    obj = value.to_json()
    assert obj['conductor'] == 5
    assert Cyclotomic.from_json(obj) == value


@pytest.mark.unit
def test_coefficient_count_is_checked():
    with pytest.raises(ValueError):
        Cyclotomic(5, [1, 2])
