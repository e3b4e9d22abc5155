from fractions import Fraction

import pytest

from qdeform.rational import RationalComplex
from qdeform.series import ScalarSeries, cos_series, sin_series

from oracles import prefactor_coefficients


def test_sin_cos_leading_coefficients():
    s = sin_series(7)
    assert s.coefficient(1) == 1
    assert s.coefficient(3) == RationalComplex(Fraction(-1, 6))
    assert s.coefficient(5) == RationalComplex(Fraction(1, 120))
    assert s.coefficient(2).is_zero
    c = cos_series(6)
    assert c.coefficient(0) == 1
    assert c.coefficient(2) == RationalComplex(Fraction(-1, 2))
    assert c.coefficient(4) == RationalComplex(Fraction(1, 24))


def test_multiplication_truncates():
    a = ScalarSeries(3, {1: 1})
    b = ScalarSeries(3, {3: 1})
    assert (a * b).is_zero  # power 4 exceeds the cap
    c = ScalarSeries(3, {0: 2, 1: 1})
    assert (a * c).coeffs == {1: RationalComplex(2), 2: RationalComplex(1)}


def test_division_against_independent_oracle():
    # sin(t)/t divided by 1 + cos(t), compared to the tan-half route
    degree = 12
    numer = sin_series(degree + 1)
    sinc = ScalarSeries(degree, {k - 1: v for k, v in numer.coeffs.items()})
    denom = cos_series(degree) + ScalarSeries.constant(1, degree)
    quotient = sinc.divide(denom)
    expected = prefactor_coefficients(degree)
    for power in range(degree + 1):
        assert quotient.coefficient(power) == RationalComplex(expected[power])


def test_division_roundtrip():
    degree = 8
    denom = cos_series(degree) + ScalarSeries.constant(1, degree)
    numer = sin_series(degree)
    assert numer.divide(denom) * denom == numer


def test_division_needs_unit_constant_term():
    with pytest.raises(ZeroDivisionError):
        sin_series(4).divide(sin_series(4))


def test_degree_mismatch_raises():
    with pytest.raises(ValueError, match="mismatched truncation"):
        sin_series(4) + sin_series(6)
    with pytest.raises(ValueError, match="mismatched truncation"):
        sin_series(4) * sin_series(6)


def test_truncation_consistency():
    degree = 10
    full = sin_series(degree).divide(
        cos_series(degree) + ScalarSeries.constant(1, degree)
    )
    short = sin_series(6).divide(cos_series(6) + ScalarSeries.constant(1, 6))
    assert full.truncated(6) == short


def test_to_text():
    s = ScalarSeries(4, {0: Fraction(1, 2), 2: Fraction(1, 24), 4: Fraction(1, 240)})
    assert s.to_text("theta") == "1/2 + (1/24)*theta^2 + (1/240)*theta^4"
    assert ScalarSeries(3, {}).to_text() == "0"
    neg = ScalarSeries(2, {1: Fraction(-1, 3)})
    assert neg.to_text("u") == "-(1/3)*u"
