from fractions import Fraction

import pytest

from qdeform.rational import I, MINUS_I, RationalComplex
from qdeform.series import ScalarSeries
from qdeform.weyl import (
    ParamPolynomial,
    WeylMonomial,
    WeylSeriesElement,
    anticommutator,
    bracket,
    commutator,
    cosh_element,
    binomial_sqrt,
    deformed_momentum,
    deformed_position,
    exchange_residual,
    free_particle_rule,
    identity_residual,
    identity_rhs,
    leading_order_residual,
    leading_order_target,
    normal_product,
    p_op,
    prefactor_series,
    sqrt_one_plus_square,
    x_op,
)

from oracles import normal_order_word, prefactor_coefficients, tan_coefficients


def element(degree, terms):
    return WeylSeriesElement(degree, terms)


# ---------------------------------------------------------------------------
# normal product
# ---------------------------------------------------------------------------


def test_defining_relation():
    result = normal_product(p_op(2), x_op(2))
    assert result == element(2, {(1, 1): {(0, 0): 1}, (0, 0): {(0, 0): MINUS_I}})


def test_p2_x2_reordering():
    p2 = normal_product(p_op(4), p_op(4))
    x2 = normal_product(x_op(4), x_op(4))
    got = normal_product(p2, x2)
    expected_terms = normal_order_word("ppxx")
    expected = element(4, {k: {(0, 0): v} for k, v in expected_terms.items()})
    assert got == expected
    # frozen form: x^2 p^2 - 4i x p - 2
    assert got == element(
        4,
        {
            (2, 2): {(0, 0): 1},
            (1, 1): {(0, 0): RationalComplex(0, -4)},
            (0, 0): {(0, 0): -2},
        },
    )


def test_multiplicative_identity():
    e = element(4, {(2, 1): {(1, 1): Fraction(3, 7)}, (0, 3): {(0, 0): 5}})
    one = WeylSeriesElement.one(4)
    assert normal_product(one, e) == e
    assert normal_product(e, one) == e


def test_degree_mismatch_raises():
    with pytest.raises(ValueError, match="mismatched truncation"):
        normal_product(p_op(2), x_op(4))
    with pytest.raises(ValueError, match="mismatched truncation"):
        p_op(2) + x_op(4)


# ---------------------------------------------------------------------------
# brackets
# ---------------------------------------------------------------------------


def test_commutator_p_x():
    got = commutator(p_op(2), x_op(2))
    assert got == element(2, {(0, 0): {(0, 0): MINUS_I}})


def test_anticommutator_of_ones():
    one = WeylSeriesElement.one(3)
    assert anticommutator(one, one) == WeylSeriesElement.scalar(2, 3)


def test_commutator_p_xsquared():
    x2 = normal_product(x_op(4), x_op(4))
    got = commutator(p_op(4), x2)
    assert got == element(4, {(1, 0): {(0, 0): RationalComplex(0, -2)}})


def test_bracket_sign_validation():
    with pytest.raises(ValueError, match="unknown bracket sign"):
        bracket(p_op(2), x_op(2), "nonsense")


# ---------------------------------------------------------------------------
# deformed operators
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("degree", [0, 1])
def test_deformed_position_low_degree_is_x(degree):
    assert deformed_position(degree) == x_op(degree)


def test_deformed_position_taylor_terms():
    assert deformed_position(2) == element(
        2, {(1, 0): {(0, 0): 1}, (3, 0): {(0, 2): Fraction(1, 6)}}
    )
    assert deformed_position(4) == element(
        4,
        {
            (1, 0): {(0, 0): 1},
            (3, 0): {(0, 2): Fraction(1, 6)},
            (5, 0): {(0, 4): Fraction(1, 120)},
        },
    )


def test_deformed_momentum_taylor_terms():
    assert deformed_momentum(0) == p_op(0)
    assert deformed_momentum(2) == element(
        2, {(0, 1): {(0, 0): 1}, (0, 3): {(2, 0): Fraction(1, 6)}}
    )
    assert deformed_momentum(4) == element(
        4,
        {
            (0, 1): {(0, 0): 1},
            (0, 3): {(2, 0): Fraction(1, 6)},
            (0, 5): {(4, 0): Fraction(1, 120)},
        },
    )


# ---------------------------------------------------------------------------
# prefactor series
# ---------------------------------------------------------------------------


def test_prefactor_frozen_values():
    series = prefactor_series(4)
    assert series.coefficient(0) == RationalComplex(Fraction(1, 2))
    assert series.coefficient(2) == RationalComplex(Fraction(1, 24))
    assert series.coefficient(4) == RationalComplex(Fraction(1, 240))
    assert series.coefficient(1).is_zero
    assert series.coefficient(3).is_zero


def test_prefactor_matches_tan_half_oracle():
    degree = 12
    series = prefactor_series(degree)
    expected = prefactor_coefficients(degree)
    for power in range(degree + 1):
        assert series.coefficient(power) == RationalComplex(expected[power])


# ---------------------------------------------------------------------------
# square root vs cosh
# ---------------------------------------------------------------------------


def test_sqrt_momentum_degree2():
    assert sqrt_one_plus_square("momentum", 2) == element(
        2, {(0, 0): {(0, 0): 1}, (0, 2): {(2, 0): Fraction(1, 2)}}
    )


def test_sqrt_position_degree4():
    assert sqrt_one_plus_square("position", 4) == element(
        4,
        {
            (0, 0): {(0, 0): 1},
            (2, 0): {(0, 2): Fraction(1, 2)},
            (4, 0): {(0, 4): Fraction(1, 24)},
        },
    )


@pytest.mark.parametrize("degree", range(0, 13))
@pytest.mark.parametrize("side", ["momentum", "position"])
def test_sqrt_equals_cosh_series(side, degree):
    assert sqrt_one_plus_square(side, degree) == cosh_element(side, degree)


def test_sqrt_rejects_mixed_generators():
    mixed = WeylSeriesElement.one(4) + element(4, {(1, 1): {(1, 1): 1}})
    with pytest.raises(ValueError, match="single generator"):
        binomial_sqrt(mixed)


def test_sqrt_rejects_shifted_constant():
    shifted = element(4, {(0, 0): {(0, 0): 2}, (2, 0): {(0, 2): 1}})
    with pytest.raises(ValueError, match="parameter degree >= 1"):
        binomial_sqrt(shifted)


def test_unknown_side_raises():
    with pytest.raises(ValueError, match="unknown side"):
        sqrt_one_plus_square("sideways", 4)


# ---------------------------------------------------------------------------
# the commutator identity
# ---------------------------------------------------------------------------


def test_identity_residual_heisenberg_corner():
    # degree 0: everything collapses to [p, x] + i = 0
    assert identity_residual(0).is_zero
    assert commutator(p_op(0), x_op(0)) == WeylSeriesElement.scalar(MINUS_I, 0)


@pytest.mark.parametrize("degree", range(0, 13))
def test_identity_residual_is_exactly_zero(degree):
    assert identity_residual(degree).is_zero


def test_leading_order_residual_starts_at_degree_four():
    residual, lowest = leading_order_residual(4)
    assert lowest == 4
    # hand-expanded degree-4 residual:
    # -i mu^4 p^4/24 - i nu^4 x^4/24 + mu^2 nu^2 (i/6 - x p/2 - i x^2 p^2/4)
    assert residual == element(
        4,
        {
            (0, 4): {(4, 0): RationalComplex(0, Fraction(-1, 24))},
            (4, 0): {(0, 4): RationalComplex(0, Fraction(-1, 24))},
            (0, 0): {(2, 2): RationalComplex(0, Fraction(1, 6))},
            (1, 1): {(2, 2): Fraction(-1, 2)},
            (2, 2): {(2, 2): RationalComplex(0, Fraction(-1, 4))},
        },
    )


def test_leading_order_residual_below_degree_four_is_zero():
    residual, lowest = leading_order_residual(2)
    assert residual.is_zero
    assert lowest is None


def test_leading_order_residual_mu_slice():
    # nu = 0 leaves only the cosh correction -i mu^4 p^4 / 24 at degree 4
    residual, _ = leading_order_residual(4)
    sliced = residual.substituted_zero("nu")
    assert sliced == element(
        4, {(0, 4): {(4, 0): RationalComplex(0, Fraction(-1, 24))}}
    )


# ---------------------------------------------------------------------------
# exponential exchange identity
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("degree", [0, 1, 6, 12])
def test_exchange_residual_zero(degree):
    assert exchange_residual(degree).is_zero


def _exp_test_element(side, degree):
    # built from factorials here, independent of the engine's internals
    terms = {}
    for k in range(degree + 1):
        if side == "p":
            terms[(0, k)] = {(k, 0): Fraction(1, _fact(k))}
        else:
            terms[(k, 0)] = {(0, k): Fraction(1, _fact(k))}
    return element(degree, terms)


def _fact(k):
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


def test_exchange_mu_nu_coefficient_audit():
    # coefficient of mu^1 nu^1 in e^(mu p) e^(nu x) - e^(nu x) e^(mu p) is -i
    ep = _exp_test_element("p", 4)
    ex = _exp_test_element("x", 4)
    diff = normal_product(ep, ex) - normal_product(ex, ep)
    coeff = diff.coefficient(0, 0).terms.get((1, 1))
    assert coeff == MINUS_I


# ---------------------------------------------------------------------------
# free-particle rule
# ---------------------------------------------------------------------------


def test_free_particle_rule_heisenberg():
    f = ScalarSeries(1, {1: 1})
    lhs, rhs = free_particle_rule(f, 1)
    target = WeylSeriesElement.scalar(MINUS_I, 1)
    assert lhs == target
    assert rhs == target


def test_free_particle_rule_tan_reproduces_relativistic_form():
    # f = p + p^3/3 + 2 p^5/15; [f, x] = -i f' = -i (1 + f^2) + O(p^6)
    tan = tan_coefficients(5)
    f = ScalarSeries(5, {k: tan[k] for k in range(6)})
    lhs, rhs = free_particle_rule(f, 4)
    assert lhs == rhs
    expected = element(
        4,
        {
            (0, 0): {(0, 0): MINUS_I},
            (0, 2): {(0, 0): MINUS_I},
            (0, 4): {(0, 0): RationalComplex(0, Fraction(-2, 3))},
        },
    )
    assert rhs == expected
    # cross-check the 1 + f^2 form by independent squaring
    sq = [Fraction(1)] + [Fraction(0)] * 4
    from oracles import square_coefficients

    for k, v in enumerate(square_coefficients(tan, 4)):
        sq[k] += v
    one_plus_f2 = element(
        4, {(0, k): {(0, 0): RationalComplex(0, -sq[k])} for k in range(5) if sq[k]}
    )
    assert rhs == one_plus_f2


def test_free_particle_rule_sinh_variant_gives_cosh():
    lhs, rhs = free_particle_rule(deformed_momentum(10), 10)
    assert lhs == rhs
    assert rhs == cosh_element("momentum", 10).scaled(MINUS_I)
    assert rhs == sqrt_one_plus_square("momentum", 10).scaled(MINUS_I)


def test_free_particle_rule_rejects_x_dependence():
    with pytest.raises(ValueError, match="series in p alone"):
        free_particle_rule(x_op(4), 4)


# ---------------------------------------------------------------------------
# formal Hermiticity
# ---------------------------------------------------------------------------


def test_generators_are_self_adjoint():
    assert x_op(4).dagger() == x_op(4)
    assert p_op(4).dagger() == p_op(4)


def test_dagger_conjugates_scalars():
    e = WeylSeriesElement.scalar(I, 3)
    assert e.dagger() == WeylSeriesElement.scalar(MINUS_I, 3)


def test_deformed_operators_are_fixed_points():
    assert deformed_position(10).dagger() == deformed_position(10)
    assert deformed_momentum(10).dagger() == deformed_momentum(10)


def test_commutator_is_antihermitian_anticommutator_hermitian():
    degree = 8
    comm = commutator(deformed_momentum(degree), deformed_position(degree))
    assert comm.dagger() == -comm
    anti = anticommutator(
        sqrt_one_plus_square("momentum", degree),
        sqrt_one_plus_square("position", degree),
    )
    assert anti.dagger() == anti


# ---------------------------------------------------------------------------
# truncation consistency
# ---------------------------------------------------------------------------


def test_truncation_consistency_of_constructors():
    assert deformed_momentum(10).truncated(6) == deformed_momentum(6)
    assert deformed_position(10).truncated(6) == deformed_position(6)
    assert prefactor_series(10).truncated(6) == prefactor_series(6)
    assert identity_rhs(10).truncated(6) == identity_rhs(6)
    for side in ("momentum", "position"):
        assert sqrt_one_plus_square(side, 10).truncated(6) == sqrt_one_plus_square(
            side, 6
        )


def test_leading_order_target_form():
    assert leading_order_target(2) == element(
        2,
        {
            (0, 0): {(0, 0): MINUS_I},
            (0, 2): {(2, 0): RationalComplex(0, Fraction(-1, 2))},
            (2, 0): {(0, 2): RationalComplex(0, Fraction(-1, 2))},
        },
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_canonical_text_examples():
    assert WeylSeriesElement.zero(3).to_text() == "0"
    assert deformed_momentum(2).to_text() == "p + (1/6)*mu^2*p^3"
    assert deformed_position(4).to_text() == (
        "x + (1/6)*nu^2*x^3 + (1/120)*nu^4*x^5"
    )
    assert commutator(p_op(2), x_op(2)).to_text() == "-i"
    p2 = normal_product(p_op(4), p_op(4))
    x2 = normal_product(x_op(4), x_op(4))
    assert normal_product(p2, x2).to_text() == "-2 - (4*i)*x*p + x^2*p^2"


def test_text_orders_terms_by_word_then_parameters():
    e = element(
        4,
        {
            (2, 0): {(0, 2): Fraction(1, 2)},
            (0, 0): {(0, 0): 1, (2, 2): Fraction(1, 3)},
            (0, 2): {(2, 0): Fraction(1, 2)},
        },
    )
    assert e.to_text() == (
        "1 + (1/3)*mu^2*nu^2 + (1/2)*mu^2*p^2 + (1/2)*nu^2*x^2"
    )


def test_monomial_ordering():
    assert WeylMonomial(0, 2) < WeylMonomial(1, 0) < WeylMonomial(2, 2)


def test_param_polynomial_drops_zeros():
    poly = ParamPolynomial({(1, 0): 0, (0, 1): 1})
    assert (0, 1) in poly.terms
    assert (1, 0) not in poly.terms
    assert ParamPolynomial({}).is_zero
