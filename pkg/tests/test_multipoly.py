import random

import pytest

from config import DEFAULT_SEED
from errors import IncompatibleContext, ParseError, UnknownVariable
from multipoly import GREVLEX, LEX, PolyRing, parse_polynomial


def test_parse_and_print_node(Q, ring):
    R = ring(Q, "x, y")
    node = R.parse("y^2 - x^3 - x^2")
    assert str(node) == "-x^3 - x^2 + y^2"
    assert node.total_degree() == 3
    assert node == R.parse("y*y - x^2*(x + 1)")


def test_rational_coefficients_and_implicit_products(Q, ring):
    R = ring(Q, "x, y")
    p = R.parse("1/2 x y - 3(x - y)")
    assert p == R.parse("1/2*x*y - 3*x + 3*y")


def test_derivative_vanishes_in_characteristic(F2, ring):
    R = ring(F2, "u, v")
    assert R.parse("v^2 - u").partial_derivative("v").is_zero()
    assert R.parse("v^2 - u").partial_derivative("u") == 1


def test_product_over_f2(F2, ring):
    R = ring(F2, "u, v")
    assert R.parse("(v^2 - u)*v") == R.parse("v^3 + u*v")


def test_monomial_orders_pick_different_leaders(Q):
    lex = PolyRing(("x", "y"), Q, LEX)
    grevlex = PolyRing(("x", "y"), Q, GREVLEX)
    assert lex.parse("x*y^2 + x^2").leading_monomial() == (2, 0)
    assert grevlex.parse("x*y^2 + x^2").leading_monomial() == (1, 2)


def test_gradient_and_evaluation(Q, ring):
    R = ring(Q, "x, y")
    node = R.parse("y^2 - x^3 - x^2")
    one, two = Q.from_rational(1), Q.from_rational(2)
    assert node.evaluate([one, two]) == 2
    assert [g.evaluate([one, two]) for g in node.gradient()] == [-5, 4]


def test_substitute(Q, ring):
    R = ring(Q, "x, y")
    T = ring(Q, "t")
    t = T.variable("t")
    image = R.parse("y^2 - x^3").substitute([t ** 2, t ** 3])
    assert image.is_zero()


def test_exact_quotient(Q, ring):
    R = ring(Q, "x, y")
    assert R.parse("x^2 - y^2").exact_quotient(R.parse("x - y")) == R.parse("x + y")
    assert R.parse("x^2 + y^2").exact_quotient(R.parse("x - y")) is None


def test_parse_error_reports_position(Q, ring):
    R = ring(Q, "x, y")
    with pytest.raises(ParseError) as info:
        parse_polynomial("x^2 + * y", R, line=4, column=1)
    assert info.value.line == 4
    assert info.value.column == 7


def test_unknown_variable(Q, ring):
    R = ring(Q, "x")
    with pytest.raises(UnknownVariable):
        R.parse("x + z")


def test_rings_do_not_mix(Q, F2, ring):
    with pytest.raises(IncompatibleContext):
        ring(Q, "x").parse("x") + ring(F2, "x").parse("x")


@pytest.mark.parametrize("field_name", ["Q", "F3"])
def test_partial_derivative_is_a_derivation(field_name, request, ring, random_polynomial):
    R = ring(request.getfixturevalue(field_name), "x, y")
    rng = random.Random(DEFAULT_SEED)
    for _ in range(20):
        p, q = random_polynomial(R, rng), random_polynomial(R, rng)
        for v in R.variables:
            dp, dq = p.partial_derivative(v), q.partial_derivative(v)
            assert (p * q).partial_derivative(v) == dp * q + p * dq
            assert (p + q).partial_derivative(v) == dp + dq


def test_evaluation_is_a_ring_homomorphism(Q, ring, random_polynomial):
    R = ring(Q, "x, y")
    rng = random.Random(DEFAULT_SEED)
    for _ in range(20):
        p, q = random_polynomial(R, rng), random_polynomial(R, rng)
        at = [Q.from_int(rng.randint(-4, 4)) for _ in R.variables]
        assert (p + q).evaluate(at) == p.evaluate(at) + q.evaluate(at)
        assert (p * q).evaluate(at) == p.evaluate(at) * q.evaluate(at)
    assert R.one().evaluate([Q.zero(), Q.zero()]) == 1
