import random
from fractions import Fraction

import pytest

import linalg
from config import DEFAULT_SEED
from errors import IncompatibleContext, ZeroDivisorWitness
from exact_arith import (
    FieldTower,
    FractionField,
    UniPolynomial,
    _tower_inverse,
    invert,
    irreducibility_check,
    is_prime,
    minimal_polynomial,
    prime_field,
    separable_polynomial,
    tower_field_check,
)
from groebner import groebner


def gaussian_field(Q, ring):
    R = ring(Q, "x")
    return FieldTower.from_polynomials(Q, ("x",), [R.parse("x^2 + 1")])


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_prime_field_arithmetic(F3):
    two = F3.from_rational(2)
    assert two * two == 1
    assert two.inverse() == 2
    assert F3.from_rational(Fraction(1, 2)) == 2
    assert (two + 1).is_zero()


def test_denominator_divisible_by_p_is_rejected(F2):
    with pytest.raises(ValueError):
        F2.from_rational(Fraction(1, 2))


def test_elements_of_different_fields_do_not_mix(Q, F2):
    with pytest.raises(IncompatibleContext):
        Q.one() + F2.one()


def test_gaussian_tower_arithmetic(Q, ring):
    K = gaussian_field(Q, ring)
    i = K.generator(0)
    assert i * i == -1
    assert (K.one() + i).inverse() == (K.one() - i) * Fraction(1, 2)
    assert K.degree == 2
    assert str(i * 2) == "2*x"


def test_reducible_tower_yields_zero_divisor_witness(Q, ring):
    R = ring(Q, "x")
    K = FieldTower.from_polynomials(Q, ("x",), [R.parse("x^2 - 1")])
    element = K.generator(0) - 1
    with pytest.raises(ZeroDivisorWitness) as info:
        element.inverse()
    witness = info.value.witness
    assert not witness.is_zero()
    assert (element * witness).is_zero()
    assert "ZeroDivisorWitness" in str(info.value)


def test_tower_step_must_be_monic(Q, ring):
    R = ring(Q, "x")
    with pytest.raises(ValueError):
        FieldTower.from_polynomials(Q, ("x",), [R.parse("2*x^2 + 1")])


def test_fraction_field_identity_u_over_v_is_v(F2, ring):
    R = ring(F2, "u, v")
    K = FractionField(groebner(R, [R.parse("v^2 - u")]))
    u, v = K.variable("u"), K.variable("v")
    assert u / v == v
    assert (v / u) * v == 1
    assert (u / v).inverse() == v / u


def test_fraction_field_of_line_cancels_common_factors(Q, ring):
    R = ring(Q, "t")
    K = FractionField(groebner(R, []))
    t = K.variable("t")
    q = (t * t - 1) / (t - 1)
    assert q == t + 1
    num, den = q.value
    assert den.is_one()


def test_minimal_polynomial_of_i(Q, ring):
    K = gaussian_field(Q, ring)
    mu = minimal_polynomial(K.generator(0), Q)
    assert mu == UniPolynomial(Q, [1, 0, 1])


@pytest.mark.parametrize(
    "p, coeffs, status",
    [
        (3, [-1, 0, 1], "reducible"),
        (2, [1, 0, 1], "reducible"),
        (2, [1, 1, 1], "irreducible"),
        (5, [-2, 0, 1], "irreducible"),
        (3, [1, 0, 0, 0, 1], "reducible"),
    ],
)
def test_irreducibility_over_prime_fields(p, coeffs, status):
    F = prime_field(p)
    poly = UniPolynomial(F, coeffs)
    result = irreducibility_check(poly)
    assert result.status == status
    if status == "reducible":
        assert 0 < result.factor.degree < poly.degree
        assert (poly % result.factor).is_zero()


def test_equal_degree_split_of_x4_plus_1_over_f3():
    F = prime_field(3)
    poly = UniPolynomial(F, [1, 0, 0, 0, 1])
    result = irreducibility_check(poly, seed=7)
    assert result.factor.degree == 2


def test_irreducibility_over_rationals(Q):
    assert irreducibility_check(UniPolynomial(Q, [1, 0, 1])).status == "irreducible"
    reducible = irreducibility_check(UniPolynomial(Q, [-1, 0, 1]))
    assert reducible.status == "reducible"
    assert reducible.factor.degree == 1
    assert irreducibility_check(UniPolynomial(Q, [-2, 0, 1]), trust_point=True).status == "skipped"


def test_separable_polynomial(F2, F3):
    assert not separable_polynomial(UniPolynomial(F2, [1, 0, 1]))
    assert separable_polynomial(UniPolynomial(F3, [1, 0, 1]))


def two_step_tower(field, ring, steps):
    R = ring(field, "x, y")
    return FieldTower.from_polynomials(field, ("x", "y"), [R.parse(s) for s in steps])


def test_tower_field_check_finds_zero_divisors(Q, ring):
    K = two_step_tower(Q, ring, ["x^2 - 2", "y^2 - 2"])
    result = tower_field_check(K)
    assert result.status == "reducible"
    assert not result.factor.is_zero() and not result.cofactor.is_zero()
    assert (result.factor * result.cofactor).is_zero()


def test_tower_field_check_certifies_a_number_field(Q, ring):
    K = two_step_tower(Q, ring, ["x^2 - 2", "y^2 - x"])
    assert tower_field_check(K).status == "irreducible"
    assert tower_field_check(gaussian_field(Q, ring)).status == "irreducible"


@pytest.mark.parametrize(
    "field_name, steps",
    [("Q", ["x^2 - 2", "y^2 - x"]), ("F3", ["x^2 + 1", "y - x"]), ("F2", ["x^2 + x + 1", "y^2 + y + x"])],
)
def test_tower_elements_invert(field_name, steps, request, ring):
    K = two_step_tower(request.getfixturevalue(field_name), ring, steps)
    rng = random.Random(DEFAULT_SEED)
    for _ in range(20):
        e = K.random_element(rng)
        if e.is_zero():
            continue
        assert invert(e) * e == 1
        assert e / e == 1


def test_tower_inverses_are_memoized(Q, ring):
    first = invert(gaussian_field(Q, ring).generator(0) + 1)
    hits = _tower_inverse.cache_info().hits
    again = invert(gaussian_field(Q, ring).generator(0) + 1)
    assert again == first
    assert _tower_inverse.cache_info().hits == hits + 1


def random_fraction(K, rng, random_polynomial):
    while True:
        den = K.from_polynomial(random_polynomial(K.ring, rng))
        if not den.is_zero():
            return K.from_polynomial(random_polynomial(K.ring, rng)) / den


def test_fraction_elements_invert(F2, ring, random_polynomial):
    R = ring(F2, "u, v")
    K = FractionField(groebner(R, [R.parse("v^2 - u")]))
    rng = random.Random(DEFAULT_SEED)
    for _ in range(15):
        e = random_fraction(K, rng, random_polynomial)
        if e.is_zero():
            continue
        assert invert(e) * e == 1


def test_fraction_equality_is_an_equivalence(Q, ring, random_polynomial):
    R = ring(Q, "u, v")
    K = FractionField(groebner(R, [R.parse("v^2 - u^3")]))
    rng = random.Random(DEFAULT_SEED)
    for _ in range(15):
        a = random_fraction(K, rng, random_polynomial)
        g = random_fraction(K, rng, random_polynomial)
        h = random_fraction(K, rng, random_polynomial)
        if g.is_zero() or h.is_zero():
            continue
        b = (a * g) / g
        c = (a * h) / h
        assert a == a
        assert a == b and b == a
        assert b == c and a == c
        assert a + 1 != a


def test_minimal_polynomial_has_no_smaller_annihilator(Q, ring):
    K = two_step_tower(Q, ring, ["x^2 - 2", "y^2 - x"])
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        e = K.random_element(rng)
        mu = minimal_polynomial(e, Q)
        assert mu.leading() == 1
        assert mu.evaluate(e, K.from_base).is_zero()
        powers = [K.coordinates((e ** k).value) for k in range(mu.degree)]
        assert linalg.rank(powers, K.degree, Q) == mu.degree
        assert K.degree % mu.degree == 0


def test_fraction_field_names_its_ring(F3, Q, ring):
    assert str(FractionField(groebner(ring(F3, "y"), []))) == "Frac(F3[y])"
    R = ring(Q, "u, v")
    cusp = str(FractionField(groebner(R, [R.parse("v^2 - u^3")])))
    assert cusp.startswith("Frac(Q[u, v]/(") and "u^3" in cusp
