import random

import pytest

import linalg
from config import DEFAULT_SEED
from errors import NotZeroDimensional, UnitIdeal
from groebner import (
    IdealPresentation,
    QuotientAlgebra,
    buchberger,
    elimination_ideal,
    groebner,
    ideal_product,
    krull_dimension,
    normal_form,
    quotient_staircase,
)
from multipoly import LEX


def test_reduced_basis_lex(Q, ring):
    R = ring(Q, "x, y", LEX)
    G = groebner(R, [R.parse("x^2 + y^2 - 1"), R.parse("x - y")])
    assert G.polynomials == (R.parse("x - y"), R.parse("y^2 - 1/2"))


def test_basis_does_not_depend_on_generator_order(Q, ring):
    R = ring(Q, "x, y, z")
    gens = [R.parse("x*y - z"), R.parse("y*z - x"), R.parse("x*z - y")]
    assert groebner(R, gens).polynomials == groebner(R, gens[::-1]).polynomials


def test_unit_ideal(Q, ring):
    R = ring(Q, "x")
    G = groebner(R, [R.parse("x"), R.parse("x - 1")])
    assert G.is_unit()
    with pytest.raises(UnitIdeal):
        krull_dimension(G)


def test_membership_and_normal_form(Q, ring):
    R = ring(Q, "x, y")
    G = groebner(R, [R.parse("y^2 - x^3 - x^2")])
    assert G.contains(R.parse("x*y^2 - x^4 - x^3"))
    assert not G.contains(R.parse("y"))
    assert normal_form(R.parse("x^3"), G) == R.parse("y^2 - x^2")


def test_staircase(Q, ring):
    R = ring(Q, "x, y")
    G = groebner(R, [R.parse("x^2"), R.parse("y^2")])
    assert quotient_staircase(G) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_infinite_staircase_is_rejected(F2, ring):
    R = ring(F2, "u, v")
    with pytest.raises(NotZeroDimensional):
        quotient_staircase(groebner(R, [R.parse("v^2 - u")]))


def test_krull_dimension(Q, ring):
    R = ring(Q, "x, y")
    assert krull_dimension(groebner(R, [])) == 2
    assert krull_dimension(groebner(R, [R.parse("y^2 - x^3 - x^2")])) == 1
    assert krull_dimension(groebner(R, [R.parse("x"), R.parse("y")])) == 0


def test_elimination_gives_the_cusp(Q, ring):
    R = ring(Q, "t, x, y")
    ideal = IdealPresentation(R, (R.parse("x - t^2"), R.parse("y - t^3")))
    G = elimination_ideal(ideal, ["t"])
    assert G.ring.variables == ("x", "y")
    assert len(G.polynomials) == 1
    assert G.contains(G.ring.parse("y^2 - x^3"))


def test_ideal_product_squares_the_maximal_ideal(Q, ring):
    R = ring(Q, "x, y")
    m = IdealPresentation(R, (R.parse("x"), R.parse("y")))
    G = buchberger(ideal_product(m, m))
    assert len(quotient_staircase(G)) == 3


def test_quotient_algebra_multiplication(Q, ring):
    R = ring(Q, "x")
    A = QuotientAlgebra(groebner(R, [R.parse("x^2 + 1")]))
    assert A.degree == 2
    x = R.parse("x")
    assert A.multiply(x, x) == -1
    assert A.coordinates(A.multiply(x, R.parse("x + 1"))) == [-1, 1]


def zero_dimensional_generators(R, rng, random_polynomial):
    """x^2 and y^2 lead under grevlex, so the quotient is finite"""
    a, b, c, d = (R.field.from_int(rng.randint(-3, 3)) for _ in range(4))
    x, y = R.gens()
    generators = [x ** 2 + y * a + b, y ** 2 + x * c + d]
    extra = random_polynomial(R, rng, degree=1)
    if rng.random() < 0.5 and not extra.is_zero():
        generators.append(extra)
    return generators


def test_normal_form_is_idempotent_and_decides_membership(Q, ring, random_polynomial):
    R = ring(Q, "x, y")
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        generators = zero_dimensional_generators(R, rng, random_polynomial)
        G = groebner(R, generators)
        for _ in range(5):
            p = random_polynomial(R, rng, degree=3)
            r = normal_form(p, G)
            assert normal_form(r, G) == r
            assert G.contains(p - r)
            assert G.contains(p) == r.is_zero()
            assert G.contains(p * generators[0])


def test_basis_is_deterministic_under_permutation(F3, ring, random_polynomial):
    R = ring(F3, "x, y")
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        generators = zero_dimensional_generators(R, rng, random_polynomial)
        expected = groebner(R, generators).polynomials
        for _ in range(3):
            shuffled = list(generators)
            rng.shuffle(shuffled)
            assert groebner(R, shuffled).polynomials == expected


def test_staircase_size_is_the_quotient_dimension(Q, ring, random_polynomial):
    R = ring(Q, "x, y")
    rng = random.Random(DEFAULT_SEED)
    monomials = [(i, j) for i in range(5) for j in range(5 - i)]
    for _ in range(10):
        G = groebner(R, zero_dimensional_generators(R, rng, random_polynomial))
        rows = []
        for m in monomials:
            terms = normal_form(R.monomial(m), G).terms
            rows.append([terms.get(n, Q.zero()) for n in monomials])
        assert linalg.rank(rows, len(monomials), Q) == len(quotient_staircase(G))
