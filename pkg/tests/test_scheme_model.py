import logging
import random

import pytest

import scheme_model
from config import DEFAULT_SEED
from errors import (
    MorphismRelationError,
    NotZeroDimensional,
    PointImageMismatch,
    PointNotOnScheme,
    ReducibleTowerStep,
    SemanticError,
    UnsupportedPoint,
    ZeroDivisorWitness,
)
from exact_arith import FractionField, IrreducibilityResult
from groebner import quotient_staircase
from problem_file import build, parse
from scheme_model import TRUST_POINT, build_fiber, resolve_point, verify_image


def problem(text):
    return build(parse(text))


def line_with_point(tower, ideal=None):
    lines = ["base = Q", "[X]", "vars = x"]
    if ideal:
        lines.append(f"ideal = {ideal}")
    lines += ["[point.x]", "kind = closed", f"tower = {tower}"]
    return problem("\n".join(lines))


def test_node_origin_resolves(built_problem):
    p = built_problem("node_origin")
    x = resolve_point(p.X, p.x_spec)
    assert x.point_gb.polynomials == (p.X.ring.parse("x"), p.X.ring.parse("y"))
    assert x.residue_field.degree == 1
    assert x.evaluate(p.X.ring.parse("y^2 - x^3 - x^2")).is_zero()


def test_gaussian_point_has_degree_two_residue_field(built_problem):
    p = built_problem("gaussian_point_on_line")
    x = resolve_point(p.X, p.x_spec)
    assert x.residue_field.degree == 2
    assert x.evaluate(p.X.ring.parse("x^2 + 1")).is_zero()
    assert not x.evaluate(p.X.ring.parse("x")).is_zero()


def test_point_off_the_scheme():
    p = line_with_point("x - 1", ideal="x^2 - 2")
    with pytest.raises(PointNotOnScheme):
        resolve_point(p.X, p.x_spec)


def test_reducible_tower_step_is_certified():
    p = line_with_point("x^2 - 1")
    with pytest.raises(ReducibleTowerStep) as info:
        resolve_point(p.X, p.x_spec)
    assert info.value.exit_code == 3
    assert "ZeroDivisorWitness" in str(info.value)


def test_short_tower_is_not_maximal():
    p = problem("base = Q\n[X]\nvars = x, y\n[point.x]\nkind = closed\ntower = x\n")
    with pytest.raises(NotZeroDimensional):
        resolve_point(p.X, p.x_spec)


def test_long_tower_is_rejected():
    p = line_with_point("x; x - 1")
    with pytest.raises(SemanticError):
        resolve_point(p.X, p.x_spec)


def test_trust_point_skips_certification(caplog):
    p = line_with_point("x^2 - 2")
    with caplog.at_level(logging.WARNING, logger="scheme_model"):
        x = resolve_point(p.X, p.x_spec, mode=TRUST_POINT)
    assert x.residue_field.degree == 2
    assert "not checked" in caplog.text


def test_generic_point_of_empty_scheme():
    p = problem("base = Q\n[X]\nvars = x\nideal = 1\n[point.x]\nkind = generic\n")
    with pytest.raises(PointNotOnScheme):
        resolve_point(p.X, p.x_spec)


def test_map_must_respect_relations():
    text = """
base = Q
[S]
vars = y
ideal = y
[X]
vars = x
[map]
y = x
[point.x]
kind = closed
tower = x
[point.s]
kind = closed
tower = y
"""
    with pytest.raises(MorphismRelationError):
        problem(text)


def test_image_mismatch_is_reported(reference_problem):
    pf = reference_problem("relative_plane_over_line")
    pf.point_s = ("closed", parse("base = Q\n[X]\nvars = y\n[point.x]\nkind = closed\ntower = y - 1\n").point_x[1])
    p = build(pf)
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    with pytest.raises(PointImageMismatch):
        verify_image(p.f, x, s)


def test_residue_embedding_sends_u_to_v_squared(built_problem):
    p = built_problem("inseparable_f2")
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    i_x = verify_image(p.f, x, s)
    u = s.residue_field.variable("u")
    v = x.residue_field.variable("v")
    assert i_x(u) == v ** 2


def test_fiber_over_generic_point(built_problem):
    p = built_problem("inseparable_f2")
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    fiber, fiber_point = build_fiber(p.f, x, s, verify_image(p.f, x, s))
    assert fiber.field == s.residue_field
    assert len(quotient_staircase(fiber.gb)) == 2
    assert fiber_point.is_generic


def test_fiber_over_closed_point(built_problem):
    p = built_problem("relative_plane_over_line")
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    fiber, fiber_point = build_fiber(p.f, x, s, verify_image(p.f, x, s))
    assert len(quotient_staircase(fiber_point.point_gb)) == 1
    assert fiber.gb.contains(fiber.ring.parse("y"))


def test_number_field_tower_with_zero_divisors_is_rejected():
    p = problem("base = Q\n[X]\nvars = x, y\n[point.x]\nkind = closed\ntower = x^2 - 2; y^2 - 2\n")
    with pytest.raises(ZeroDivisorWitness) as info:
        resolve_point(p.X, p.x_spec)
    assert info.value.exit_code == 3
    assert "ZeroDivisorWitness" in str(info.value)
    assert (info.value.element * info.value.witness).is_zero()


def test_number_field_tower_is_certified():
    p = problem("base = Q\n[X]\nvars = x, y\n[point.x]\nkind = closed\ntower = x^2 - 2; y^2 - x\n")
    x = resolve_point(p.X, p.x_spec)
    assert x.residue_field.degree == 4
    assert len(quotient_staircase(x.point_gb)) == 4


def test_uncertified_tower_is_unsupported_in_strict_mode(monkeypatch):
    monkeypatch.setattr(
        scheme_model, "tower_field_check", lambda tower, seed: IrreducibilityResult("skipped", reason="no luck")
    )
    p = problem("base = Q\n[X]\nvars = x, y\n[point.x]\nkind = closed\ntower = x^2 - 2; y^2 - x\n")
    with pytest.raises(UnsupportedPoint):
        resolve_point(p.X, p.x_spec)
    assert resolve_point(p.X, p.x_spec, mode=TRUST_POINT).residue_field.degree == 4


CUSP = """
base = Q
[S]
vars = u, v
ideal = v^2 - u^3
[X]
vars = t
[map]
u = t^2; v = t^3
[point.x]
kind = generic
[point.s]
kind = generic
"""


def test_cusp_parametrization_hits_the_generic_point():
    p = problem(CUSP)
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    i_x = verify_image(p.f, x, s)
    t = x.residue_field.variable("t")
    assert i_x(s.residue_field.variable("v") / s.residue_field.variable("u")) == t


def test_constant_map_misses_the_generic_point():
    p = problem(CUSP.replace("u = t^2; v = t^3", "u = 1; v = 1"))
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    with pytest.raises(PointImageMismatch):
        verify_image(p.f, x, s)


def random_function(K, name, rng):
    u = K.variable(name)
    num = K.one()
    for k in range(1, 3):
        num = num + u ** k * rng.randint(0, 2)
    return num / (u + rng.randint(0, 1))


GAUSSIAN_OVER_LINE = """
base = Q
[S]
vars = w
[X]
vars = x
[map]
w = x
[point.x]
kind = closed
tower = x^2 + 1
[point.s]
kind = closed
tower = w^2 + 1
"""


@pytest.mark.parametrize("name", ["inseparable_f2", "separable_f3", "relative_plane_over_line", "gaussian_over_line"])
def test_residue_embedding_is_a_ring_map(name, built_problem):
    p = problem(GAUSSIAN_OVER_LINE) if name == "gaussian_over_line" else built_problem(name)
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    i_x = verify_image(p.f, x, s)
    K = s.residue_field
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        if isinstance(K, FractionField):
            a, b = random_function(K, K.ring.variables[0], rng), random_function(K, K.ring.variables[0], rng)
        else:
            a, b = K.random_element(rng), K.random_element(rng)
        assert i_x(a + b) == i_x(a) + i_x(b)
        assert i_x(a * b) == i_x(a) * i_x(b)
    assert i_x(K.one()) == 1


@pytest.mark.parametrize("name", ["inseparable_f2", "relative_plane_over_line"])
def test_fiber_point_evaluates_like_x(name, built_problem, random_polynomial):
    p = built_problem(name)
    x = resolve_point(p.X, p.x_spec)
    s = resolve_point(p.S, p.s_spec)
    fiber, fiber_point = build_fiber(p.f, x, s, verify_image(p.f, x, s))
    Ks = s.residue_field
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        q = random_polynomial(p.X.ring, rng)
        lifted = q.map_coefficients(fiber.ring, Ks.from_base)
        assert fiber_point.evaluate(lifted) == x.evaluate(q)
