"""
Scheme model module
Affine presentations of X and S, the morphism f, point resolution with residue
fields, the residue embedding i_x and the fiber over s
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from config import DEFAULT_SEED
from errors import (
    IncompatibleContext,
    InvariantViolation,
    MorphismRelationError,
    NotZeroDimensional,
    PointImageMismatch,
    PointNotOnScheme,
    ReducibleTowerStep,
    SemanticError,
    UnsupportedPoint,
    ZeroDivisorWitness,
)
from exact_arith import (
    BaseField,
    FieldTower,
    FractionField,
    irreducibility_check,
    tower_field_check,
)
from groebner import (
    IdealPresentation,
    buchberger,
    elimination_ideal,
    groebner,
    ideal_sum,
    quotient_staircase,
)
from multipoly import GREVLEX, Polynomial, PolyRing, evaluate_terms

logger = logging.getLogger(__name__)

STRICT = "strict"
TRUST_POINT = "trust-point"


@dataclass(frozen=True)
class AffinePresentation:
    """Spec of field[variables]/ideal"""

    field: object
    variables: tuple
    ideal: IdealPresentation

    @property
    def ring(self):
        return self.ideal.ring

    @cached_property
    def gb(self):
        return buchberger(self.ideal)

    def __str__(self):
        return f"Spec {self.ring}/{self.ideal}"


def affine_scheme(field, variables, generators=(), order=GREVLEX):
    ring = PolyRing(tuple(variables), field, order)
    return AffinePresentation(field, tuple(variables), IdealPresentation(ring, tuple(generators)))


def spec_of_field(field, order=GREVLEX):
    """Spec k: no variables, zero ideal"""
    return affine_scheme(field, (), (), order)


@dataclass(frozen=True)
class MorphismPresentation:
    """f: X -> S given by the pullbacks y_j -> g_j(x)"""

    source: AffinePresentation
    target: AffinePresentation
    pullbacks: tuple

    def __post_init__(self):
        if len(self.pullbacks) != len(self.target.variables):
            raise SemanticError(
                f"the map needs one pullback per variable of S ({len(self.target.variables)}), "
                f"got {len(self.pullbacks)}"
            )
        if self.source.field != self.target.field:
            raise IncompatibleContext("X and S must share the base field")
        for g in self.pullbacks:
            if g.ring != self.source.ring:
                raise IncompatibleContext(f"pullback {g} is not a function on X")
        for q in self.target.gb.polynomials:
            pulled = self.pull(q)
            if not self.source.gb.contains(pulled):
                raise MorphismRelationError(
                    f"relation {q} of S pulls back to {pulled}, which is not in the ideal of X"
                )

    def pull(self, q):
        """q(g_1, ..., g_m) as a function on X"""
        if not self.target.variables:
            return self.source.ring.constant(q.constant_coefficient())
        return q.substitute(list(self.pullbacks))


@dataclass(frozen=True)
class PointSpec:
    kind: str
    tower: tuple = ()


@dataclass(frozen=True, eq=False)
class ResolvedPoint:
    """A point with its point ideal, residue field and evaluation map"""

    presentation: AffinePresentation
    spec: PointSpec
    point_gb: object
    residue_field: object
    coordinates: tuple
    coefficient_map: Callable
    direct_fractions: bool = False

    @property
    def is_generic(self):
        return self.spec.kind == "generic"

    @property
    def generators(self):
        """Generators of the maximal ideal of the local ring (none at a generic point)"""
        return () if self.is_generic else self.point_gb.polynomials

    def evaluate(self, p):
        """p(x) in the residue field"""
        if p.ring != self.presentation.ring:
            raise IncompatibleContext(f"{p} is not a function on {self.presentation}")
        if self.direct_fractions:
            return self.residue_field.from_polynomial(p)
        return evaluate_terms(p, list(self.coordinates), self.coefficient_map)

    def gradient(self, p):
        return [self.evaluate(d) for d in p.gradient()]

    def jacobian(self, polynomials):
        return [self.gradient(p) for p in polynomials]


@dataclass(frozen=True, eq=False)
class EmbeddingMap:
    """i_x: kappa(s) -> kappa(x)"""

    source: object
    target: object
    generator_images: tuple
    apply: Callable

    def __call__(self, element):
        return self.apply(element)


def resolve_point(X, spec, mode=STRICT, seed=DEFAULT_SEED):
    """Resolve a point spec on X into a ResolvedPoint"""
    if spec.kind == "generic":
        return _resolve_generic(X, spec)
    if spec.kind == "closed":
        return _resolve_closed(X, spec, mode, seed)
    raise UnsupportedPoint(f"unsupported point kind '{spec.kind}'")


def _resolve_closed(X, spec, mode, seed):
    n = len(X.variables)
    steps = spec.tower
    if not isinstance(X.field, BaseField):
        raise UnsupportedPoint("closed point towers are only supported over Q or F_p")
    if len(steps) > n:
        raise SemanticError(f"the point tower has {len(steps)} steps for {n} variables")
    if len(steps) < n:
        raise NotZeroDimensional(
            f"the point tower has {len(steps)} steps for {n} variables, so its ideal is not maximal"
        )
    try:
        tower = FieldTower.from_polynomials(X.field, X.variables, steps)
    except ValueError as exc:
        raise SemanticError(f"invalid point tower: {exc}") from None

    unchecked = []
    for i, step in enumerate(steps):
        result = irreducibility_check(
            tower.step_polynomial(i), trust_point=(mode == TRUST_POINT), seed=seed
        )
        if result.status == "reducible":
            raise ReducibleTowerStep(str(step), result.factor, result.cofactor)
        if result.status == "skipped":
            unchecked.append((step, result.reason))
    if mode == TRUST_POINT:
        for step, reason in unchecked:
            logger.warning("irreducibility of tower step '%s' not checked: %s", step, reason)
    elif unchecked:
        _certify_tower(tower, steps, seed)

    point = ResolvedPoint(
        X, spec, None, tower, tuple(tower.generators()), tower.from_base
    )
    for q in X.gb.polynomials:
        value = point.evaluate(q)
        if not value.is_zero():
            raise PointNotOnScheme(f"{q} takes the value {value} at the point, not 0")

    point_gb = buchberger(ideal_sum(X.ideal, IdealPresentation(X.ring, tuple(steps))))
    if len(quotient_staircase(point_gb)) != tower.degree:
        raise InvariantViolation(
            f"point ideal {point_gb} does not have dimension {tower.degree} over {X.field}"
        )
    logger.debug("closed point %s with residue field %s", point_gb, tower)
    return ResolvedPoint(X, spec, point_gb, tower, point.coordinates, tower.from_base)


def _certify_tower(tower, steps, seed):
    """Strict-mode field test for towers the step-by-step check could not decide"""
    result = tower_field_check(tower, seed)
    if result.status == "reducible":
        raise ZeroDivisorWitness(
            result.factor, result.cofactor, context=f"the point tower {'; '.join(map(str, steps))} is not a field"
        )
    if result.status == "skipped":
        raise UnsupportedPoint(
            f"cannot certify the point tower {'; '.join(map(str, steps))}: {result.reason} "
            "(trust_point = true skips the check)"
        )
    logger.debug("tower %s certified through a primitive element", tower)


def _resolve_generic(X, spec):
    if X.gb.is_unit():
        raise PointNotOnScheme(f"{X} is empty")
    if not isinstance(X.field, BaseField):
        raise UnsupportedPoint("generic points are only supported over Q or F_p")
    K = FractionField(X.gb)
    coordinates = tuple(K.variable(v) for v in X.variables)
    return ResolvedPoint(X, spec, X.gb, K, coordinates, K.from_base, direct_fractions=True)


def _embed_in_product(p, ring, offset):
    pad = (0,) * (ring.nvars - offset - p.ring.nvars)
    return Polynomial(ring, {(0,) * offset + m + pad: c for m, c in p.terms.items()})


def pullback_kernel(f, x):
    """Groebner basis in S's ring of the kernel of O_S -> kappa(x)"""
    X, S = f.source, f.target
    names = X.variables + tuple(f"{v}_S" for v in S.variables)
    joint = PolyRing(names, X.field, X.ring.order)
    n = len(X.variables)
    generators = [_embed_in_product(q, joint, 0) for q in x.point_gb.polynomials]
    for j, g in enumerate(f.pullbacks):
        generators.append(joint.variable(n + j) - _embed_in_product(g, joint, 0))
    kernel = elimination_ideal(IdealPresentation(joint, tuple(generators)), X.variables)
    moved = tuple(Polynomial(S.ring, g.terms) for g in kernel.polynomials)
    return buchberger(IdealPresentation(S.ring, moved))


def verify_image(f, x, s):
    """Check f(x) = s and build i_x"""
    if x.presentation is not f.source and x.presentation != f.source:
        raise IncompatibleContext("x is not a point of the source of f")
    if s.presentation is not f.target and s.presentation != f.target:
        raise IncompatibleContext("s is not a point of the target of f")
    S = f.target
    images = [x.evaluate(g) for g in f.pullbacks]

    def at_images(q):
        return evaluate_terms(q, images, x.coefficient_map)

    if not s.is_generic:
        for q in s.point_gb.polynomials:
            value = at_images(q)
            if not value.is_zero():
                raise PointImageMismatch(
                    f"f(x) is not s: {q} pulls back to {f.pull(q)}, which is {value} at x"
                )
        tower = s.residue_field

        def apply(e):
            return at_images(Polynomial(S.ring, {m: tower.base.element(c) for m, c in e.value.items()}))

        for i in range(len(tower.names)):
            relation = Polynomial(S.ring, {m: tower.base.element(c) for m, c in tower.steps[i]})
            if not at_images(relation).is_zero():
                raise InvariantViolation(f"i_x does not respect the relation {relation}")
    else:
        kernel = pullback_kernel(f, x)
        if kernel.polynomials != s.point_gb.polynomials:
            raise PointImageMismatch(
                f"f(x) is not the generic point of S: the kernel of O_S -> kappa(x) is {kernel}, "
                f"not {s.point_gb}"
            )

        def apply(e):
            num, den = e.value
            return at_images(num) / at_images(den)

    return EmbeddingMap(s.residue_field, x.residue_field, tuple(images), apply)


def build_fiber(f, x, s, i_x):
    """The fiber X_s over kappa(s) and x re-resolved on it"""
    X = f.source
    if x.is_generic and x.point_gb != X.gb:
        raise UnsupportedPoint("only the generic point of an integral X is supported")
    Ks = s.residue_field
    ring = PolyRing(X.variables, Ks, X.ring.order)

    def lift(p):
        return p.map_coefficients(ring, Ks.from_base)

    relations = [lift(g) - ring.constant(s_j) for g, s_j in zip(f.pullbacks, s.coordinates)]
    fiber = AffinePresentation(
        Ks, X.variables, IdealPresentation(ring, tuple(lift(q) for q in X.gb.polynomials) + tuple(relations))
    )
    if x.is_generic:
        point_gb = fiber.gb
    else:
        point_gb = groebner(ring, [lift(q) for q in x.point_gb.polynomials] + relations)
    point = ResolvedPoint(fiber, x.spec, point_gb, x.residue_field, x.coordinates, i_x)
    for q in point_gb.polynomials:
        if not point.evaluate(q).is_zero():
            raise InvariantViolation(f"fiber point generator {q} does not vanish at x")
    logger.debug("fiber ideal %s, fiber point ideal %s", fiber.gb, point_gb)
    return fiber, point
