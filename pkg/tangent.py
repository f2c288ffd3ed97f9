"""
Tangent module
Zariski tangent spaces, the Grothendieck and Zariski relative tangent spaces,
the fiber tangent, the comparison maps Phi, theta and Upsilon, differential
dimensions, extension classification and the consistency verdict
"""

import logging
from dataclasses import dataclass, field
from typing import Callable

import linalg
from errors import (
    InvariantViolation,
    NotZeroDimensional,
    ThetaNotInvertible,
    UnsupportedExtension,
)
from exact_arith import minimal_polynomial, separable_polynomial
from groebner import (
    IdealPresentation,
    QuotientAlgebra,
    buchberger,
    groebner,
    ideal_product,
    ideal_sum,
    krull_dimension,
    quotient_staircase,
    staircase_coordinates,
)
from multipoly import PolyRing
from scheme_model import AffinePresentation, PointSpec, ResolvedPoint

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CotangentSpace:
    """M/M^2 at a point with a kappa(x)-basis of coset representatives"""

    point: ResolvedPoint
    basis: tuple
    base_dim: int = 0
    quotient_gb: object = None
    staircase_index: dict = field(default_factory=dict)
    unit_monomials: tuple = ()
    spanning_rows: list = field(default_factory=list)
    unit_values: tuple = ()

    @property
    def dim(self):
        return len(self.basis)

    @property
    def residue_field(self):
        return self.point.residue_field

    def coordinates(self, m):
        """kappa(x)-coordinates of the class of m (a polynomial in the point ideal)"""
        if not self.basis:
            return []
        coefficient_field = self.point.presentation.field
        vector = staircase_coordinates(m, self.quotient_gb, self.staircase_index)
        ncols = len(self.unit_monomials) * self.dim
        solution = linalg.solve(self.spanning_rows, vector, ncols, coefficient_field)
        if solution is None:
            raise InvariantViolation(f"{m} does not lie in the maximal ideal of the point")
        d = len(self.unit_monomials)
        embed = self.point.coefficient_map
        out = []
        for k in range(self.dim):
            c = self.residue_field.zero()
            for j in range(d):
                lam = solution[k * d + j]
                if not lam.is_zero():
                    c = c + embed(lam) * self.unit_values[j]
            out.append(c)
        return out


def cotangent_space(x):
    """M_x/M_x^2 with a kappa(x)-basis chosen greedily from the point-ideal generators"""
    if x.is_generic:
        return CotangentSpace(x, ())
    ring = x.presentation.ring
    F = ring.field
    G1 = x.point_gb
    S1 = quotient_staircase(G1)
    d = len(S1)
    m_hat = IdealPresentation(ring, G1.polynomials)
    G2 = buchberger(ideal_sum(ideal_product(m_hat, m_hat), x.presentation.ideal))
    S2 = quotient_staircase(G2)
    index = {m: k for k, m in enumerate(S2)}
    N = len(S2) - d
    if N % d:
        raise InvariantViolation(f"dimension {N} of M/(M^2 + I) is not a multiple of {d}")

    chosen, vectors, current = [], [], 0
    for g in G1.polynomials:
        if current == N:
            break
        block = [staircase_coordinates(ring.monomial(b) * g, G2, index) for b in S1]
        new_rank = linalg.rank(vectors + block, len(S2), F)
        gained = new_rank - current
        if gained == d:
            chosen.append(g)
            vectors.extend(block)
            current = new_rank
        elif gained:
            raise InvariantViolation(f"the class of {g} spans {gained} dimensions, not 0 or {d}")
    if current != N:
        raise InvariantViolation(f"point generators span {current} of {N} cotangent dimensions")

    unit_values = tuple(x.evaluate(ring.monomial(b)) for b in S1)
    logger.debug("cotangent basis at %s: %s", G1, ", ".join(str(g) for g in chosen))
    return CotangentSpace(
        x,
        tuple(chosen),
        N,
        G2,
        index,
        tuple(S1),
        linalg.transpose(vectors, len(S2)) if vectors else [],
        unit_values,
    )


@dataclass(frozen=True, eq=False)
class DerivationSpace:
    """Derivations as vectors d with D(x_i) = d_i, the kernel of the constraint rows"""

    point: ResolvedPoint
    constraints: list
    basis: tuple
    nvars: int

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, d):
        return linalg.is_zero_vector(linalg.mat_vec(self.constraints, d, self.point.residue_field))

    def coordinates(self, d):
        K = self.point.residue_field
        rows = linalg.transpose(list(self.basis), self.nvars) if self.basis else [[] for _ in range(self.nvars)]
        solution = linalg.solve(rows, d, self.dim, K)
        if solution is None:
            raise InvariantViolation(f"{linalg.format_matrix([d])} is not a derivation at the point")
        return solution


def derivation_space(point, polynomials):
    """Kernel of the Jacobian of the given polynomials at the point"""
    n = point.presentation.ring.nvars
    rows = point.jacobian(polynomials)
    basis = tuple(linalg.kernel(rows, n, point.residue_field))
    return DerivationSpace(point, rows, basis, n)


def grothendieck_tangent(f, x, s=None):
    """Der over O_{S,s} of O_{X,x} into kappa(x): X relations plus pulled-back coordinates"""
    return derivation_space(x, list(f.source.gb.polynomials) + list(f.pullbacks))


@dataclass(frozen=True, eq=False)
class RelativeTangent:
    """Annihilator in T_xX of the classes j_x([q]) of pulled-back M_s generators"""

    cotangent: CotangentSpace
    pulled_generators: tuple
    classes: list
    rank: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    @property
    def tilde_matrix(self):
        """T~_x f: each row evaluates a tangent vector on one j_x class"""
        return self.classes


def zariski_relative_tangent(f, x, s, C):
    K = x.residue_field
    pulled = () if s.is_generic else tuple(f.pull(q) for q in s.point_gb.polynomials)
    classes = [C.coordinates(q) for q in pulled] if C.dim else []
    rank = linalg.rank(classes, C.dim, K)
    basis = tuple(linalg.kernel(classes, C.dim, K))
    if len(basis) != C.dim - rank:
        raise InvariantViolation("annihilator dimension differs from dim C - rank")
    return RelativeTangent(C, pulled, classes, rank, basis)


def fiber_tangent(fiber_point):
    return cotangent_space(fiber_point)


@dataclass(frozen=True)
class LinearMapReport:
    """Matrix of a kappa(x)-linear map with rank and the usual flags"""

    matrix: list
    rank: int
    source_dim: int
    target_dim: int
    relative_matrix: list = None

    @property
    def injective(self):
        return self.rank == self.source_dim

    @property
    def surjective(self):
        return self.rank == self.target_dim

    @property
    def iso(self):
        return self.injective and self.surjective


def phi_map(D, C, R):
    """Phi: T^Gro -> T^Zar, entry (k, D) = gradient of m_k at x dotted with d"""
    K = C.residue_field
    grads = [C.point.gradient(m) for m in C.basis]
    matrix = [[linalg.dot(g, d, K) for d in D.basis] for g in grads]
    columns = linalg.transpose(matrix, D.dim) if matrix else [[] for _ in range(D.dim)]
    for j, column in enumerate(columns):
        for cls in R.classes:
            if not linalg.dot(cls, column, K).is_zero():
                raise InvariantViolation(f"Phi of derivation {j} does not kill the j_x classes")
    rank = linalg.rank(matrix, D.dim, K)
    zar_rows = linalg.transpose(list(R.basis), C.dim) if R.basis else [[] for _ in range(C.dim)]
    solutions = []
    for column in columns:
        solution = linalg.solve(zar_rows, column, R.dim, K)
        if solution is None:
            raise InvariantViolation("Phi column outside the relative tangent space")
        solutions.append(solution)
    relative = linalg.transpose(solutions, R.dim) if solutions else [[] for _ in range(R.dim)]
    return LinearMapReport(matrix, rank, D.dim, R.dim, relative)


@dataclass(frozen=True, eq=False)
class BaseChangeAlgebra:
    """kappa(x) (x) fiber algebra over kappa(x) with its rational point and cotangent space"""

    presentation: AffinePresentation
    point: ResolvedPoint
    cotangent: CotangentSpace
    lift: Callable

    @property
    def ring(self):
        return self.presentation.ring

    @property
    def dim(self):
        return self.cotangent.dim


def base_change(x, s, i_x, fiber):
    """Base change of the fiber algebra to kappa(x) along i_x, at the tautological point"""
    if x.is_generic and x.point_gb.polynomials != x.presentation.gb.polynomials:
        raise UnsupportedExtension("kappa(x) is transcendental over kappa(s) while M_x is nonzero")
    K = x.residue_field
    X_vars = fiber.variables
    ring = PolyRing(X_vars, K, fiber.ring.order)

    def lift(p):
        return p.map_coefficients(ring, i_x)

    relations = tuple(lift(q) for q in fiber.gb.polynomials)
    a = x.coordinates
    linear = [ring.variable(i) - ring.constant(a[i]) for i in range(len(X_vars))]
    presentation = AffinePresentation(K, X_vars, IdealPresentation(ring, relations))
    point_gb = groebner(ring, list(relations) + linear)
    point = ResolvedPoint(presentation, PointSpec("closed"), point_gb, K, a, lambda c: c)
    for q in relations:
        if not point.evaluate(q).is_zero():
            raise InvariantViolation(f"base-changed relation {q} does not vanish at x")
    return BaseChangeAlgebra(presentation, point, cotangent_space(point), lift)


def theta_map(C, B):
    """theta: M/M^2 -> M~/M~^2, x_i -> x_i, in B's cotangent coordinates"""
    embed = C.point.coefficient_map
    columns = [B.cotangent.coordinates(m.map_coefficients(B.ring, embed)) for m in C.basis]
    matrix = linalg.transpose(columns, B.dim) if columns else [[] for _ in range(B.dim)]
    rank = linalg.rank(columns, B.dim, B.point.residue_field)
    return LinearMapReport(matrix, rank, C.dim, B.dim)


@dataclass(frozen=True)
class UpsilonMap:
    vectors: list
    matrix: list
    phi_upsilon: list
    upsilon_phi: list
    identities_hold: bool


def upsilon_map(B, theta_fiber, theta_relative, C, R, D, phi):
    """Upsilon: T^Zar -> T^Gro, d_i = v(theta^-1[x_i - x_i(x)]), with both composition checks"""
    if not theta_fiber.iso:
        raise ThetaNotInvertible("theta is not an isomorphism, Upsilon is undefined")
    K = B.point.residue_field
    a = B.point.coordinates
    targets = [
        B.cotangent.coordinates(B.ring.variable(i) - B.ring.constant(a[i]))
        for i in range(B.ring.nvars)
    ]
    preimages = []
    for i, t in enumerate(targets):
        c = linalg.solve(theta_relative.matrix, t, C.dim, K)
        if c is None:
            raise InvariantViolation(f"[{B.ring.variables[i]} - x(x)] is outside the image of theta")
        preimages.append(c)

    vectors = []
    for v in R.basis:
        d = [linalg.dot(v, c, K) for c in preimages]
        if not D.contains(d):
            raise InvariantViolation("Upsilon(v) violates a Leibniz constraint")
        vectors.append(d)

    coords = [D.coordinates(d) for d in vectors]
    matrix = linalg.transpose(coords, D.dim) if coords else [[] for _ in range(D.dim)]
    phi_upsilon = linalg.mat_mul(phi.relative_matrix, matrix, D.dim, R.dim, K)
    upsilon_phi = linalg.mat_mul(matrix, phi.relative_matrix, R.dim, D.dim, K)
    if not (linalg.is_identity(phi_upsilon, R.dim) and linalg.is_identity(upsilon_phi, D.dim)):
        raise InvariantViolation("Phi and Upsilon are not mutually inverse")
    return UpsilonMap(vectors, matrix, phi_upsilon, upsilon_phi, True)


@dataclass(frozen=True)
class OmegaPresentation:
    jacobian: list
    rank: int
    dim: int


def omega_residue(x, fiber_point, D):
    """Omega of kappa(x) over kappa(s): n minus the Jacobian rank of the fiber point ideal"""
    n = fiber_point.presentation.ring.nvars
    jacobian = fiber_point.jacobian(fiber_point.point_gb.polynomials)
    rank = linalg.rank(jacobian, n, x.residue_field)
    omega = OmegaPresentation(jacobian, rank, n - rank)
    if x.is_generic and omega.dim != D.dim:
        raise InvariantViolation(
            f"at a generic point Omega has dimension {omega.dim} but T^Gro has {D.dim}"
        )
    return omega


@dataclass(frozen=True)
class ExtensionClass:
    algebraic: bool
    separable: object
    omega_dim: int
    transcendence_x: int
    transcendence_s: int
    separable_by_gcd: object = None
    minimal_polynomials: tuple = ()


def classify_extension(x, s, fiber_point, omega):
    """Algebraic via transcendence degrees; separable via Omega with a gcd cross-check"""
    trdeg_x = 0 if not x.is_generic else krull_dimension(x.point_gb)
    trdeg_s = 0 if not s.is_generic else krull_dimension(s.point_gb)
    algebraic = trdeg_x == trdeg_s
    if not algebraic:
        separable = None
    elif x.residue_field.characteristic == 0:
        separable = True
    else:
        separable = omega.dim == 0

    by_gcd, minimal = None, ()
    if algebraic:
        try:
            algebra = QuotientAlgebra(fiber_point.point_gb)
        except NotZeroDimensional:
            algebra = None
        if algebra is not None:
            ring = fiber_point.point_gb.ring
            minimal = tuple(minimal_polynomial(ring.variable(i), algebra) for i in range(ring.nvars))
            by_gcd = all(separable_polynomial(mu) for mu in minimal)
            if by_gcd != separable:
                raise InvariantViolation(
                    f"separability tests disagree: Omega says {separable}, gcd says {by_gcd}"
                )
    return ExtensionClass(algebraic, separable, omega.dim, trdeg_x, trdeg_s, by_gcd, minimal)


@dataclass(frozen=True)
class ConormalReport:
    delta_matrix: list
    delta_rank: int
    omega_fiber_dim: int
    omega_residue_dim: int
    omega_base_change_dim: int
    seq5_ok: bool
    seq6_ok: bool
    coker_theta_ok: bool


def conormal_sequence_check(fiber, fiber_point, fiber_cotangent, omega, B, theta_fiber):
    """Rank identities of the two second fundamental sequences"""
    n = fiber.ring.nvars
    K = fiber_point.residue_field
    jacobian = fiber_point.jacobian(fiber.gb.polynomials)
    jac_rank = linalg.rank(jacobian, n, K)
    omega_fiber = n - jac_rank
    gradients = [fiber_point.gradient(m) for m in fiber_cotangent.basis]
    delta_rank = linalg.rank(gradients + jacobian, n, K) - jac_rank
    base_jacobian = B.point.jacobian(B.presentation.gb.polynomials)
    omega_base = n - linalg.rank(base_jacobian, n, K)

    seq5 = delta_rank == omega_fiber - omega.dim
    seq6 = B.dim == omega_base
    coker = B.dim - theta_fiber.rank == omega.dim
    if not seq5:
        raise InvariantViolation(
            f"rank delta = {delta_rank} but dim Omega_fiber - dim Omega_residue = {omega_fiber - omega.dim}"
        )
    if not seq6:
        raise InvariantViolation(f"dim M~/M~^2 = {B.dim} but dim Omega (x) kappa = {omega_base}")
    if not coker:
        raise InvariantViolation(f"coker theta has dimension {B.dim - theta_fiber.rank}, Omega has {omega.dim}")
    return ConormalReport(gradients, delta_rank, omega_fiber, omega.dim, omega_base, seq5, seq6, coker)


def fiber_map_check(C, R, fiber_cotangent):
    """pi is onto the fiber cotangent space and kills exactly the j_x classes"""
    K = C.residue_field
    fiber_ring = fiber_cotangent.point.presentation.ring
    embed = fiber_ring.field.from_base
    columns = [fiber_cotangent.coordinates(m.map_coefficients(fiber_ring, embed)) for m in C.basis]
    matrix = linalg.transpose(columns, fiber_cotangent.dim) if columns else [
        [] for _ in range(fiber_cotangent.dim)
    ]
    rank = linalg.rank(columns, fiber_cotangent.dim, K)
    for cls in R.classes:
        if not linalg.is_zero_vector(linalg.mat_vec(matrix, cls, K)):
            raise InvariantViolation("pi does not kill a j_x class")
    if rank != fiber_cotangent.dim or R.dim != fiber_cotangent.dim:
        raise InvariantViolation(
            f"dim T^Zar = {R.dim}, fiber tangent = {fiber_cotangent.dim}, rank pi = {rank}"
        )
    return matrix, rank


def grothendieck_base_change_check(D, fiber, fiber_point):
    """T^Gro of X/S and of the fiber over kappa(s) coincide coordinatewise"""
    fiber_D = derivation_space(fiber_point, fiber.gb.polynomials)
    K = fiber_point.residue_field
    if fiber_D.dim != D.dim or not linalg.same_span(list(fiber_D.basis), list(D.basis), D.nvars, K):
        raise InvariantViolation(
            f"relative T^Gro (dim {D.dim}) and fiber T^Gro (dim {fiber_D.dim}) differ"
        )
    return fiber_D


@dataclass(frozen=True)
class Verdict:
    hypothesis: bool
    conclusion: bool
    consistent: bool
    main_lemma_ok: bool
    lemma1_ok: bool
    lemma2_ok: bool
    theta_injective_ok: bool
    theta_surjective_ok: bool


def theorem_check(extension, phi, theta_fiber, R, fiber_cotangent, lemma2_ok):
    """The implications the comparison theorem and its lemmas guarantee"""
    hypothesis = bool(extension.algebraic and extension.separable)
    conclusion = phi.iso
    verdict = Verdict(
        hypothesis=hypothesis,
        conclusion=conclusion,
        consistent=(not hypothesis) or conclusion,
        main_lemma_ok=(not theta_fiber.iso) or phi.iso,
        lemma1_ok=R.dim == fiber_cotangent.dim,
        lemma2_ok=lemma2_ok,
        theta_injective_ok=(not hypothesis) or theta_fiber.injective,
        theta_surjective_ok=extension.omega_dim != 0 or theta_fiber.surjective,
    )
    failed = [name for name, value in vars(verdict).items() if name not in ("hypothesis", "conclusion") and not value]
    if failed:
        raise InvariantViolation(f"violated: {', '.join(failed)}")
    return verdict


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    """Every space, map and check computed for one (f, x, s)"""

    cotangent: CotangentSpace
    derivations: DerivationSpace
    relative: RelativeTangent
    fiber_cotangent: CotangentSpace
    fiber_derivations: DerivationSpace
    pi_matrix: list
    phi: LinearMapReport
    base_change: BaseChangeAlgebra
    theta: LinearMapReport
    theta_relative: LinearMapReport
    upsilon: object
    omega: OmegaPresentation
    extension: ExtensionClass
    conormal: ConormalReport
    verdict: Verdict
    fact1_ok: bool


def compare(f, x, s, i_x, fiber, fiber_point):
    """Run every tangent computation at x over s and check the guaranteed identities"""
    C = cotangent_space(x)
    D = grothendieck_tangent(f, x, s)
    R = zariski_relative_tangent(f, x, s, C)
    logger.info("dim T_xX = %d, dim T^Gro = %d, dim T^Zar = %d", C.dim, D.dim, R.dim)
    fiber_C = fiber_tangent(fiber_point)
    pi_matrix, _ = fiber_map_check(C, R, fiber_C)
    fiber_D = grothendieck_base_change_check(D, fiber, fiber_point)
    phi = phi_map(D, C, R)

    B = base_change(x, s, i_x, fiber)
    theta = theta_map(fiber_C, B)
    theta_relative = theta_map(C, B)
    omega = omega_residue(x, fiber_point, D)
    extension = classify_extension(x, s, fiber_point, omega)
    conormal = conormal_sequence_check(fiber, fiber_point, fiber_C, omega, B, theta)
    if D.dim != conormal.omega_fiber_dim:
        raise InvariantViolation(
            f"dim T^Gro = {D.dim} but Omega of the fiber has dimension {conormal.omega_fiber_dim}"
        )
    try:
        upsilon = upsilon_map(B, theta, theta_relative, C, R, D, phi)
    except ThetaNotInvertible as exc:
        logger.info("%s", exc)
        upsilon = None
    verdict = theorem_check(extension, phi, theta, R, fiber_C, lemma2_ok=True)
    return ComparisonReport(
        C, D, R, fiber_C, fiber_D, pi_matrix, phi, B, theta, theta_relative,
        upsilon, omega, extension, conormal, verdict, True,
    )
