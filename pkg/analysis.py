"""
Analysis module
Handles the end-to-end pipeline for one problem file and renders its report
as JSON, a text table or a full explanation of bases and matrices
"""

import logging
from dataclasses import dataclass

import pandas as pd

import linalg
from config import TOOL_VERSION
from data_manager import input_hash
from problem_file import build, pretty_print
from scheme_model import STRICT, TRUST_POINT, build_fiber, resolve_point, verify_image
from tangent import compare

logger = logging.getLogger(__name__)


@dataclass
class Analysis:
    """Everything computed for one problem, kept for rendering"""

    problem: object
    x: object
    s: object
    fiber: object
    fiber_point: object
    comparison: object
    order: str
    mode: str
    seed: int
    text: str


def run(problem_file, order=None, trust_point=None, seed=None, problem_text=None):
    """Resolve points, verify f(x) = s, build the fiber and compare tangent spaces"""
    order = order or problem_file.order
    if trust_point is None:
        trust_point = problem_file.trust_point
    mode = TRUST_POINT if trust_point else STRICT
    seed = problem_file.seed if seed is None else seed
    text = problem_text if problem_text is not None else pretty_print(problem_file)

    problem = build(problem_file, order)
    logger.info("resolving x (%s) on %s", problem.x_spec.kind, problem.X)
    x = resolve_point(problem.X, problem.x_spec, mode, seed)
    logger.info("resolving s (%s) on %s", problem.s_spec.kind, problem.S)
    s = resolve_point(problem.S, problem.s_spec, mode, seed)
    logger.info("checking f(x) = s")
    i_x = verify_image(problem.f, x, s)
    logger.info("building the fiber over s")
    fiber, fiber_point = build_fiber(problem.f, x, s, i_x)
    logger.info("comparing tangent spaces")
    comparison = compare(problem.f, x, s, i_x, fiber, fiber_point)
    return Analysis(problem, x, s, fiber, fiber_point, comparison, order, mode, seed, text)


def report_document(analysis):
    """The JSON-ready ReportDocument"""
    c = analysis.comparison
    upsilon = c.upsilon
    return {
        "dim_zariski": c.cotangent.dim,
        "dim_grothendieck": c.derivations.dim,
        "dim_zariski_relative": c.relative.dim,
        "dim_fiber_tangent": c.fiber_cotangent.dim,
        "phi": {
            "rank": c.phi.rank,
            "injective": c.phi.injective,
            "surjective_onto_relative": c.phi.surjective,
            "iso": c.phi.iso,
            "matrix": linalg.format_matrix(c.phi.relative_matrix),
        },
        "theta": {
            "rank": c.theta.rank,
            "injective": c.theta.injective,
            "surjective": c.theta.surjective,
            "iso": c.theta.iso,
            "relative_rank": c.theta_relative.rank,
            "matrix": linalg.format_matrix(c.theta.matrix),
        },
        "upsilon": {
            "defined": upsilon is not None,
            "identities_hold": upsilon.identities_hold if upsilon else None,
            "matrix": linalg.format_matrix(upsilon.matrix) if upsilon else None,
        },
        "extension": {
            "algebraic": c.extension.algebraic,
            "separable": c.extension.separable,
            "omega_dim": c.extension.omega_dim,
            "separable_by_gcd": c.extension.separable_by_gcd,
        },
        "sequence_checks": {
            "seq5_ok": c.conormal.seq5_ok,
            "seq6_ok": c.conormal.seq6_ok,
            "lemma1_ok": c.verdict.lemma1_ok,
            "lemma2_ok": c.verdict.lemma2_ok,
            "coker_theta_ok": c.conormal.coker_theta_ok,
            "fact1_ok": c.fact1_ok,
        },
        "theorem": {
            "hypothesis": c.verdict.hypothesis,
            "conclusion": c.verdict.conclusion,
            "consistent": c.verdict.consistent,
            "main_lemma_ok": c.verdict.main_lemma_ok,
        },
        "residue_fields": {
            "x": str(analysis.x.residue_field),
            "s": str(analysis.s.residue_field),
        },
        "provenance": {
            "input_hash": input_hash(analysis.text),
            "seed": analysis.seed,
            "tool_version": TOOL_VERSION,
            "order": analysis.order,
            "mode": analysis.mode,
        },
    }


def analyze(problem_file, order=None, trust_point=None, seed=None, problem_text=None):
    """ReportDocument for a parsed problem"""
    return report_document(run(problem_file, order, trust_point, seed, problem_text))


def _flag(value):
    if value is None:
        return "n/a"
    return "yes" if value else "no"


def dimension_table(report):
    rows = [
        ("T_xX (Zariski)", report["dim_zariski"]),
        ("T^Gro_X/S (Grothendieck)", report["dim_grothendieck"]),
        ("T^Zar_X/S (Zariski relative)", report["dim_zariski_relative"]),
        ("T_x(X_s) (fiber)", report["dim_fiber_tangent"]),
        ("Omega kappa(x)/kappa(s)", report["extension"]["omega_dim"]),
    ]
    return pd.DataFrame(rows, columns=["space", "dim"])


def flag_table(report):
    rows = [
        ("Phi", "rank", report["phi"]["rank"]),
        ("Phi", "injective", _flag(report["phi"]["injective"])),
        ("Phi", "surjective onto T^Zar", _flag(report["phi"]["surjective_onto_relative"])),
        ("Phi", "iso", _flag(report["phi"]["iso"])),
        ("theta", "rank", report["theta"]["rank"]),
        ("theta", "iso", _flag(report["theta"]["iso"])),
        ("Upsilon", "defined", _flag(report["upsilon"]["defined"])),
        ("Upsilon", "identities hold", _flag(report["upsilon"]["identities_hold"])),
        ("extension", "algebraic", _flag(report["extension"]["algebraic"])),
        ("extension", "separable", _flag(report["extension"]["separable"])),
    ]
    rows += [("check", name, _flag(value)) for name, value in report["sequence_checks"].items()]
    rows += [("theorem", name, _flag(value)) for name, value in report["theorem"].items()]
    return pd.DataFrame(rows, columns=["object", "property", "value"])


def render_text(report):
    """Human-readable report: residue fields, dimension and flag tables, Phi matrix"""
    lines = [
        f"kappa(x) = {report['residue_fields']['x']}",
        f"kappa(s) = {report['residue_fields']['s']}",
        "",
        dimension_table(report).to_string(index=False),
        "",
        flag_table(report).to_string(index=False),
        "",
        f"Phi = {report['phi']['matrix']}",
        f"input {report['provenance']['input_hash'][:16]}  seed {report['provenance']['seed']}  "
        f"order {report['provenance']['order']}  mode {report['provenance']['mode']}",
    ]
    return "\n".join(lines)


def _basis_frame(vectors, names, label):
    if not vectors:
        return f"{label}: (zero space)"
    frame = pd.DataFrame(
        [[str(e) for e in v] for v in vectors],
        columns=list(names),
        index=[f"{label}{k}" for k in range(len(vectors))],
    )
    return frame.to_string()


def _matrix(name, rows):
    return f"{name} = {linalg.format_matrix(rows)}"


def render_explain(analysis):
    """Bases of every space and the matrices of Phi, theta, Upsilon, pi and delta"""
    c = analysis.comparison
    names = analysis.problem.X.variables
    upsilon = c.upsilon
    sections = [
        f"X = {analysis.problem.X}",
        f"S = {analysis.problem.S}",
        f"point ideal of x: {analysis.x.point_gb}",
        f"fiber ideal over s: {analysis.fiber.gb}",
        f"kappa(x) = {analysis.x.residue_field}",
        f"kappa(s) = {analysis.s.residue_field}",
        "",
        "cotangent basis M_x/M_x^2: " + (", ".join(str(m) for m in c.cotangent.basis) or "(none)"),
        "fiber cotangent basis: " + (", ".join(str(m) for m in c.fiber_cotangent.basis) or "(none)"),
        "base change cotangent basis: "
        + (", ".join(str(m) for m in c.base_change.cotangent.basis) or "(none)"),
        "",
        _basis_frame(list(c.derivations.basis), names, "D"),
        "",
        _basis_frame(list(c.relative.basis), [f"[{m}]" for m in c.cotangent.basis], "v"),
        "",
        _matrix("j_x classes", c.relative.classes),
        _matrix("Phi (T^Gro -> T_xX)", c.phi.matrix),
        _matrix("Phi (T^Gro -> T^Zar)", c.phi.relative_matrix),
        _matrix("pi", c.pi_matrix),
        _matrix("theta (fiber)", c.theta.matrix),
        _matrix("theta (X)", c.theta_relative.matrix),
        _matrix("Upsilon", upsilon.matrix) if upsilon else "Upsilon undefined: theta is not an isomorphism",
        _matrix("delta", c.conormal.delta_matrix),
        _matrix("Omega Jacobian", c.omega.jacobian),
    ]
    if c.extension.minimal_polynomials:
        sections.append(
            "minimal polynomials over kappa(s): "
            + ", ".join(f"{v}: {mu}" for v, mu in zip(names, c.extension.minimal_polynomials))
        )
    sections += ["", render_text(report_document(analysis))]
    return "\n".join(sections)
