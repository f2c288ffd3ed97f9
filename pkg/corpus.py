"""
Corpus module
Handles the bundled reference cases and the seeded random property suite
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import pandas as pd

from analysis import analyze
from config import (
    CLOSED_POINT_CATALOGUE,
    DEFAULT_SEED,
    REFERENCE_CASES,
    RANDOM_COEFFICIENT_RANGE,
    RANDOM_CORPUS_COUNT,
    RANDOM_FIELDS,
    RANDOM_CURVE_EXPONENTS,
    RANDOM_CURVE_SHARE,
    RANDOM_GENERIC_SHARE,
    RANDOM_MAX_DEGREE,
    RANDOM_MAX_GENERATORS,
    RANDOM_MAX_VARIABLES,
    RANDOM_NEGATIVE_SHARE,
    RANDOM_TOWER_SHARE,
    RANDOM_VARIABLES,
)
from data_manager import load_problem_text, reference_case_path
from errors import TangentSpaceError
from problem_file import parse

logger = logging.getLogger(__name__)

# Report fields every reference case must show
REFERENCE_EXPECTATIONS = {
    "counterexample_generic_line": {
        "dim_zariski": 0,
        "dim_grothendieck": 1,
        "dim_zariski_relative": 0,
        "dim_fiber_tangent": 0,
        "phi.iso": False,
        "theta.iso": False,
        "upsilon.defined": False,
        "extension.algebraic": False,
        "extension.omega_dim": 1,
        "theorem.hypothesis": False,
        "theorem.consistent": True,
    },
    "gaussian_point_on_line": {
        "dim_zariski": 1,
        "dim_grothendieck": 1,
        "dim_zariski_relative": 1,
        "dim_fiber_tangent": 1,
        "phi.iso": True,
        "theta.iso": True,
        "upsilon.defined": True,
        "upsilon.identities_hold": True,
        "extension.algebraic": True,
        "extension.separable": True,
        "theorem.hypothesis": True,
        "theorem.conclusion": True,
    },
    "node_origin": {
        "dim_zariski": 2,
        "dim_grothendieck": 2,
        "dim_zariski_relative": 2,
        "dim_fiber_tangent": 2,
        "phi.iso": True,
        "phi.matrix": "[1, 0; 0, 1]",
        "extension.omega_dim": 0,
        "sequence_checks.seq5_ok": True,
    },
    "relative_plane_over_line": {
        "dim_zariski": 2,
        "dim_grothendieck": 1,
        "dim_zariski_relative": 1,
        "dim_fiber_tangent": 1,
        "phi.iso": True,
        "upsilon.defined": True,
        "sequence_checks.lemma1_ok": True,
        "sequence_checks.lemma2_ok": True,
    },
    "inseparable_f2": {
        "dim_grothendieck": 1,
        "dim_zariski_relative": 0,
        "phi.injective": False,
        "extension.algebraic": True,
        "extension.separable": False,
        "extension.omega_dim": 1,
        "theorem.hypothesis": False,
        "theorem.consistent": True,
    },
    "separable_f3": {
        "dim_grothendieck": 0,
        "dim_zariski_relative": 0,
        "phi.iso": True,
        "theta.iso": True,
        "extension.algebraic": True,
        "extension.separable": True,
        "theorem.hypothesis": True,
        "theorem.consistent": True,
    },
    "trivial_point": {
        "dim_zariski": 0,
        "dim_grothendieck": 0,
        "dim_zariski_relative": 0,
        "dim_fiber_tangent": 0,
        "phi.iso": True,
        "theta.iso": True,
        "upsilon.defined": True,
    },
}

# Checks every successful report must pass
INVARIANT_FIELDS = [
    "sequence_checks.seq5_ok",
    "sequence_checks.seq6_ok",
    "sequence_checks.lemma1_ok",
    "sequence_checks.lemma2_ok",
    "sequence_checks.coker_theta_ok",
    "sequence_checks.fact1_ok",
    "theorem.consistent",
    "theorem.main_lemma_ok",
]


@dataclass(frozen=True)
class Instance:
    id: str
    kind: str
    field: str
    text: str
    expect: str = None  # error class name for instances that must be rejected


def lookup(report, path):
    value = report
    for part in path.split("."):
        value = value[part]
    return value


def check_report(report, expectations=None):
    """Names of failed checks: invariants always, expected values when given"""
    failed = [name for name in INVARIANT_FIELDS if lookup(report, name) is not True]
    if report["theorem"]["hypothesis"] and not report["phi"]["iso"]:
        failed.append("phi.iso under hypothesis")
    if report["theta"]["iso"] and report["upsilon"]["identities_hold"] is not True:
        failed.append("upsilon.identities_hold")
    for path, expected in (expectations or {}).items():
        actual = lookup(report, path)
        if actual != expected:
            failed.append(f"{path}={actual!r} (expected {expected!r})")
    return failed


def run_instance(instance, expectations=None, seed=DEFAULT_SEED):
    """One summary row; analysis errors become failures"""
    row = {
        "id": instance.id,
        "kind": instance.kind,
        "field": instance.field,
        "zar": None,
        "gro": None,
        "zar_rel": None,
        "fiber": None,
        "phi_iso": None,
        "status": "pass",
        "detail": "",
    }
    try:
        report = analyze(parse(instance.text), seed=seed, problem_text=instance.text)
    except TangentSpaceError as exc:
        name = type(exc).__name__
        if name == instance.expect:
            row.update(detail=f"rejected: {name}")
        else:
            row.update(status="fail", detail=f"{name}: {exc}")
        return row
    if instance.expect:
        row.update(status="fail", detail=f"expected {instance.expect}, got a report")
        return row
    row.update(
        zar=report["dim_zariski"],
        gro=report["dim_grothendieck"],
        zar_rel=report["dim_zariski_relative"],
        fiber=report["dim_fiber_tangent"],
        phi_iso=report["phi"]["iso"],
    )
    failed = check_report(report, expectations)
    if failed:
        row.update(status="fail", detail="; ".join(failed))
    return row


def _reference_job(name):
    text = load_problem_text(reference_case_path(name))
    instance = Instance(name, "paper", parse(text).base, text)
    return run_instance(instance, REFERENCE_EXPECTATIONS[name])


def _random_job(args):
    instance, seed = args
    return run_instance(instance, seed=seed)


# --- random instance generation ---

def _field_header(name):
    return "base = Q" if name == "Q" else f"base = Fp {name[1:]}"


def _coefficient(rng, field_name):
    c = rng.randint(*RANDOM_COEFFICIENT_RANGE)
    if field_name != "Q":
        c %= int(field_name[1:])
    return c


def _signed_sum(terms):
    """Text of a sum of (coefficient, monomial text) pairs; zero coefficients dropped"""
    text = ""
    for c, monomial in terms:
        if not c:
            continue
        if monomial:
            body = monomial if abs(c) == 1 else f"{abs(c)}*{monomial}"
        else:
            body = str(abs(c))
        if not text:
            text = ("-" if c < 0 else "") + body
        else:
            text += (" - " if c < 0 else " + ") + body
    return text


def _linear_form(rng, field_name, variables):
    """Random polynomial of degree at most 1, as text"""
    terms = [(_coefficient(rng, field_name), "")]
    terms += [(_coefficient(rng, field_name), v) for v in variables]
    return _signed_sum(terms)


def _combination(rng, field_name, variables, steps):
    """Sum of (degree <= 1 multiplier) * (tower step); empty text when zero"""
    parts = []
    for step in steps:
        multiplier = _linear_form(rng, field_name, variables)
        if multiplier:
            parts.append(f"({multiplier})*({step})")
    return " + ".join(parts)


def _closed_instance(rng, field_name, index):
    n = rng.randint(1, RANDOM_MAX_VARIABLES)
    variables = RANDOM_VARIABLES[:n]
    tower = rng.choice(CLOSED_POINT_CATALOGUE[field_name][n])
    generators = []
    for _ in range(rng.randint(0, RANDOM_MAX_GENERATORS)):
        g = _combination(rng, field_name, variables, tower)
        if g:
            generators.append(g)
    lines = [_field_header(field_name), ""]
    m = rng.randint(0, min(2, n))
    s_vars = [f"w{j + 1}" for j in range(m)]
    if m:
        lines += ["[S]", f"vars = {', '.join(s_vars)}", ""]
    lines += ["[X]", f"vars = {', '.join(variables)}"]
    if generators:
        lines.append(f"ideal = {'; '.join(generators)}")
    lines.append("")
    if m:
        lines.append("[map]")
        constants = []
        for w in s_vars:
            c = _coefficient(rng, field_name)
            constants.append(c)
            shift = _combination(rng, field_name, variables, tower)
            lines.append(f"{w} = {c}" + (f" + {shift}" if shift else ""))
        lines.append("")
    lines += ["[point.x]", "kind = closed", f"tower = {'; '.join(tower)}", ""]
    if m:
        steps = [_signed_sum([(1, w), (-c, "")]) for w, c in zip(s_vars, constants)]
        lines += ["[point.s]", "kind = closed", f"tower = {'; '.join(steps)}", ""]
    return Instance(f"random-{index:03d}", "closed", field_name, "\n".join(lines))


def _generic_instance(rng, field_name, index):
    n = rng.randint(1, RANDOM_MAX_VARIABLES)
    variables = RANDOM_VARIABLES[:n]
    lines = [_field_header(field_name), ""]
    relative = rng.random() < 0.5
    if relative:
        lines += ["[S]", "vars = w", ""]
    lines += ["[X]", f"vars = {', '.join(variables)}"]
    if n > 1:
        e = rng.randint(1, RANDOM_MAX_DEGREE)
        r = _coefficient(rng, field_name)
        relation = _signed_sum([(1, f"{variables[-1]}^{e}"), (-1, variables[0]), (-r, "")])
        lines.append(f"ideal = {relation}")
    lines.append("")
    if relative:
        lines += ["[map]", f"w = {rng.choice(variables)}", ""]
    lines += ["[point.x]", "kind = generic", ""]
    if relative:
        lines += ["[point.s]", "kind = generic", ""]
    return Instance(f"random-{index:03d}", "generic", field_name, "\n".join(lines))


def _power(variable, e):
    return variable if e == 1 else f"{variable}^{e}"


def _curve_instance(rng, field_name, index):
    """t -> (t^a, t^b) onto the monomial curve v^a = u^b, generic over generic"""
    a, b = rng.choice(RANDOM_CURVE_EXPONENTS)
    relation = _signed_sum([(1, _power("v", a)), (-1, _power("u", b))])
    lines = [
        _field_header(field_name), "",
        "[S]", "vars = u, v", f"ideal = {relation}", "",
        "[X]", "vars = t", "",
        "[map]", f"u = {_power('t', a)}; v = {_power('t', b)}", "",
        "[point.x]", "kind = generic", "",
        "[point.s]", "kind = generic", "",
    ]
    return Instance(f"random-{index:03d}", "curve", field_name, "\n".join(lines))


def _closed_over_tower_instance(rng, field_name, index):
    """Closed x over a closed s whose residue field is the first step of x's tower"""
    n = rng.randint(1, RANDOM_MAX_VARIABLES)
    variables = RANDOM_VARIABLES[:n]
    catalogue = CLOSED_POINT_CATALOGUE[field_name][n]
    tower = rng.choice([t for t in catalogue if "^" in t[0]] or catalogue)
    first = tower[0]
    c = _coefficient(rng, field_name)
    # S = Spec k[w]/(p(w)(w - c)) keeps a relation; its pullback is added to X
    s_relation = f"({first.replace('x', 'w')})*({_signed_sum([(1, 'w'), (-c, '')])})"
    generators = [f"({first})*({_signed_sum([(1, 'x'), (-c, '')])})"]
    for _ in range(rng.randint(0, RANDOM_MAX_GENERATORS - 1)):
        g = _combination(rng, field_name, variables, tower)
        if g:
            generators.append(g)
    lines = [
        _field_header(field_name), "",
        "[S]", "vars = w", f"ideal = {s_relation}", "",
        "[X]", f"vars = {', '.join(variables)}", f"ideal = {'; '.join(generators)}", "",
        "[map]", "w = x", "",
        "[point.x]", "kind = closed", f"tower = {'; '.join(tower)}", "",
        "[point.s]", "kind = closed", f"tower = {first.replace('x', 'w')}", "",
    ]
    return Instance(f"random-{index:03d}", "closed", field_name, "\n".join(lines))


def _non_dominant_instance(rng, field_name, index):
    """A map that misses s; it must be rejected"""
    c = _coefficient(rng, field_name)
    lines = [_field_header(field_name), "", "[S]", "vars = w", "", "[X]", "vars = x", ""]
    if rng.random() < 0.5:
        lines += ["[map]", f"w = {c}", ""]
        lines += ["[point.x]", "kind = generic", "", "[point.s]", "kind = generic", ""]
    else:
        d = c + 1 if field_name == "Q" else (c + 1) % int(field_name[1:])
        lines += ["[map]", "w = x", ""]
        lines += ["[point.x]", "kind = closed", f"tower = {_signed_sum([(1, 'x'), (-c, '')])}", ""]
        lines += ["[point.s]", "kind = closed", f"tower = {_signed_sum([(1, 'w'), (-d, '')])}", ""]
    return Instance(
        f"random-{index:03d}", "negative", field_name, "\n".join(lines), expect="PointImageMismatch"
    )


def random_instances(seed=DEFAULT_SEED, count=RANDOM_CORPUS_COUNT):
    """Deterministic instance list for a seed"""
    rng = random.Random(seed)
    builders = [
        (RANDOM_GENERIC_SHARE, _generic_instance),
        (RANDOM_CURVE_SHARE, _curve_instance),
        (RANDOM_TOWER_SHARE, _closed_over_tower_instance),
        (RANDOM_NEGATIVE_SHARE, _non_dominant_instance),
    ]
    instances = []
    for index in range(count):
        field_name = rng.choice(RANDOM_FIELDS)
        r = rng.random()
        build = _closed_instance
        for share, builder in builders:
            if r < share:
                build = builder
                break
            r -= share
        instances.append(build(rng, field_name, index))
    return instances


# --- runner ---

def _map(function, items, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(function, items))
    return [function(item) for item in items]


def run_corpus(mode="paper", seed=DEFAULT_SEED, count=RANDOM_CORPUS_COUNT, jobs=1):
    """Summary DataFrame sorted by instance id"""
    if mode == "paper":
        logger.info("running %d reference cases", len(REFERENCE_CASES))
        rows = _map(_reference_job, REFERENCE_CASES, jobs)
    elif mode == "random":
        instances = random_instances(seed, count)
        logger.info("running %d random instances (seed %d)", len(instances), seed)
        rows = _map(_random_job, [(i, seed) for i in instances], jobs)
    else:
        raise ValueError(f"unknown corpus mode '{mode}'")
    for row in rows:
        if row["status"] != "pass":
            logger.warning("%s failed: %s", row["id"], row["detail"])
    return pd.DataFrame(rows).sort_values("id").reset_index(drop=True)


def render_summary(summary, mode, seed):
    passed = int((summary["status"] == "pass").sum())
    header = f"corpus {mode}" + (f" seed {seed}" if mode == "random" else "")
    table = summary.to_string(index=False)
    return f"{header}\n{table}\n\npassed {passed}/{len(summary)}"


def all_passed(summary):
    return bool((summary["status"] == "pass").all())
