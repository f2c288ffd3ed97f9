"""
Problem file module
Parses and pretty-prints the line-oriented problem format and builds the
presentations of X, S, f and the point specs from it
"""

import re
from dataclasses import dataclass, field

from config import DEFAULT_ORDER, DEFAULT_SEED, POINT_KINDS, SUPPORTED_ORDERS
from errors import ParseError, SemanticError, UnknownVariable
from exact_arith import is_prime, prime_field, rationals
from groebner import IdealPresentation
from multipoly import PolyRing, order_named, parse_polynomial
from scheme_model import AffinePresentation, MorphismPresentation, PointSpec, spec_of_field

SECTIONS = ("S", "X", "map", "point.x", "point.s", "options")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Located:
    """Source text with its 1-based position"""

    text: str
    line: int = field(default=0, compare=False)
    column: int = field(default=1, compare=False)


@dataclass
class ProblemFile:
    base: str
    x_vars: tuple
    x_ideal: tuple
    point_x: tuple
    s_vars: tuple = None
    s_ideal: tuple = ()
    mapping: tuple = None
    point_s: tuple = None
    options: dict = field(default_factory=dict)

    @property
    def absolute(self):
        return self.s_vars is None

    @property
    def order(self):
        return self.options.get("order", DEFAULT_ORDER)

    @property
    def trust_point(self):
        return self.options.get("trust_point", False)

    @property
    def seed(self):
        return self.options.get("seed", DEFAULT_SEED)

    def base_field(self):
        if self.base == "Q":
            return rationals()
        return prime_field(int(self.base.split()[1]))


@dataclass
class Problem:
    """Presentations built from a ProblemFile"""

    X: AffinePresentation
    S: AffinePresentation
    f: MorphismPresentation
    x_spec: PointSpec
    s_spec: PointSpec


def _split(value, separator, line, column):
    """Split on separator keeping each piece's column"""
    pieces = []
    start = 0
    for part in value.split(separator):
        stripped = part.strip()
        if stripped:
            offset = start + len(part) - len(part.lstrip())
            pieces.append(Located(stripped, line, column + offset))
        start += len(part) + 1
    return pieces


def _parse_vars(value, line, column):
    names = _split(value, ",", line, column)
    seen = set()
    for name in names:
        if not _NAME.match(name.text):
            raise ParseError(f"invalid variable name '{name.text}'", line, name.column)
        if name.text in seen:
            raise SemanticError(f"line {line}: variable '{name.text}' declared twice")
        seen.add(name.text)
    return tuple(n.text for n in names)


def _parse_base(value, line, column):
    parts = value.split()
    if parts == ["Q"]:
        return "Q"
    if len(parts) == 2 and parts[0] == "Fp" and parts[1].isdigit():
        if not is_prime(int(parts[1])):
            raise SemanticError(f"line {line}: {parts[1]} is not a prime")
        return f"Fp {int(parts[1])}"
    raise ParseError("base must be 'Q' or 'Fp <prime>'", line, column)


def _parse_option(key, value, line, column):
    if key == "order":
        if value not in SUPPORTED_ORDERS:
            raise ParseError(f"order must be one of {', '.join(SUPPORTED_ORDERS)}", line, column)
        return value
    if key == "trust_point":
        if value not in ("true", "false"):
            raise ParseError("trust_point must be true or false", line, column)
        return value == "true"
    if key == "seed":
        if not value.isdigit() or int(value) >= 2 ** 64:
            raise ParseError("seed must be an unsigned 64-bit integer", line, column)
        return int(value)
    raise ParseError(f"unknown option '{key}'", line, column)


def _key_value(raw, line, offset=0):
    if "=" not in raw:
        raise ParseError("expected 'key = value'", line, offset + len(raw) - len(raw.lstrip()) + 1)
    key, value = raw.split("=", 1)
    column = offset + len(key) + 2 + len(value) - len(value.lstrip())
    return key.strip(), value.strip(), column


def parse(text):
    """Parse problem text into a ProblemFile"""
    base = None
    section = None
    seen_sections = set()
    data = {name: {} for name in SECTIONS}
    mapping = []
    options = {}

    for number, raw_line in enumerate(text.splitlines(), start=1):
        content = raw_line.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        stripped = content.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", number, len(content) + 1)
            name = stripped[1:-1].strip()
            if name not in SECTIONS:
                raise ParseError(f"unknown section [{name}]", number, content.index("[") + 1)
            if name in seen_sections:
                raise SemanticError(f"line {number}: section [{name}] appears twice")
            seen_sections.add(name)
            section = name
            continue

        if section == "options":
            start = 0
            for part in content.split(","):
                if part.strip():
                    key, value, column = _key_value(part, number, start)
                    options[key] = _parse_option(key, value, number, column)
                start += len(part) + 1
            continue

        if section == "map":
            start = 0
            for part in content.split(";"):
                if part.strip():
                    key, value, column = _key_value(part, number, start)
                    if not _NAME.match(key):
                        raise ParseError(f"invalid map target '{key}'", number, start + 1)
                    mapping.append((key, Located(value, number, column)))
                start += len(part) + 1
            continue

        key, value, column = _key_value(content, number)
        if section is None:
            if key != "base":
                raise ParseError(f"unexpected key '{key}' before the first section", number, 1)
            base = _parse_base(value, number, column)
            continue
        allowed = {
            "S": ("vars", "ideal"),
            "X": ("vars", "ideal"),
            "point.x": ("kind", "tower"),
            "point.s": ("kind", "tower"),
        }[section]
        if key not in allowed:
            raise ParseError(f"unknown key '{key}' in [{section}]", number, 1)
        if key in data[section]:
            raise SemanticError(f"line {number}: '{key}' given twice in [{section}]")
        if key == "vars":
            data[section][key] = _parse_vars(value, number, column)
        elif key in ("ideal", "tower"):
            data[section][key] = tuple(_split(value, ";", number, column))
        elif value not in POINT_KINDS:
            raise ParseError(f"kind must be one of {', '.join(POINT_KINDS)}", number, column)
        else:
            data[section][key] = value

    if base is None:
        raise SemanticError("missing 'base = Q | Fp <prime>'")
    if "X" not in seen_sections or "vars" not in data["X"]:
        raise SemanticError("missing [X] section with 'vars'")
    if "point.x" not in seen_sections:
        raise SemanticError("missing [point.x] section")
    if "map" in seen_sections and "S" not in seen_sections:
        raise SemanticError("[map] given without an [S] section")
    has_s = "S" in seen_sections
    if has_s and "vars" not in data["S"]:
        raise SemanticError("[S] needs 'vars'")
    if has_s and "point.s" not in seen_sections:
        raise SemanticError("[point.s] is required when [S] is given")
    if not has_s and "point.s" in seen_sections:
        raise SemanticError("[point.s] given without an [S] section")

    def point(name):
        if "kind" not in data[name]:
            raise SemanticError(f"[{name}] needs 'kind'")
        tower = data[name].get("tower", ())
        if data[name]["kind"] == "generic" and tower:
            raise SemanticError(f"[{name}] is generic but lists a tower")
        return (data[name]["kind"], tower)

    problem = ProblemFile(
        base=base,
        x_vars=data["X"]["vars"],
        x_ideal=data["X"].get("ideal", ()),
        point_x=point("point.x"),
        s_vars=data["S"]["vars"] if has_s else None,
        s_ideal=data["S"].get("ideal", ()) if has_s else (),
        mapping=tuple(mapping) if has_s else None,
        point_s=point("point.s") if has_s else None,
        options=options,
    )
    _check_polynomials(problem)
    return problem


def _parse_all(located, ring):
    return tuple(parse_polynomial(item.text, ring, item.line, item.column) for item in located)


def _check_polynomials(problem):
    """Parse every polynomial once so syntax and variable errors surface with positions"""
    k = problem.base_field()
    x_ring = PolyRing(problem.x_vars, k)
    _parse_all(problem.x_ideal, x_ring)
    _parse_all(problem.point_x[1], x_ring)
    if problem.absolute:
        return
    s_ring = PolyRing(problem.s_vars, k)
    _parse_all(problem.s_ideal, s_ring)
    _parse_all(problem.point_s[1], s_ring)
    assigned = [name for name, _ in problem.mapping]
    for name in assigned:
        if name not in problem.s_vars:
            raise UnknownVariable(name, problem.s_vars)
    if len(set(assigned)) != len(assigned):
        raise SemanticError("a variable of S is assigned twice in [map]")
    missing = [v for v in problem.s_vars if v not in assigned]
    if missing:
        raise SemanticError(f"[map] does not assign {', '.join(missing)}")
    _parse_all([value for _, value in problem.mapping], x_ring)


def build(problem, order=None):
    """Presentations and point specs, with polynomials in rings using the given order"""
    monomial_order = order_named(order or problem.order)
    k = problem.base_field()
    x_ring = PolyRing(problem.x_vars, k, monomial_order)
    X = AffinePresentation(k, problem.x_vars, IdealPresentation(x_ring, _parse_all(problem.x_ideal, x_ring)))
    x_spec = PointSpec(problem.point_x[0], _parse_all(problem.point_x[1], x_ring))
    if problem.absolute:
        S = spec_of_field(k, monomial_order)
        s_spec = PointSpec("closed")
        pullbacks = ()
    else:
        s_ring = PolyRing(problem.s_vars, k, monomial_order)
        S = AffinePresentation(k, problem.s_vars, IdealPresentation(s_ring, _parse_all(problem.s_ideal, s_ring)))
        s_spec = PointSpec(problem.point_s[0], _parse_all(problem.point_s[1], s_ring))
        by_name = dict(problem.mapping)
        pullbacks = _parse_all([by_name[v] for v in problem.s_vars], x_ring)
    return Problem(X, S, MorphismPresentation(X, S, pullbacks), x_spec, s_spec)


def _join(items):
    return "; ".join(item.text for item in items)


def pretty_print(problem):
    """Canonical text of a ProblemFile; parse(pretty_print(p)) == p"""
    lines = [f"base = {problem.base}", ""]
    if not problem.absolute:
        lines += ["[S]", f"vars = {', '.join(problem.s_vars)}"]
        if problem.s_ideal:
            lines.append(f"ideal = {_join(problem.s_ideal)}")
        lines.append("")
    lines += ["[X]", f"vars = {', '.join(problem.x_vars)}"]
    if problem.x_ideal:
        lines.append(f"ideal = {_join(problem.x_ideal)}")
    lines.append("")
    if not problem.absolute:
        lines.append("[map]")
        lines += [f"{name} = {value.text}" for name, value in problem.mapping]
        lines.append("")
    points = [("point.x", problem.point_x)]
    if not problem.absolute:
        points.append(("point.s", problem.point_s))
    for name, (kind, tower) in points:
        lines += [f"[{name}]", f"kind = {kind}"]
        if tower:
            lines.append(f"tower = {_join(tower)}")
        lines.append("")
    if problem.options:
        lines.append("[options]")
        for key in ("order", "trust_point", "seed"):
            if key in problem.options:
                value = problem.options[key]
                if isinstance(value, bool):
                    value = "true" if value else "false"
                lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)
