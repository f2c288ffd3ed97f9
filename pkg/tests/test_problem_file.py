import pytest

from config import REFERENCE_CASES
from data_manager import corpus_files, load_problem_text
from errors import ParseError, SemanticError, UnknownVariable
from problem_file import build, parse, pretty_print


def test_counterexample_file(reference_problem):
    pf = reference_problem("counterexample_generic_line")
    assert pf.base == "Q"
    assert pf.absolute
    assert pf.x_vars == ("t",)
    assert pf.point_x == ("generic", ())


def test_node_presentation(built_problem):
    p = built_problem("node_origin")
    assert p.X.variables == ("x", "y")
    assert p.X.ideal.generators == (p.X.ring.parse("y^2 - x^3 - x^2"),)
    assert p.S.variables == ()
    assert p.f.pullbacks == ()


def test_relative_file_builds_the_map(built_problem):
    p = built_problem("relative_plane_over_line")
    assert p.S.variables == ("y",)
    assert p.f.pullbacks == (p.X.ring.parse("y"),)
    assert p.s_spec.kind == "closed"


def test_options_section():
    pf = parse(
        "base = Fp 5\n[X]\nvars = x\n[point.x]\nkind = closed\ntower = x - 2\n"
        "[options]\norder = lex, trust_point = true\nseed = 7\n"
    )
    assert pf.order == "lex"
    assert pf.trust_point is True
    assert pf.seed == 7
    assert build(pf).X.ring.order.kind == "lex"


def test_comments_and_blank_lines_are_ignored():
    pf = parse("# header\n\nbase = Q  # rationals\n[X]\nvars = x\n\n[point.x]\nkind = generic # the generic point\n")
    assert pf.point_x == ("generic", ())


def test_map_without_s_is_rejected():
    with pytest.raises(SemanticError):
        parse("base = Q\n[X]\nvars = x\n[map]\ny = x\n[point.x]\nkind = closed\ntower = x\n")


def test_s_without_point_s_is_rejected():
    with pytest.raises(SemanticError):
        parse("base = Q\n[S]\nvars = y\n[X]\nvars = x\n[map]\ny = x\n[point.x]\nkind = closed\ntower = x\n")


def test_map_must_assign_every_variable_of_s():
    text = "base = Q\n[S]\nvars = y, z\n[X]\nvars = x\n[map]\ny = x\n[point.x]\nkind = closed\ntower = x\n[point.s]\nkind = closed\ntower = y; z\n"
    with pytest.raises(SemanticError):
        parse(text)


def test_map_to_unknown_variable():
    text = "base = Q\n[S]\nvars = y\n[X]\nvars = x\n[map]\nw = x\n[point.x]\nkind = closed\ntower = x\n[point.s]\nkind = closed\ntower = y\n"
    with pytest.raises(UnknownVariable):
        parse(text)


def test_unknown_section_reports_line():
    with pytest.raises(ParseError) as info:
        parse("base = Q\n[X]\nvars = x\n[Y]\n")
    assert info.value.line == 4


def test_polynomial_syntax_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse("base = Q\n[X]\nvars = x, y\nideal = x^2 + * y\n[point.x]\nkind = generic\n")
    assert info.value.line == 4
    assert info.value.column == 15


@pytest.mark.parametrize(
    "text",
    [
        "base = Fp 4\n[X]\nvars = x\n[point.x]\nkind = generic\n",
        "base = Q\n[X]\nvars = x, x\n[point.x]\nkind = generic\n",
        "base = Q\n[X]\nvars = x\n",
        "[X]\nvars = x\n[point.x]\nkind = generic\n",
    ],
)
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse(text)


@pytest.mark.parametrize(
    "text",
    [
        "base = R\n[X]\nvars = x\n[point.x]\nkind = generic\n",
        "base = Q\n[X]\nvars = x\n[point.x]\nkind = smooth\n",
        "base = Q\n[X]\nvars = x\n[point.x]\nkind = generic\n[options]\ncolour = blue\n",
        "base = Q\n[X]\nvars = x\nweight = 3\n[point.x]\nkind = generic\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


@pytest.mark.parametrize("name", REFERENCE_CASES)
def test_pretty_print_is_a_fixed_point(name, reference_problem):
    pf = reference_problem(name)
    printed = pretty_print(pf)
    assert parse(printed) == pf
    assert pretty_print(parse(printed)) == printed


def test_every_bundled_case_parses():
    assert len(corpus_files()) == len(REFERENCE_CASES)
    for path in corpus_files():
        parse(load_problem_text(path))
