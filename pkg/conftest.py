import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from data_manager import load_problem_text, reference_case_path  # noqa: E402
from exact_arith import prime_field, rationals  # noqa: E402
from multipoly import PolyRing  # noqa: E402
from problem_file import build, parse  # noqa: E402


@pytest.fixture
def Q():
    return rationals()


@pytest.fixture
def F2():
    return prime_field(2)


@pytest.fixture
def F3():
    return prime_field(3)


@pytest.fixture
def ring():
    """ring(field, "x, y") -> PolyRing"""

    def make(field, names, order=None):
        variables = tuple(n.strip() for n in names.split(",") if n.strip())
        if order is None:
            return PolyRing(variables, field)
        return PolyRing(variables, field, order)

    return make


@pytest.fixture
def reference_problem():
    """reference_problem(name) -> parsed ProblemFile of a bundled case"""

    def load(name):
        return parse(load_problem_text(reference_case_path(name)))

    return load


@pytest.fixture
def built_problem(reference_problem):
    def load(name, order=None):
        return build(reference_problem(name), order)

    return load


@pytest.fixture
def random_polynomial():
    """random_polynomial(R, rng, terms=4, degree=2) -> Polynomial with small coefficients"""

    def make(R, rng, terms=4, degree=2):
        p = R.zero()
        for _ in range(terms):
            exps = tuple(rng.randint(0, degree) for _ in R.variables)
            p = p + R.monomial(exps, R.field.from_int(rng.randint(-3, 3)))
        return p

    return make
