"""
Configuration file for the tangent-space comparison toolkit
Contains all constants, file paths, and configuration settings
"""

from pathlib import Path

# File paths
PROJECT_DIR = Path(__file__).resolve().parent
CORPUS_DIR = PROJECT_DIR / "corpus"
NEGATIVE_CORPUS_DIR = CORPUS_DIR / "negative"

# App settings
APP_NAME = "tangent-compare"
TOOL_VERSION = "1.0.0"
APP_TAGLINE = "Zariski vs Grothendieck relative tangent spaces, computed exactly"

# Exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_UNSUPPORTED = 2
EXIT_POINT_INVALID = 3
EXIT_INVARIANT = 4

# Monomial orders
SUPPORTED_ORDERS = ["grevlex", "lex"]
DEFAULT_ORDER = "grevlex"

# Point kinds
POINT_KINDS = ["closed", "generic"]

# Randomness: every random choice (corpus, equal-degree splitting) flows from one seed
DEFAULT_SEED = 42

# Random corpus limits
RANDOM_CORPUS_COUNT = 50
RANDOM_MAX_VARIABLES = 3
RANDOM_MAX_DEGREE = 3
RANDOM_MAX_GENERATORS = 2
RANDOM_FIELDS = ["Q", "F2", "F3", "F5"]
RANDOM_VARIABLES = ["x", "y", "z"]
RANDOM_COEFFICIENT_RANGE = (-2, 2)

# Closed points for the random corpus: triangular towers known to be maximal
CLOSED_POINT_CATALOGUE = {
    "Q": {
        1: [("x",), ("x - 1",), ("x^2 + 1",), ("x^2 - 2",)],
        2: [
            ("x", "y"),
            ("x - 1", "y + 2"),
            ("x^2 + 1", "y - x"),
            ("x^2 - 2", "y^2 - x"),
            ("x^2 + 1", "y"),
        ],
        3: [("x", "y", "z"), ("x^2 + 1", "y - x", "z - 1"), ("x - 1", "y^2 + 1", "z - y")],
    },
    "F2": {
        1: [("x",), ("x + 1",), ("x^2 + x + 1",)],
        2: [("x", "y"), ("x^2 + x + 1", "y + x"), ("x + 1", "y^2 + y + 1")],
        3: [("x", "y", "z"), ("x^2 + x + 1", "y", "z + x")],
    },
    "F3": {
        1: [("x",), ("x^2 + 1",)],
        2: [("x", "y"), ("x^2 + 1", "y - x"), ("x - 1", "y^2 + 1")],
        3: [("x", "y", "z"), ("x^2 + 1", "y", "z - x")],
    },
    "F5": {
        1: [("x - 2",), ("x^2 - 2",)],
        2: [("x", "y"), ("x^2 - 2", "y + x")],
        3: [("x", "y", "z")],
    },
}

# Shares of the random instance families; the rest are closed points over rational s
RANDOM_GENERIC_SHARE = 0.25
RANDOM_CURVE_SHARE = 0.1
RANDOM_TOWER_SHARE = 0.15
RANDOM_NEGATIVE_SHARE = 0.1

# (a, b) with gcd 1: t -> (t^a, t^b) parametrizes the curve v^a = u^b
RANDOM_CURVE_EXPONENTS = [(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)]

# Irreducibility over Q by Kronecker's method gives up beyond this many candidates
KRONECKER_CANDIDATE_LIMIT = 20000

# Random primitive elements tried when certifying a number-field tower over Q
TOWER_PRIMITIVE_ATTEMPTS = 16

# Bundled reference case names, in run order
REFERENCE_CASES = [
    "counterexample_generic_line",
    "gaussian_point_on_line",
    "node_origin",
    "relative_plane_over_line",
    "inseparable_f2",
    "separable_f3",
    "trivial_point",
]
