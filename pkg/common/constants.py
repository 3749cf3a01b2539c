"""
Common constants used across the application
"""

# Truncation bounds
DEFAULT_BOUND = 5
MAX_BOUND = 6

# Label used for undecorated vertices (the d=1 case)
UNDECORATED = ""

# Output formats
OUTPUT_FORMATS = [
    ("text", "Plain text"),
    ("json", "JSON"),
    ("latex", "LaTeX"),
]

# Tensor-slot and operator symbols of the expression grammar
SLOT_SEPARATOR = "|"
TOP_SYMBOLS = ("⊤", "^")
PI_PREFIXES = ("π(", "pi(")
MINUS_SIGNS = ("-", "−")
UNIT_TOKEN = "1"

# Printed symbols
TEXT_MINUS = "−"
TEXT_TOP = "⊤"
TEXT_PI = "π"

# Exit codes of the CLI verbs
EXIT_OK = 0
EXIT_ASSERTION_FAILED = 1
EXIT_USAGE = 2

# Lift kinds: first letter is the convention for the weight-4 tree integral,
# second letter the convention for the iterated W integral.
LIFT_KINDS = [
    ("SS", "Stratonovich-Stratonovich"),
    ("II", "Itô-Itô"),
    ("IS", "Itô-Stratonovich"),
    ("SI", "Stratonovich-Itô"),
]

# Verification suites
SYMBOLIC_SUITES = [
    "forest",
    "duality",
    "pi",
    "grading",
    "euler",
    "iso",
    "hoffman",
    "prelie",
    "ks",
    "order4",
]
STOCHASTIC_SUITES = [
    "chen",
    "regularity",
    "quasigeo",
    "integrals",
    "qv",
    "sampler",
]

# Largest fBm grid the Cholesky sampler accepts
MAX_FBM_POINTS = 2**15

# Rough-integral identities: fine grid of the Itô oracle and the partitions
# (block counts) whose residuals must decay
INTEGRAL_GRID = 2**13
INTEGRAL_LEVELS = (2**5, 2**7, 2**9)
DEFAULT_TEST_FUNCTION = "sin(x)"

# Per-scale statistic of the regularity fit
REGULARITY_STATISTICS = ("rms", "sup")
