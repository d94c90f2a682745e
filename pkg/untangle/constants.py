"""
Constants for the untangle package.
"""

from fractions import Fraction

LOG_FORMAT = "%(asctime)-15s - %(levelname)s - %(message)s"
LOG_LEVEL_ENV = "UNTANGLE_LOG_LEVEL"

BUDGET_ENV = "UNTANGLE_BUDGET"
WORKERS_ENV = "UNTANGLE_WORKERS"
CACHE_DIR_ENV = "UNTANGLE_CACHE_DIR"

# configurations explored before a search gives up
DEFAULT_BUDGET = 10_000_000
DEFAULT_ENUMERATION_LIMIT = 1_000_000
DEFAULT_LOG_INTERVAL = 100_000

DEFAULT_REPORT_MAX_N = 7
DEFAULT_REPORT_TRIALS = 5

# mpmath working precision for total_length, in bits
LENGTH_PRECISION_BITS = 96

# butterfly blue heights are shifted by t / 2**k with 2**k > 4 m^2 (spread)
BUTTERFLY_EPSILON_MIN_EXPONENT = 8

# coordinate range of random instances
RANDOM_COORD_RANGE = 1_000

# embedding layout, in abstract units
VARIABLE_WIDTH = 12
VARIABLE_HEIGHT = 2
VARIABLE_GAP = 4
VARIABLE_PITCH = VARIABLE_WIDTH + VARIABLE_GAP
CLAUSE_LEVEL_HEIGHT = 80
# clause band height, the top of a right clause edge stays inside it
CLAUSE_HEIGHT = 70
# a lone clause edge enters its variable this far right of the centre
CONNECTION_OFFSET = 1
# clause rectangles reach this far past their outer edges
CLAUSE_MARGIN = 2
# least spacing of the edges sharing a side of a variable
CONNECTION_GAP = 2 * CLAUSE_MARGIN + 1
# spacing of the outermost shared edges from the variable corners
CORNER_GAP = 1
# heights of the clause rows above the clause base
CLAUSE_ROW_LOW = 8
CLAUSE_ROW_HIGH = 16
# interior points of a variable sit this far from its centre
VARIABLE_INNER = Fraction(1, 4)

# rendered drawings fit a square canvas of this many pixels
SVG_SIZE = 800
SVG_MARGIN = 20
SVG_MARKER = 4
