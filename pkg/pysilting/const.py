"""Constants for the pysilting toolkit."""

DOMAIN = "pysilting"
VERSION = "0.1.0"

# Field descriptors
FIELD_RATIONALS = "rationals"
FIELD_PRIME_PREFIX = "gf:"
DEFAULT_FIELD = FIELD_RATIONALS

# Document keys
CONF_VERTICES = "vertices"
CONF_ARROWS = "arrows"
CONF_RELATIONS = "relations"
CONF_FIELD = "field"
CONF_GF = "gf"
CONF_COEFF = "coeff"
CONF_PATH = "path"
CONF_DIMS = "dims"
CONF_DEGREES = "degrees"
CONF_DIFFERENTIALS = "differentials"

# Caps
DEFAULT_PATH_CAP = 30  # longest path length tried before giving up on finiteness
DEFAULT_BFS_CAP = 200  # silting objects kept by one interval enumeration
DEFAULT_INDECOMPOSABLE_CAP = 60  # modules found by knitting before giving up
DEFAULT_TOWER_CAP = 24  # triangles in one approximation tower
DEFAULT_DESCENT_CAP = 32  # mutations tried by connect_descend
DEFAULT_NU_ORBIT_CAP = 12  # powers of nu tried when looking for the orbit length

# Deterministic searches over combinations t^k of basis elements
SYMMETRIC_FORM_TRIES = 64
SPLIT_TRIES = 64

# Exit codes
EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

# Mutation directions
LEFT = "left"
RIGHT = "right"
DIRECTIONS = (LEFT, RIGHT)

# Silting statuses, ordered from weakest to strongest
STATUS_NOT_PRESILTING = "not_presilting"
STATUS_PRESILTING = "presilting"
STATUS_SILTING = "silting"
STATUS_TILTING = "tilting"
STATUS_ORDER = (
    STATUS_NOT_PRESILTING,
    STATUS_PRESILTING,
    STATUS_SILTING,
    STATUS_TILTING,
)

# Export formats
FORMAT_DOT = "dot"
FORMAT_JSON = "json"
FORMATS = (FORMAT_DOT, FORMAT_JSON)
