# src/utils/constants.py

# Lazy evaluation: children forced per node before giving up.
DEFAULT_FUEL = 64

# build_hierarchy refuses to materialize a level larger than this.
MAX_STRUCTURE_SIZE = 4096

# coarsenings_2: longest block-merge prefix and period enumerated.
COARSENING_BUDGET = 2

# Finite modifications tried before the adversary gives up on a partition.
MODIFICATION_SEARCH_LIMIT = 1000

# Each StageRegistry gets its own database; in memory unless told otherwise.
REGISTRY_DATABASE_URL = "sqlite://"

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_PARSE_ERROR = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
DEFAULT_LOG_LEVEL = "WARNING"

# Hat game defaults for `simulate hats`.
DEFAULT_PRISONERS = 20
