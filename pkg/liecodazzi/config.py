DEFAULT_SEED = 42
SEED_ENV_VAR = "LIECODAZZI_SEED"
DEFAULT_TRIALS = 200
JACOBI_POINTS = 25
ORACLE_POINTS = 50
SAMPLE_NUMERATOR_BOUND = 10
SAMPLE_DENOMINATOR_BOUND = 10
SAMPLER_MAX_ATTEMPTS = 2000
MAX_EXPONENT = 64
CACHE_MAX_LENGTH = 128
LOGGING_FILE = "liecodazzi.log"
REPORT_SCHEMA = "1"
