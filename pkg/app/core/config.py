import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

DEFAULT_SEED = _int_env("DEFAULT_SEED", 20240601, minimum=0)   # fuzz and selftest suites
DEFAULT_JOBS = _int_env("DEFAULT_JOBS", 1)                     # BFS layer workers

ORBIT_MAX_TUPLES = _int_env("ORBIT_MAX_TUPLES", 2_000_000)     # distinct tuples per orbit ball
TERM_SEARCH_MAX_SIZE = _int_env("TERM_SEARCH_MAX_SIZE", 41)     # node count
TERM_SEARCH_MAX_VALUES = _int_env("TERM_SEARCH_MAX_VALUES", 200_000)
ENUMERATION_MAX_ELEMENTS = _int_env("ENUMERATION_MAX_ELEMENTS", 500_000)
F_GAMMA_MAX_ASSIGNMENTS = _int_env("F_GAMMA_MAX_ASSIGNMENTS", 500_000)
PLANE_MAX_STAGE = _int_env("PLANE_MAX_STAGE", 6)

