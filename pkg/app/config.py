import os
from dotenv import load_dotenv

load_dotenv()


def get_env(key: str, default: str = "") -> str:
    return os.getenv(key, default)


def get_int_env(key: str, default: int) -> int:
    raw = get_env(key, "").strip().replace("_", "")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}")


# Hard bound on polynomial work during symbolic equality
EXPANSION_TERM_CAP = get_int_env("EXPANSION_TERM_CAP", 1_000_000)
SAMPLE_RETRY_CAP = get_int_env("SAMPLE_RETRY_CAP", 1000)

DEFAULT_SEED = get_int_env("DEFAULT_SEED", 0)
DEFAULT_TRIALS = get_int_env("DEFAULT_TRIALS", 100)
DEFAULT_BOX = get_int_env("DEFAULT_BOX", 8)
DEFAULT_UD_SAMPLES = get_int_env("DEFAULT_UD_SAMPLES", 2000)

LOG_LEVEL = get_env("LOG_LEVEL", "INFO").upper()
REPORT_DIR = get_env("REPORT_DIR", "reports")
