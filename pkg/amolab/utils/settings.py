import os
import sys
from typing import Optional

from dotenv import load_dotenv

DEFAULT_SEED = 0x5EED
DEFAULT_OUTPUT_DIR = "data/results"


def _read_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        print(f"Error: {name} must be an integer, got {raw!r}")
        sys.exit(2)
    if value < 0:
        print(f"Error: {name} must be non-negative, got {value}")
        sys.exit(2)
    return value


def get_thread_count() -> int:
    load_dotenv(override=False)

    threads = _read_int("AMO_LAB_THREADS", None)
    if not threads:
        threads = os.cpu_count() or 1

    return threads


def get_seed() -> int:
    load_dotenv(override=False)
    return _read_int("AMO_LAB_SEED", DEFAULT_SEED)


def get_output_dir() -> str:
    load_dotenv(override=False)
    return os.environ.get("AMO_LAB_OUTPUT_DIR", DEFAULT_OUTPUT_DIR)
