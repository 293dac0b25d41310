"""
Configuration file for the catkit kernel and command-line tool.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Project root
PROJECT_ROOT = Path(__file__).parent.parent

# Optional overrides from a .env file at the project root
load_dotenv(PROJECT_ROOT / ".env")

# Data directories
DATA_DIR = PROJECT_ROOT / "data"
CATKIT_DATA_DIR = DATA_DIR / "catkit"


def _env_int(name: str, default: int) -> int:
    value = os.getenv(f"CATKIT_{name}")
    return int(value) if value not in (None, "") else default


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(f"CATKIT_{name}")
    if value in (None, ""):
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# Randomized property runs
DEFAULT_SEED = _env_int("SEED", 42)
RANDOM_PROFUNCTOR_COUNT = _env_int("RANDOM_PROFUNCTOR_COUNT", 100)
RANDOM_BUNDLE_COUNT = _env_int("RANDOM_BUNDLE_COUNT", 50)
RANDOM_FUNCTOR_PAIR_COUNT = _env_int("RANDOM_FUNCTOR_PAIR_COUNT", 20)
MAX_RANDOM_OBJECTS = 4    # Objects per random category
MAX_RANDOM_MORPHISMS = 12  # Morphisms per random category

# Enumeration bounds
DEFAULT_BOUND = _env_int("BOUND", 3)         # Source-length / list-length cap
DELTA_MAX = _env_int("DELTA_MAX", 6)         # Largest ordinal in truncated Delta
STRICTIFY_BOUND = _env_int("STRICTIFY_BOUND", 4)
TREE_MAX_NODES = _env_int("TREE_MAX_NODES", 8)
TREE_MAX_HEIGHT = _env_int("TREE_MAX_HEIGHT", 3)

# Search budgets
MAX_CANDIDATES = _env_int("MAX_CANDIDATES", 200000)  # Classification searches
ISO_SEARCH_BUDGET = _env_int("ISO_SEARCH_BUDGET", 10000)  # Per target object

# Progress bars go to stderr; off by default so reports stay byte-identical
SHOW_PROGRESS = _env_flag("SHOW_PROGRESS", False)

# Section kinds understood by the catkit text format
SECTION_KINDS = (
    "category",
    "functor",
    "profunctor",
    "multicategory",
    "monoidal",
    "strictmonoidal",
    "laxbundle",
    "tree",
    "labelledtree",
)
