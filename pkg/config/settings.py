import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Base directories
PROJECT_ROOT = Path(__file__).parent.parent
LOGS_DIR = PROJECT_ROOT / "logs"

# Logging
LOG_LEVEL = os.environ.get("CHROMALG_LOG_LEVEL", "INFO").upper()
LOG_FILE = os.environ.get("CHROMALG_LOG_FILE", "")
if LOG_FILE and not os.path.isabs(LOG_FILE):
    os.makedirs(LOGS_DIR, exist_ok=True)
    LOG_FILE = str(LOGS_DIR / LOG_FILE)

PROGRESS = os.environ.get("CHROMALG_PROGRESS", "").lower() in ("1", "true", "yes", "on")

# Sweep workers
JOBS = int(os.environ.get("CHROMALG_JOBS", 1))

# Global cap on every enumeration bound below
MAX_N = int(os.environ.get("CHROMALG_MAX_N", 12))

# Largest graph the canonical labeller will accept
CANON_BOUND = int(os.environ.get("CHROMALG_CANON_BOUND", 12))

# Per-class bounds
CLASS_BOUNDS = {
    "trees": 12,
    "connected": 7,
    "unicyclic": 8,
    "graphs": 6,
    "caterpillars": 12,
    "oracle_m": 9,
    "trace": 8,
    "e_sinks": 6,
    "universal": 6,
    "span_trees": 10,
    "span_connected": 7,
    "family": 8,
    "ab1k": 12,
    "cut_relations": 9,
}

# Edge-count bounds
ORACLE_P_MAX_EDGES = 24
ORIENTATION_MAX_EDGES = 22


# Oracle and trace limits are not enumeration bounds and ignore MAX_N
UNCAPPED = ("oracle_m", "trace")


def bound(name):
    """Effective bound for a graph class, capped by CHROMALG_MAX_N."""
    if name in UNCAPPED:
        return CLASS_BOUNDS[name]
    return min(CLASS_BOUNDS[name], MAX_N)
