"""
Configuration settings for the lattice polygon summation toolkit
"""

import os

from dotenv import load_dotenv

load_dotenv()

# Series Settings
SERIES_CONFIG = {
    "slack": int(os.getenv("LATTICE_SLACK", "2")),  # extra xi1-depth for inverse linear forms
}

# Enumeration Oracle Settings
ORACLE_CONFIG = {
    "cell_budget": int(os.getenv("LATTICE_CELL_BUDGET", "2000000")),  # bounding-box cells
}

# Compute Settings
COMPUTE_CONFIG = {
    "threads": int(os.getenv("LATTICE_THREADS", "1")),  # 0 = one worker per physical core
}

# Logging Settings
LOG_CONFIG = {
    "log_level": os.getenv("LATTICE_LOG_LEVEL", "WARNING"),
    "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
}

# Data Settings
DATA_CONFIG = {
    "data_dir": os.getenv("LATTICE_DATA_DIR", "data"),
    "golden_file": "golden.json",
}


def get_data_path(name: str) -> str:
    """Get full path for a file in the data directory"""
    data_dir = DATA_CONFIG["data_dir"]
    if not os.path.isabs(data_dir):
        data_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), data_dir)
    return os.path.join(data_dir, name)
