"""tabq: ask questions of tabular data.

Profiles tables, parses free-text questions into ranked query plans,
executes statistical analyses, trains and simulates predictive models, and
steers guided analysis sessions - all behind one engine, one CLI, and one
HTTP service.
"""

from .config import EngineConfig
from .dataset import Dataset, LoadOptions, load_table
from .engine import Engine
from .profiling import ColumnType, TableProfile, build_profile

__version__ = "0.1.0"

__all__ = [
    "ColumnType",
    "Dataset",
    "Engine",
    "EngineConfig",
    "LoadOptions",
    "TableProfile",
    "__version__",
    "build_profile",
    "load_table",
]
