#!/usr/bin/env python

import sys
from pathlib import Path

CYCLECR_HOME: Path = Path(__file__).parent.absolute()

DATA_FOLDER: Path = CYCLECR_HOME / "data"
BUILTIN_CYCLES_PATH: Path = DATA_FOLDER / "builtin_cycles.json"

# picked up from the working directory when --config is not given
DEFAULT_CONFIG_NAME = "cyclecr.json"

sys.path.insert(0, str(CYCLECR_HOME))
