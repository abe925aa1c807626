#!/usr/bin/env python3

__title__ = "cyclecr"
__version__ = "0.1.0"
