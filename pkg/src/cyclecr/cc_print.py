#!/usr/bin/env python3

import sys
from typing import Sequence

IS_WINDOWS = sys.platform == "win32"


class _bcolors:
    HEADER = "\033[95m"
    OKBLUE = "\033[94m"
    OKGREEN = "\033[92m"
    WARNING = "\033[93m"
    FAIL = "\033[91m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"


bcolors = _bcolors()
color_support = True
if IS_WINDOWS:  # pragma: no cover
    try:
        from ctypes import windll  # type:ignore

        kernel32 = windll.kernel32
        kernel32.SetConsoleMode(kernel32.GetStdHandle(-11), 7)
    except Exception:
        color_support = False


def color_print(color: str, s: str, prefix: str = "", postfix: str = "") -> None:
    """Write prefix, s in the given bcolors attribute, and postfix to stderr."""
    sys.stderr.write(prefix)
    if color_support and sys.stderr.isatty():
        sys.stderr.write(getattr(bcolors, color) + s + bcolors.ENDC)
    else:
        sys.stderr.write(s)
    sys.stderr.write(postfix + "\n")


def format_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned plain-text columns, two spaces apart."""
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]

    def fmt(cells: Sequence[str]) -> str:
        return "  ".join(f"{cell:<{w}}" for cell, w in zip(cells, widths)).rstrip()

    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)
