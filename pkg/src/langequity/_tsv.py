"""Minimal reader for the tab-delimited data files.

All files share the same conventions: UTF-8, one header row, ``#`` comment
lines and blank lines ignored, columns addressed by header name.
"""

import math
from pathlib import Path

from .errors import MissingFile, ParseError


def read_rows(path, required, optional=()):
    """Yield ``(line_number, row)`` pairs, ``row`` being a column -> str dict.

    Missing optional columns are filled with ``""``.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"{path}: no such file")
    header = None
    with path.open(encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cells = [c.strip() for c in line.split("\t")]
            if header is None:
                header = [c.lower() for c in cells]
                missing = [c for c in required if c not in header]
                if missing:
                    raise ParseError(
                        f"missing column(s) {', '.join(missing)} in header", path, lineno
                    )
                continue
            if len(cells) > len(header):
                raise ParseError(
                    f"expected at most {len(header)} fields, got {len(cells)}", path, lineno
                )
            cells += [""] * (len(header) - len(cells))
            row = dict(zip(header, cells))
            for col in optional:
                row.setdefault(col, "")
            yield lineno, row


def parse_float(text, path, lineno, column):
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"column {column!r}: not a number: {text!r}", path, lineno) from None
    if not math.isfinite(value):
        raise ParseError(f"column {column!r}: not finite: {text!r}", path, lineno)
    return value


def split_list(text):
    """Split a pipe-separated list cell, dropping empty items."""
    return tuple(item.strip() for item in text.split("|") if item.strip())
