"""Plain-text matrix files.

One matrix row per line, entries separated by whitespace, matrices separated
by blank lines.  ``#`` starts a comment that runs to the end of the line.
Entries are written with 17 significant digits, which round-trips doubles
exactly.
"""

import re

import numpy as np

from .errors import NonPositiveEntry, ParseError

__all__ = ["parse_matrices", "read_matrices", "format_matrix", "format_matrices", "write_matrices", "fmt"]

_TOKEN = re.compile(r"\S+")


def fmt(value):
    """Round-trip safe decimal representation of a float."""
    return f"{float(value):.17g}"


def parse_matrices(text):
    """Parse every matrix in ``text``; raises `ParseError` with 1-based line/column."""
    matrices = []
    block = []  # (line number, row values)

    def flush():
        if not block:
            return
        width = len(block[0][1])
        for lineno, row in block:
            if len(row) != width:
                raise ParseError(
                    f"row has {len(row)} entries, expected {width} like line {block[0][0]}", lineno
                )
        arr = np.array([row for _, row in block], dtype=float)
        bad = ~(np.isfinite(arr) & (arr > 0))
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise NonPositiveEntry(
                (i, j), arr[i, j].item(), context=f"matrix {len(matrices) + 1}, line {block[i][0]}"
            )
        matrices.append(arr)
        block.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = list(_TOKEN.finditer(line))
        if not tokens:
            # a comment-only line does not end a matrix
            if not raw.strip():
                flush()
            continue
        row = []
        for tok in tokens:
            try:
                row.append(float(tok.group()))
            except ValueError:
                raise ParseError(f"not a number: {tok.group()!r}", lineno, tok.start() + 1) from None
        block.append((lineno, row))
    flush()
    return matrices


def read_matrices(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrices(fh.read())


def format_matrix(a):
    return "\n".join(" ".join(fmt(x) for x in row) for row in np.atleast_2d(a)) + "\n"


def format_matrices(matrices):
    return "\n".join(format_matrix(a) for a in matrices)


def write_matrices(path, matrices):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrices(matrices))
