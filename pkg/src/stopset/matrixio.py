"""Matrix file formats: dense text and the sparse alist interchange format.

Text format: first line "m n", then m lines of exactly n characters from
{0,1}.  Any other character is rejected.

Alist format (as used by LDPC tooling): first line "n m", second line
max column/row degrees, then per-column and per-row degree lists followed
by 1-based index lists (zero padding entries are tolerated and ignored).
"""

from __future__ import annotations

import io
from pathlib import Path

from stopset.gf2 import BinaryMatrix


def _open_read(path_or_file):
    if hasattr(path_or_file, "read"):
        return path_or_file, False
    return open(path_or_file, "r", encoding="ascii"), True


def read_matrix_text(path_or_file) -> BinaryMatrix:
    fh, owned = _open_read(path_or_file)
    try:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("text matrix header must be 'm n'")
        m, n = (int(t) for t in header)
        if m < 1 or n < 1:
            raise ValueError("matrix dimensions must satisfy m, n >= 1")
        masks = []
        for i in range(m):
            line = fh.readline().strip()
            if len(line) != n:
                raise ValueError(f"row {i + 1} has {len(line)} characters, expected {n}")
            if set(line) - {"0", "1"}:
                raise ValueError(f"row {i + 1} contains characters outside 0/1")
            masks.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
        return BinaryMatrix(masks, n)
    finally:
        if owned:
            fh.close()


def write_matrix_text(H: BinaryMatrix, path_or_file) -> None:
    if hasattr(path_or_file, "write"):
        fh, owned = path_or_file, False
    else:
        fh, owned = open(path_or_file, "w", encoding="ascii"), True
    try:
        fh.write(f"{H.m} {H.n}\n")
        for i in range(H.m):
            fh.write("".join(str(b) for b in H.row(i)) + "\n")
    finally:
        if owned:
            fh.close()


def matrix_text(H: BinaryMatrix) -> str:
    buf = io.StringIO()
    write_matrix_text(H, buf)
    return buf.getvalue()


def read_alist(path_or_file) -> BinaryMatrix:
    fh, owned = _open_read(path_or_file)
    try:
        tokens_by_line = [line.split() for line in fh.read().splitlines() if line.strip()]
    finally:
        if owned:
            fh.close()
    rows_of_ints = [[int(t) for t in line] for line in tokens_by_line]
    if not rows_of_ints or len(rows_of_ints[0]) < 2:
        raise ValueError("alist header must be 'n m'")
    n, m = rows_of_ints[0][0], rows_of_ints[0][1]
    if n < 1 or m < 1:
        raise ValueError("matrix dimensions must satisfy m, n >= 1")
    if len(rows_of_ints) < 4 + n:
        raise ValueError("alist file truncated")
    col_degrees = rows_of_ints[2]
    if len(col_degrees) != n:
        raise ValueError("alist column degree list has wrong length")
    masks = [0] * m
    for col in range(n):
        entries = rows_of_ints[4 + col][: col_degrees[col]]
        for r in entries:
            if r == 0:
                continue  # zero padding
            if not 1 <= r <= m:
                raise ValueError(f"alist row index {r} out of range")
            masks[r - 1] |= 1 << col
    return BinaryMatrix(masks, n)


def write_alist(H: BinaryMatrix, path_or_file) -> None:
    if hasattr(path_or_file, "write"):
        fh, owned = path_or_file, False
    else:
        fh, owned = open(path_or_file, "w", encoding="ascii"), True
    try:
        cols = [[i + 1 for i in range(H.m) if (H.row_masks[i] >> j) & 1] for j in range(H.n)]
        rows = [[j + 1 for j in range(H.n) if (H.row_masks[i] >> j) & 1] for i in range(H.m)]
        def index_line(indices):
            return (" ".join(str(i) for i in indices) if indices else "0") + "\n"

        fh.write(f"{H.n} {H.m}\n")
        fh.write(f"{max((len(c) for c in cols), default=0)} "
                 f"{max((len(r) for r in rows), default=0)}\n")
        fh.write(" ".join(str(len(c)) for c in cols) + "\n")
        fh.write(" ".join(str(len(r)) for r in rows) + "\n")
        for c in cols:
            fh.write(index_line(c))
        for r in rows:
            fh.write(index_line(r))
    finally:
        if owned:
            fh.close()


def load_matrix(path) -> BinaryMatrix:
    """Read a matrix file, dispatching on extension: .alist -> alist,
    anything else -> dense text."""
    p = Path(path)
    if p.suffix == ".alist":
        return read_alist(p)
    return read_matrix_text(p)
