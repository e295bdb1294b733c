"""Reading and writing parity-check matrices in alist format.

Layout::

    n m
    max_col_deg max_row_deg
    <n column degrees>
    <m row degrees>
    n lines: 1-based check indices of each variable, 0-padded to max_col_deg
    m lines: 1-based variable indices of each check, 0-padded to max_row_deg
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

from .graph import GraphError, TannerGraph


class AlistError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _ints(line_no: int, text: str) -> list[int]:
    try:
        return [int(t) for t in text.split()]
    except ValueError:
        raise AlistError(line_no, f"non-integer token in {text!r}") from None


def loads(data: Union[bytes, str]) -> TannerGraph:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    # keep original numbering for error messages, skip blank lines
    lines = [(i + 1, ln) for i, ln in enumerate(data.splitlines()) if ln.strip()]
    pos = 0

    def take(what: str) -> tuple[int, list[int]]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise AlistError(last + 1, f"unexpected end of file, expected {what}")
        no, text = lines[pos]
        pos += 1
        return no, _ints(no, text)

    no, hdr = take("header 'n m'")
    if len(hdr) != 2 or min(hdr) < 0:
        raise AlistError(no, "malformed header, expected 'n m'")
    n, m = hdr
    no, mx = take("'max_col_deg max_row_deg'")
    if len(mx) != 2:
        raise AlistError(no, "expected two maximum degrees")
    max_col, max_row = mx
    no, col_deg = take("column degrees")
    if len(col_deg) != n:
        raise AlistError(no, f"expected {n} column degrees, got {len(col_deg)}")
    if n and max(col_deg) != max_col:
        raise AlistError(no, "column degrees disagree with max_col_deg")
    no, row_deg = take("row degrees")
    if len(row_deg) != m:
        raise AlistError(no, f"expected {m} row degrees, got {len(row_deg)}")
    if m and max(row_deg) != max_row:
        raise AlistError(no, "row degrees disagree with max_row_deg")

    var_adj: list[list[int]] = []
    for v in range(n):
        no, row = take(f"column {v + 1}")
        entries = [x for x in row if x != 0]
        if any(x != 0 for x in row[len(entries):]) or len(row) > max(max_col, 1):
            raise AlistError(no, "padding zeros must trail the column entries")
        if len(entries) != col_deg[v]:
            raise AlistError(no, f"column {v + 1} lists {len(entries)} entries, degree says {col_deg[v]}")
        if any(not 1 <= x <= m for x in entries):
            raise AlistError(no, "check index out of range")
        if len(set(entries)) != len(entries):
            raise AlistError(no, f"parallel edge in column {v + 1}")
        var_adj.append([x - 1 for x in entries])

    expect: list[set[int]] = [set() for _ in range(m)]
    for v, row in enumerate(var_adj):
        for c in row:
            expect[c].add(v)
    for c in range(m):
        no, row = take(f"row {c + 1}")
        entries = [x for x in row if x != 0]
        if any(x != 0 for x in row[len(entries):]) or len(row) > max(max_row, 1):
            raise AlistError(no, "padding zeros must trail the row entries")
        if len(entries) != row_deg[c]:
            raise AlistError(no, f"row {c + 1} lists {len(entries)} entries, degree says {row_deg[c]}")
        if len(set(entries)) != len(entries):
            raise AlistError(no, f"parallel edge in row {c + 1}")
        if {x - 1 for x in entries} != expect[c]:
            raise AlistError(no, f"row {c + 1} disagrees with the column lists")
    return TannerGraph.from_var_adj(m, var_adj)


def _padded(adj, width: int) -> str:
    cells = [str(x + 1) for x in adj] + ["0"] * (width - len(adj))
    return " ".join(cells) or "0"


def dumps(graph: TannerGraph) -> bytes:
    col = [len(r) for r in graph.var_adj]
    row = [len(r) for r in graph.check_adj]
    max_col = max(col, default=0)
    max_row = max(row, default=0)
    out = [f"{graph.n_vars} {graph.n_checks}", f"{max_col} {max_row}",
           " ".join(map(str, col)), " ".join(map(str, row))]
    for adj in graph.var_adj:
        out.append(_padded(adj, max_col))
    for adj in graph.check_adj:
        out.append(_padded(adj, max_row))
    return ("\n".join(out) + "\n").encode("ascii")


def load_alist(path) -> TannerGraph:
    return loads(Path(path).read_bytes())


def save_alist(graph: TannerGraph, path) -> None:
    Path(path).write_bytes(dumps(graph))
