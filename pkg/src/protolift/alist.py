"""Graph file formats: standard alist and the JSON multigraph carrier.

alist is the usual plain-text interchange format for binary parity
check matrices.  It cannot express parallel edges, so the writer
rejects multigraphs; the JSON format carries the explicit edge list and
is lossless.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import FormatError
from .graph import TannerGraph, from_multiplicity_matrix

GRAPH_FORMAT = "tanner-graph"
GRAPH_VERSION = 1


def write_alist(g: TannerGraph, path) -> None:
    """Write the parity-check matrix of g in alist format.

    Raises:
        FormatError: if g has parallel edges (alist cannot express
            multiplicity > 1).
    """
    mult = g.multiplicity_matrix()
    if mult.size and int(mult.max()) > 1:
        raise FormatError("alist cannot express parallel edges; use the JSON format")
    h = mult.astype(np.uint8)  # num_checks x num_vars, entries 0/1
    m, n = h.shape
    col_deg = h.sum(axis=0)
    row_deg = h.sum(axis=1)
    max_col = int(col_deg.max()) if n else 0
    max_row = int(row_deg.max()) if m else 0

    lines = [
        f"{n} {m}",
        f"{max_col} {max_row}",
        " ".join(str(int(d)) for d in col_deg),
        " ".join(str(int(d)) for d in row_deg),
    ]
    for v in range(n):
        idx = [str(c + 1) for c in np.nonzero(h[:, v])[0]]
        idx += ["0"] * (max_col - len(idx))
        lines.append(" ".join(idx) or "0")  # never emit a blank line
    for c in range(m):
        idx = [str(v + 1) for v in np.nonzero(h[c, :])[0]]
        idx += ["0"] * (max_row - len(idx))
        lines.append(" ".join(idx) or "0")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_alist(path) -> TannerGraph:
    """Read an alist file into a TannerGraph.

    Edge ids follow the canonical row-major layout of
    ``from_multiplicity_matrix``, so read/write round-trips are exact.
    """
    text = Path(path).read_text(encoding="utf-8")
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if len(rows) < 4:
        raise FormatError(f"{path}: truncated alist header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        max_col, max_row = int(rows[1][0]), int(rows[1][1])
        col_deg = [int(x) for x in rows[2]]
        row_deg = [int(x) for x in rows[3]]
    except (IndexError, ValueError) as exc:
        raise FormatError(f"{path}: malformed alist header: {exc}") from exc
    if len(col_deg) != n or len(row_deg) != m:
        raise FormatError(f"{path}: degree line lengths do not match N M")
    if len(rows) < 4 + n + m:
        raise FormatError(f"{path}: expected {4 + n + m} lines, got {len(rows)}")

    h = np.zeros((m, n), dtype=np.uint8)
    for v in range(n):
        entries = [int(x) for x in rows[4 + v]]
        live = [e for e in entries if e != 0]
        if len(live) != col_deg[v] or any(not (1 <= e <= m) for e in live):
            raise FormatError(f"{path}: bad column list for variable {v}")
        for c in live:
            h[c - 1, v] = 1
    for c in range(m):
        entries = [int(x) for x in rows[4 + n + c]]
        live = [e for e in entries if e != 0]
        if sorted(live) != sorted(int(v) + 1 for v in np.nonzero(h[c, :])[0]):
            raise FormatError(f"{path}: row list for check {c} disagrees with columns")
    if max_col != (int(h.sum(axis=0).max()) if n else 0):
        raise FormatError(f"{path}: stated max column degree is wrong")
    if max_row != (int(h.sum(axis=1).max()) if m else 0):
        raise FormatError(f"{path}: stated max row degree is wrong")
    return from_multiplicity_matrix(h)


def graph_to_json_dict(g: TannerGraph) -> dict:
    return {
        "format": GRAPH_FORMAT,
        "version": GRAPH_VERSION,
        "num_vars": g.num_vars,
        "num_checks": g.num_checks,
        "edges": [[v, c] for v, c in g.edges],
    }


def graph_from_json_dict(d: dict) -> TannerGraph:
    if d.get("format") != GRAPH_FORMAT:
        raise FormatError(f"not a {GRAPH_FORMAT} document: format={d.get('format')!r}")
    if d.get("version") != GRAPH_VERSION:
        raise FormatError(f"unsupported {GRAPH_FORMAT} version {d.get('version')!r}")
    try:
        return TannerGraph(
            num_vars=int(d["num_vars"]),
            num_checks=int(d["num_checks"]),
            edges=tuple((int(v), int(c)) for v, c in d["edges"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {GRAPH_FORMAT} document: {exc}") from exc


def write_graph_json(g: TannerGraph, path) -> None:
    Path(path).write_text(
        json.dumps(graph_to_json_dict(g), sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )


def read_graph_json(path) -> TannerGraph:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    return graph_from_json_dict(doc)
