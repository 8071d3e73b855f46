"""Reading and writing sparse parity-check matrices in alist text form.

Layout: line 1 is ``N M``; line 2 the maximum variable and check degrees;
lines 3 and 4 the per-variable and per-check degrees; then N adjacency
lines of 1-indexed check ids and M adjacency lines of 1-indexed variable
ids.  Adjacency lines are zero-padded to the maximum degree; zeros are
ignored on input.
"""

from __future__ import annotations

import os

from .errors import AlistParseError
from .tanner import TannerGraph


def _ints(tokens: list[str], lineno: int) -> list[int]:
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise AlistParseError(f"non-integer token {tok!r}", line=lineno) from None
    return out


def load_alist(path: str | os.PathLike) -> TannerGraph:
    """Parse an alist file into a TannerGraph.

    Raises AlistParseError (carrying the offending line number) for
    malformed counts, out-of-range indices, parallel edges, or adjacency
    halves that disagree with each other.
    """
    with open(path, "r", encoding="ascii") as fh:
        raw = fh.read().splitlines()
    lines = [(i + 1, line.split()) for i, line in enumerate(raw)]
    lines = [(no, toks) for no, toks in lines if toks]
    if len(lines) < 4:
        raise AlistParseError("file too short for an alist header")

    no, toks = lines[0]
    head = _ints(toks, no)
    if len(head) != 2 or head[0] < 1 or head[1] < 1:
        raise AlistParseError("expected 'N M' with positive counts", line=no)
    n_vars, n_checks = head

    no, toks = lines[1]
    maxdeg = _ints(toks, no)
    if len(maxdeg) != 2 or min(maxdeg) < 0:
        raise AlistParseError("expected maximum variable and check degrees", line=no)

    no, toks = lines[2]
    var_degs = _ints(toks, no)
    if len(var_degs) != n_vars:
        raise AlistParseError(f"expected {n_vars} variable degrees, got {len(var_degs)}",
                              line=no)
    no, toks = lines[3]
    chk_degs = _ints(toks, no)
    if len(chk_degs) != n_checks:
        raise AlistParseError(f"expected {n_checks} check degrees, got {len(chk_degs)}",
                              line=no)

    if len(lines) != 4 + n_vars + n_checks:
        raise AlistParseError(
            f"expected {4 + n_vars + n_checks} non-empty lines, found {len(lines)}"
        )

    var_adj: list[list[int]] = []
    for v in range(n_vars):
        no, toks = lines[4 + v]
        entries = [x for x in _ints(toks, no) if x != 0]
        if len(entries) != var_degs[v]:
            raise AlistParseError(
                f"variable {v + 1} lists {len(entries)} checks, degree says {var_degs[v]}",
                line=no)
        if any(not 1 <= c <= n_checks for c in entries):
            raise AlistParseError(f"check index out of range 1..{n_checks}", line=no)
        if len(set(entries)) != len(entries):
            raise AlistParseError(f"variable {v + 1} repeats a check (parallel edge)",
                                  line=no)
        var_adj.append(entries)

    chk_adj: list[list[int]] = []
    for c in range(n_checks):
        no, toks = lines[4 + n_vars + c]
        entries = [x for x in _ints(toks, no) if x != 0]
        if len(entries) != chk_degs[c]:
            raise AlistParseError(
                f"check {c + 1} lists {len(entries)} variables, degree says {chk_degs[c]}",
                line=no)
        if any(not 1 <= v <= n_vars for v in entries):
            raise AlistParseError(f"variable index out of range 1..{n_vars}", line=no)
        if len(set(entries)) != len(entries):
            raise AlistParseError(f"check {c + 1} repeats a variable (parallel edge)",
                                  line=no)
        chk_adj.append(entries)

    from_vars = {(v, c - 1) for v, row in enumerate(var_adj) for c in row}
    from_chks = {(v - 1, c) for c, row in enumerate(chk_adj) for v in row}
    if from_vars != from_chks:
        raise AlistParseError("variable and check adjacency halves disagree")
    return TannerGraph(n_vars, n_checks, sorted(from_chks))


def save_alist(g: TannerGraph, path: str | os.PathLike) -> None:
    """Write the canonical zero-padded alist representation of a graph."""
    var_degs = g.var_degrees
    chk_degs = g.check_degrees
    max_v = int(var_degs.max()) if g.n_vars else 0
    max_c = int(chk_degs.max()) if g.n_checks else 0
    lines = [
        f"{g.n_vars} {g.n_checks}",
        f"{max_v} {max_c}",
        " ".join(str(int(d)) for d in var_degs),
        " ".join(str(int(d)) for d in chk_degs),
    ]
    for v in range(g.n_vars):
        row = [int(c) + 1 for c in g.var_neighbors(v)]
        row += [0] * (max_v - len(row))
        lines.append(" ".join(map(str, row)))
    for c in range(g.n_checks):
        row = [int(v) + 1 for v in g.check_neighbors(c)]
        row += [0] * (max_c - len(row))
        lines.append(" ".join(map(str, row)))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
