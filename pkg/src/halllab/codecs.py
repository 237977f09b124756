"""Graph text formats.

The native format is a plain edge list: a header line "n m" followed by m
lines "u v" (0-based ids). Emission is canonical (u < v, lexicographically
sorted), parsing is strict and reports 1-based line numbers. DIMACS .col
files can be read for convenience; that parser is permissive about repeated
edges the way published benchmark files need it to be.
"""

from .errors import CodecError
from .graph import build_graph


def emit_edge_list(graph):
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edge_array())
    return "\n".join(lines) + "\n"


def parse_edge_list(text):
    lines = text.splitlines()
    row = 0
    header = None
    for row, raw in enumerate(lines, start=1):
        s = raw.strip()
        if s:
            header = s
            break
    if header is None:
        raise CodecError("empty input, expected 'n m' header", line=1)
    parts = header.split()
    if len(parts) != 2:
        raise CodecError(f"expected 'n m' header, got {header!r}", line=row)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise CodecError(f"non-integer header {header!r}", line=row) from None
    if n < 0 or m < 0:
        raise CodecError("negative count in header", line=row)
    edges = []
    seen = {}
    for lineno in range(row + 1, len(lines) + 1):
        s = lines[lineno - 1].strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 2:
            raise CodecError(f"expected 'u v', got {s!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise CodecError(f"non-integer edge {s!r}", line=lineno) from None
        if u == v:
            raise CodecError(f"self-loop ({u}, {u})", line=lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise CodecError(f"vertex id out of range in edge ({u}, {v})",
                             line=lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise CodecError(
                f"duplicate edge ({u}, {v}), first seen on line {seen[key]}",
                line=lineno)
        seen[key] = lineno
        edges.append(key)
    if len(edges) != m:
        raise CodecError(f"header announced {m} edges, found {len(edges)}",
                         line=row)
    return build_graph(n, edges)


def parse_dimacs(text):
    """Read a DIMACS .col graph ('c' comments, 'p edge n m', 'e u v',
    1-based ids). Repeated edge lines are collapsed."""
    n = None
    declared_m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        parts = s.split()
        if parts[0] == "p":
            if n is not None:
                raise CodecError("second problem line", line=lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "col"):
                raise CodecError(f"bad problem line {s!r}", line=lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise CodecError(f"bad problem line {s!r}", line=lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise CodecError("edge before problem line", line=lineno)
            if len(parts) != 3:
                raise CodecError(f"bad edge line {s!r}", line=lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise CodecError(f"bad edge line {s!r}", line=lineno) from None
            if u == v:
                raise CodecError(f"self-loop at vertex {u + 1}", line=lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise CodecError(f"vertex id out of range in edge line {s!r}",
                                 line=lineno)
            edges.append((u, v))
        else:
            raise CodecError(f"unrecognized line {s!r}", line=lineno)
    if n is None:
        raise CodecError("missing problem line", line=1)
    return build_graph(n, edges)


def load_graph(path):
    """Read a graph file, sniffing DIMACS vs edge list from the first
    meaningful line."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_graph_text(text)


def parse_graph_text(text):
    for raw in text.splitlines():
        s = raw.strip()
        if not s:
            continue
        if s.startswith("c") or s.startswith("p"):
            return parse_dimacs(text)
        return parse_edge_list(text)
    return parse_edge_list(text)


def save_graph(graph, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_edge_list(graph))
