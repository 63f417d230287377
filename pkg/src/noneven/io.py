"""Text formats for patterns, digraphs and witnesses.

Pattern file::

    n
    n rows of n tokens from {-1, 0, 1} (or -, 0, +)

Digraph (or undirected graph) file::

    n m
    m lines "u v [w]" with 1-based vertices and optional 0/1 weight
"""

from __future__ import annotations

import numpy as np

from .digraph import Digraph, UndirectedGraph
from .exceptions import ParseError
from .pattern import SignPattern, WeightedDigraph

_SIGN_TOKENS = {"-1": -1, "0": 0, "1": 1, "-": -1, "+": 1}


def _content_lines(text: str):
    return [(i + 1, line) for i, line in enumerate(text.splitlines()) if line.strip()]


def _int_token(tok: str, lineno: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None


def _columns(line: str):
    """Tokens with their 1-based starting column."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_pattern(text: str) -> SignPattern:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty pattern file", 1, 1)
    lineno, first = lines[0]
    head = _columns(first)
    if len(head) != 1:
        raise ParseError("first line must hold only the order n", lineno, 1)
    n = _int_token(head[0][0], lineno, head[0][1])
    if n < 1:
        raise ParseError("order must be positive", lineno, head[0][1])
    if len(lines) != n + 1:
        where = lines[min(len(lines) - 1, n + 1)][0] if len(lines) > 1 else lineno
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}", where, 1)
    rows = []
    for lineno, line in lines[1:]:
        toks = _columns(line)
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno, 1)
        row = []
        for tok, col in toks:
            if tok not in _SIGN_TOKENS:
                raise ParseError(f"invalid sign token {tok!r}", lineno, col)
            row.append(_SIGN_TOKENS[tok])
        rows.append(row)
    return SignPattern(rows)


def format_pattern(H: SignPattern) -> str:
    lines = [str(H.n)]
    lines += [" ".join(str(int(x)) for x in row) for row in H.entries]
    return "\n".join(lines) + "\n"


def _parse_arc_file(text: str):
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty digraph file", 1, 1)
    lineno, first = lines[0]
    head = _columns(first)
    if len(head) != 2:
        raise ParseError('first line must be "n m"', lineno, 1)
    n = _int_token(head[0][0], lineno, head[0][1])
    m = _int_token(head[1][0], lineno, head[1][1])
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", lineno, 1)
    if len(lines) != m + 1:
        raise ParseError(f"expected {m} arc lines, found {len(lines) - 1}", lines[-1][0], 1)
    arcs = []
    weights = []
    for lineno, line in lines[1:]:
        toks = _columns(line)
        if len(toks) not in (2, 3):
            raise ParseError('arc line must be "u v" or "u v w"', lineno, 1)
        u = _int_token(toks[0][0], lineno, toks[0][1])
        v = _int_token(toks[1][0], lineno, toks[1][1])
        for x, (_, col) in ((u, toks[0]), (v, toks[1])):
            if not 1 <= x <= n:
                raise ParseError(f"vertex {x} out of range 1..{n}", lineno, col)
        if u == v:
            raise ParseError("self-loops are not allowed", lineno, toks[1][1])
        w = None
        if len(toks) == 3:
            if toks[2][0] not in ("0", "1"):
                raise ParseError("weight must be 0 or 1", lineno, toks[2][1])
            w = int(toks[2][0])
        if (u - 1, v - 1) in arcs:
            raise ParseError(f"duplicate arc {u} {v}", lineno, 1)
        arcs.append((u - 1, v - 1))
        weights.append(w)
    return n, arcs, weights


def parse_digraph(text: str) -> Digraph:
    n, arcs, _ = _parse_arc_file(text)
    return Digraph(n, arcs)


def parse_weighted_digraph(text: str) -> WeightedDigraph:
    n, arcs, weights = _parse_arc_file(text)
    if any(w is None for w in weights):
        raise ParseError("every arc needs a weight in a weighted digraph file")
    return WeightedDigraph(Digraph(n, arcs), dict(zip(arcs, weights)))


def parse_graph(text: str) -> UndirectedGraph:
    n, arcs, _ = _parse_arc_file(text)
    seen = set()
    for u, v in arcs:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u + 1} {v + 1}")
        seen.add(key)
    return UndirectedGraph(n, arcs)


def format_digraph(D, weights=None) -> str:
    """Digraph file text; ``D`` may be a Digraph, WeightedDigraph or UndirectedGraph."""
    if isinstance(D, WeightedDigraph):
        weights, D = D.weight, D.base
    pairs = sorted(D.edges) if isinstance(D, UndirectedGraph) else list(D.arc_list)
    lines = [f"{D.n} {len(pairs)}"]
    for u, v in pairs:
        line = f"{u + 1} {v + 1}"
        if weights is not None:
            line += f" {weights[(u, v)]}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def plain(x: float) -> str:
    """Plain decimal, no exponent."""
    return np.format_float_positional(float(x), trim="-")


def format_matrix(M) -> str:
    return "\n".join(" ".join(plain(x) for x in row) for row in np.asarray(M))


def format_witness(W) -> str:
    """Labeled block: ``A:`` rows, ``D:`` rows, ``residual: <value>``."""
    return (
        "A:\n" + format_matrix(W.A) + "\n"
        "D:\n" + format_matrix(W.D) + "\n"
        f"residual: {plain(W.residual)}\n"
    )
