"""Graph families: symmetric digraphs, C4-cockades, extended caterpillars, W4."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .canon import canonical_mask
from .digraph import (
    Digraph,
    UndirectedGraph,
    cut_vertices,
    double_cycle,
    is_dense,
    is_semi_complete,
    is_strong,
    is_strongly_2connected,
    is_two_connected,
    split,
    subdivide,
    symmetrize,
)
from .embed import find_embedding
from .exceptions import NotTwoConnected, SearchSpaceTooLarge

__all__ = [
    "CaterpillarSpec",
    "CockadeSpec",
    "GraphParity",
    "build_cockade",
    "build_extended_caterpillar",
    "caterpillar_specs",
    "cut_vertices",
    "cycle_graph",
    "double_cycle",
    "extended_caterpillars",
    "is_cockade",
    "is_cockade_subgraph",
    "is_dense",
    "is_even_2connected_graph",
    "is_extended_caterpillar_subdigraph",
    "is_semi_complete",
    "is_strong",
    "is_strongly_2connected",
    "reduced_cycles",
    "split",
    "subdivide",
    "symmetrize",
    "w4",
]

CATERPILLAR_MAX_N = 7


def cycle_graph(n: int) -> UndirectedGraph:
    if n == 2:
        return UndirectedGraph(2, [(0, 1)])
    return UndirectedGraph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, combinations(range(n), 2))


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, ((i, i + 1) for i in range(n - 1)))


# -- C4-cockades ------------------------------------------------------------------


@dataclass(frozen=True)
class CockadeSpec:
    """Attachment steps applied to ``C_4`` on vertices ``0-1-2-3-0``.

    Step ``t`` names an existing edge ``(u, v)`` and attaches new vertices
    ``u' = 4 + 2t`` and ``v' = 5 + 2t`` with edges ``u-u'``, ``u'-v'``, ``v'-v``.
    """

    steps: tuple[tuple[int, int], ...] = field(default=())

    def __init__(self, steps: Sequence[tuple[int, int]] = ()):
        object.__setattr__(self, "steps", tuple((int(u), int(v)) for u, v in steps))


def build_cockade(spec: CockadeSpec) -> UndirectedGraph:
    edges = {(0, 1), (1, 2), (2, 3), (0, 3)}
    n = 4
    for t, (u, v) in enumerate(spec.steps):
        if (min(u, v), max(u, v)) not in edges:
            raise ValueError(f"step {t}: edge ({u}, {v}) does not exist")
        up, vp = n, n + 1
        n += 2
        for a, b in ((u, up), (up, vp), (vp, v)):
            edges.add((min(a, b), max(a, b)))
    return UndirectedGraph(n, edges)


# -- Harary / Thomassen three-paths criterion ----------------------------------------


@dataclass(frozen=True)
class GraphParity:
    """Verdict of the odd-cycle / three-paths test.

    ``paths`` holds three internally disjoint paths (one of even length)
    when that branch fired; ``odd_cycle`` marks the ``C_n``, ``n`` odd branch.
    """

    even: bool
    odd_cycle: bool = False
    paths: tuple[tuple[int, ...], ...] = ()

    def __bool__(self):
        return self.even


def _simple_paths(G: UndirectedGraph, a: int, b: int) -> list[tuple[int, ...]]:
    out = []
    path = [a]

    def walk(u, visited):
        for v in G.neighbors(u):
            if v == b:
                out.append(tuple(path) + (b,))
            elif not visited >> v & 1:
                path.append(v)
                walk(v, visited | 1 << v)
                path.pop()

    walk(a, 1 << a)
    return out


def _interior(p) -> int:
    mask = 0
    for v in p[1:-1]:
        mask |= 1 << v
    return mask


def three_disjoint_paths(G: UndirectedGraph):
    """Vertex pair joined by three internally disjoint paths, one of even length.

    Returns the three paths, or None.  Exhaustive backtracking over simple paths.
    """
    for a, b in combinations(range(G.n), 2):
        paths = _simple_paths(G, a, b)
        if len(paths) < 3:
            continue
        interiors = [_interior(p) for p in paths]
        for i, p in enumerate(paths):
            if (len(p) - 1) % 2:
                continue
            rest = [j for j in range(len(paths)) if j != i and not interiors[j] & interiors[i]]
            for x, y in combinations(rest, 2):
                if not interiors[x] & interiors[y]:
                    return (p, paths[x], paths[y])
    return None


def _require_two_connected(G: UndirectedGraph):
    if not is_two_connected(G):
        raise NotTwoConnected(f"graph on {G.n} vertices is not 2-connected")


def is_even_2connected_graph(G: UndirectedGraph) -> GraphParity:
    """Even iff ``G`` is an odd cycle or has a three-paths configuration.

    Raises
    ------
    NotTwoConnected
    """
    _require_two_connected(G)
    if all(G.degree(v) == 2 for v in range(G.n)):
        return GraphParity(G.n % 2 == 1, odd_cycle=G.n % 2 == 1)
    triple = three_disjoint_paths(G)
    if triple is not None:
        return GraphParity(True, paths=triple)
    return GraphParity(False)


def graph_cycles(G: UndirectedGraph) -> Iterator[tuple[int, ...]]:
    """Simple cycles of length >= 3, each once: least vertex first, then the smaller neighbour."""
    for s in range(G.n):
        path = [s]

        def walk(u, visited):
            for v in G.neighbors(u):
                if v == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif v > s and not visited >> v & 1:
                    path.append(v)
                    yield from walk(v, visited | 1 << v)
                    path.pop()

        yield from walk(s, 1 << s)


def reduced_cycles(G: UndirectedGraph) -> list[tuple[int, ...]]:
    """Cycles whose vertex set induces exactly the cycle (no chords)."""
    out = []
    for cyc in graph_cycles(G):
        vs = set(cyc)
        induced = sum(1 for u, v in G.edges if u in vs and v in vs)
        if induced == len(cyc):
            out.append(cyc)
    return out


def is_cockade_subgraph(G: UndirectedGraph) -> bool:
    """2-connected ``G`` is noneven, i.e. a subgraph of a C4-cockade."""
    return not is_even_2connected_graph(G).even


def is_cockade(G: UndirectedGraph) -> bool:
    """A C4-cockade: a cockade subgraph all of whose reduced cycles have length 4."""
    if not is_cockade_subgraph(G):
        return False
    return all(len(c) == 4 for c in reduced_cycles(G))


# -- extended caterpillars -------------------------------------------------------------


@dataclass(frozen=True)
class CaterpillarSpec:
    """Backbone ``x_1..x_k`` with ``blossoms[j-2]`` pendants hung on ``x_j``, ``2 <= j <= k-1``."""

    k: int
    blossoms: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blossoms", tuple(int(b) for b in self.blossoms))
        if self.k < 2:
            raise ValueError("backbone length must be at least 2")
        if len(self.blossoms) != max(self.k - 2, 0):
            raise ValueError(f"expected {self.k - 2} blossom counts, got {len(self.blossoms)}")
        if any(b < 0 for b in self.blossoms):
            raise ValueError("blossom counts must be nonnegative")

    @property
    def n(self) -> int:
        return self.k + sum(self.blossoms)


def caterpillar_layout(spec: CaterpillarSpec) -> list[int]:
    """Backbone position (1-based) of every vertex's blossom.

    Vertices ``0..k-1`` are ``x_1..x_k``; pendants follow, blossom by blossom.
    """
    pos = list(range(1, spec.k + 1))
    for j, count in enumerate(spec.blossoms, start=2):
        pos.extend([j] * count)
    return pos


def build_extended_caterpillar(spec: CaterpillarSpec) -> Digraph:
    """Symmetric tree arcs, every descending arc between blossoms, and a
    transitive tournament (higher creation index to lower) among each
    blossom's pendants."""
    k = spec.k
    pos = caterpillar_layout(spec)
    n = len(pos)
    arcs = set()
    tree = [(i, i + 1) for i in range(k - 1)]
    for p in range(k, n):
        tree.append((pos[p] - 1, p))
    for u, v in tree:
        arcs.add((u, v))
        arcs.add((v, u))
    for u in range(n):
        for v in range(n):
            if pos[u] > pos[v]:
                arcs.add((u, v))
    for u in range(k, n):
        for v in range(k, u):
            if pos[u] == pos[v]:
                arcs.add((u, v))
    return Digraph(n, arcs)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def caterpillar_specs(n: int) -> Iterator[CaterpillarSpec]:
    """Every spec with ``n`` vertices."""
    if n == 2:
        yield CaterpillarSpec(2)
    for k in range(3, n + 1):
        for b in _compositions(n - k, k - 2):
            yield CaterpillarSpec(k, b)


@lru_cache(maxsize=None)
def extended_caterpillars(n: int) -> tuple[Digraph, ...]:
    """One extended caterpillar per isomorphism class on ``n`` vertices."""
    seen = {}
    for spec in caterpillar_specs(n):
        E = build_extended_caterpillar(spec)
        seen.setdefault(canonical_mask(E), E)
    return tuple(seen[k] for k in sorted(seen))


def is_extended_caterpillar(D: Digraph) -> bool:
    if D.n > CATERPILLAR_MAX_N:
        raise SearchSpaceTooLarge(f"caterpillar search refused for n={D.n} > {CATERPILLAR_MAX_N}")
    key = canonical_mask(D)
    return any(canonical_mask(E) == key for E in extended_caterpillars(D.n))


def is_extended_caterpillar_subdigraph(D: Digraph) -> bool:
    """``D`` embeds into some extended caterpillar on the same number of vertices.

    The one-vertex digraph counts as a subdigraph of ``C_2*``.
    """
    if D.n > CATERPILLAR_MAX_N:
        raise SearchSpaceTooLarge(f"caterpillar search refused for n={D.n} > {CATERPILLAR_MAX_N}")
    if D.n <= 1:
        return True
    return any(find_embedding(D, E) is not None for E in extended_caterpillars(D.n))


# -- W4 ---------------------------------------------------------------------------------

_W4_ARCS = ((0, 2), (0, 3), (1, 0), (1, 3), (2, 0), (2, 1), (3, 1), (3, 2))


def w4() -> Digraph:
    """The 4-vertex semi-complete, strongly 2-connected noneven digraph.

    Two 2-cycles ``0<->2`` and ``1<->3`` plus the 4-cycle ``0->3->2->1->0``.
    """
    return Digraph(4, _W4_ARCS)
