"""Loop-free digraphs and undirected graphs on vertices ``0..n-1``.

Both types are immutable.  Adjacency is also exposed as integer bitmasks
(``out_masks[u]`` has bit ``v`` set iff ``u -> v``), which is what the
search routines in this package operate on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

Arc = tuple[int, int]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    """A loop-free digraph without multiple arcs."""

    n: int
    arcs: frozenset[Arc]

    def __init__(self, n: int, arcs: Iterable[Arc] = ()):
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "arcs", arcs)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_list(self) -> tuple[Arc, ...]:
        """Arcs in sorted order; positions define arc indices."""
        return tuple(sorted(self.arcs))

    @cached_property
    def arc_index(self) -> dict[Arc, int]:
        return {a: i for i, a in enumerate(self.arc_list)}

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def successors(self, u: int) -> list[int]:
        return list(_bits(self.out_masks[u]))

    def predecessors(self, v: int) -> list[int]:
        return list(_bits(self.in_masks[v]))

    def indegree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def outdegree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def degree(self, v: int) -> int:
        return self.indegree(v) + self.outdegree(v)

    def add_arc(self, u: int, v: int) -> "Digraph":
        return Digraph(self.n, self.arcs | {(u, v)})

    def remove_arc(self, u: int, v: int) -> "Digraph":
        return Digraph(self.n, self.arcs - {(u, v)})

    def relabel(self, perm) -> "Digraph":
        """Image under the vertex map ``v -> perm[v]``."""
        return Digraph(self.n, ((perm[u], perm[v]) for u, v in self.arcs))

    def induced(self, vertices) -> "Digraph":
        """Induced subdigraph, with vertices renumbered in sorted order."""
        keep = sorted(vertices)
        pos = {v: i for i, v in enumerate(keep)}
        return Digraph(
            len(keep),
            ((pos[u], pos[v]) for u, v in self.arcs if u in pos and v in pos),
        )

    def delete_vertex(self, v: int) -> "Digraph":
        return self.induced(w for w in range(self.n) if w != v)

    def reverse(self) -> "Digraph":
        return Digraph(self.n, ((v, u) for u, v in self.arcs))

    def underlying(self) -> "UndirectedGraph":
        return UndirectedGraph(self.n, self.arcs)


@dataclass(frozen=True)
class UndirectedGraph:
    """A simple undirected graph; edges are stored as ``(min, max)`` pairs."""

    n: int
    edges: frozenset[Arc]

    def __init__(self, n: int, edges: Iterable[Arc] = ()):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-edge at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def adj(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


# -- connectivity -----------------------------------------------------------


def _reach(masks, start: int, alive: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for u in _bits(frontier):
            nxt |= masks[u]
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _strong_on(D: Digraph, alive: int) -> bool:
    if alive == 0:
        return True
    start = (alive & -alive).bit_length() - 1
    return (
        _reach(D.out_masks, start, alive) == alive
        and _reach(D.in_masks, start, alive) == alive
    )


def is_strong(D: Digraph) -> bool:
    """True iff every vertex reaches every other vertex."""
    return _strong_on(D, (1 << D.n) - 1)


def is_strongly_k_connected(D: Digraph, k: int) -> bool:
    """Strong after deleting any ``k - 1`` or fewer vertices.

    Requires ``n >= k + 1``, the usual convention; without it the
    one- and two-vertex digraphs would count as 2-connected.
    """
    if D.n < k + 1:
        return False
    full = (1 << D.n) - 1
    for size in range(k):
        for removed in combinations(range(D.n), size):
            alive = full
            for v in removed:
                alive &= ~(1 << v)
            if not _strong_on(D, alive):
                return False
    return True


def is_strongly_2connected(D: Digraph) -> bool:
    return is_strongly_k_connected(D, 2)


def strong_components(D: Digraph) -> list[int]:
    """Strongly connected components as vertex bitmasks."""
    full = (1 << D.n) - 1
    left = full
    comps = []
    while left:
        v = (left & -left).bit_length() - 1
        comp = _reach(D.out_masks, v, full) & _reach(D.in_masks, v, full)
        comps.append(comp)
        left &= ~comp
    return comps


def is_connected(G: UndirectedGraph) -> bool:
    if G.n == 0:
        return True
    full = (1 << G.n) - 1
    return _reach(G.adj, 0, full) == full


def cut_vertices(G: UndirectedGraph) -> set[int]:
    """Vertices whose removal increases the number of components."""
    full = (1 << G.n) - 1

    def n_components(alive):
        count = 0
        while alive:
            v = (alive & -alive).bit_length() - 1
            alive &= ~_reach(G.adj, v, alive)
            count += 1
        return count

    base = n_components(full)
    return {
        v for v in range(G.n) if n_components(full & ~(1 << v)) > base
    }


def is_two_connected(G: UndirectedGraph) -> bool:
    """Standard biconnectivity: at least 3 vertices, connected, no cut vertex."""
    return G.n >= 3 and is_connected(G) and not cut_vertices(G)


# -- degree and density predicates -----------------------------------------


def degree_sequences(D: Digraph) -> tuple[tuple[int, ...], ...]:
    """Sorted indegree, outdegree and total-degree multisets."""
    ind = sorted(D.indegree(v) for v in range(D.n))
    outd = sorted(D.outdegree(v) for v in range(D.n))
    tot = sorted(D.degree(v) for v in range(D.n))
    return tuple(ind), tuple(outd), tuple(tot)


def is_symmetric(D: Digraph) -> bool:
    return all((v, u) in D.arcs for u, v in D.arcs)


def is_semi_complete(D: Digraph) -> bool:
    out = D.out_masks
    for u, v in combinations(range(D.n), 2):
        if not (out[u] >> v & 1 or out[v] >> u & 1):
            return False
    return True


def is_dense(D: Digraph) -> bool:
    """Semi-complete, or every vertex has total degree at least ``n``."""
    if is_semi_complete(D):
        return True
    return all(D.degree(v) >= D.n for v in range(D.n))


def symmetrize(G: UndirectedGraph) -> Digraph:
    """The symmetric digraph with both orientations of every edge."""
    arcs = set()
    for u, v in G.edges:
        arcs.add((u, v))
        arcs.add((v, u))
    return Digraph(G.n, arcs)


# -- the two closure operations ---------------------------------------------


def subdivide(D: Digraph, arc: Arc) -> Digraph:
    """Replace ``u -> v`` by ``u -> w -> v`` through a new vertex ``w = n``."""
    u, v = arc
    if arc not in D.arcs:
        raise ValueError(f"arc {arc} not in digraph")
    w = D.n
    return Digraph(D.n + 1, (D.arcs - {arc}) | {(u, w), (w, v)})


def split(D: Digraph, v: int) -> Digraph:
    """Split ``v`` into ``v1 = v`` (keeps in-arcs) and ``v2 = n`` (takes out-arcs)."""
    if not 0 <= v < D.n:
        raise ValueError(f"vertex {v} not in digraph")
    v2 = D.n
    arcs = set()
    for a, b in D.arcs:
        if a == v:
            arcs.add((v2, b))
        else:
            arcs.add((a, b))
    arcs.add((v, v2))
    return Digraph(D.n + 1, arcs)


def double_cycle(k: int) -> Digraph:
    """``C_k*``: both orientations of a k-cycle (``C_2*`` is a single 2-cycle)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    arcs = set()
    for i in range(k):
        j = (i + 1) % k
        arcs.add((i, j))
        arcs.add((j, i))
    return Digraph(k, arcs)
