"""Canonical labels and isomorphism-class enumeration for small digraphs.

A labeled digraph on ``n`` vertices is encoded as an adjacency bitstring over
the ``n(n-1)`` off-diagonal positions in row-major order.  The canonical form
is the lexicographically smallest such bitstring over all ``n!`` relabelings.
Bitstrings are held as integers whose most significant bit is the first
position, so lexicographic order and integer order coincide.

Everything here is vectorized over numpy ``int64`` arrays; ``n <= 8`` keeps
the ``n(n-1)`` bits inside one word.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .digraph import Digraph, UndirectedGraph, symmetrize

MAX_CANON_N = 8


@lru_cache(maxsize=None)
def _positions(n: int) -> np.ndarray:
    """``pos[u, v]`` = bit shift of arc ``(u, v)``; diagonal is -1."""
    N = n * (n - 1)
    pos = -np.ones((n, n), dtype=np.int64)
    p = 0
    for u in range(n):
        for v in range(n):
            if u != v:
                pos[u, v] = N - 1 - p
                p += 1
    return pos


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


@lru_cache(maxsize=None)
def _perm_weights(n: int) -> np.ndarray:
    """``W[p, k]`` = value of source bit ``p`` under the ``k``-th relabeling."""
    pos = _positions(n)
    arcs = arc_list_of_position(n)
    P = _perms(n)
    us = np.array([u for u, _ in arcs])
    vs = np.array([v for _, v in arcs])
    return (np.int64(1) << pos[P[:, us], P[:, vs]]).T.copy()


def arc_list_of_position(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def mask_of(D: Digraph) -> int:
    pos = _positions(D.n)
    mask = 0
    for u, v in D.arcs:
        mask |= 1 << int(pos[u, v])
    return mask


def digraph_of_mask(n: int, mask: int) -> Digraph:
    pos = _positions(n)
    mask = int(mask)
    return Digraph(
        n,
        ((u, v) for u in range(n) for v in range(n) if u != v and mask >> int(pos[u, v]) & 1),
    )


def canonical_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Canonical mask of every labeled mask in ``masks``."""
    if n > MAX_CANON_N:
        raise ValueError(f"canonical forms supported for n <= {MAX_CANON_N}")
    masks = np.asarray(masks, dtype=np.int64)
    if n <= 1:
        return masks.copy()
    W = _perm_weights(n)
    pos = _positions(n)
    src_shift = np.array([pos[u, v] for u, v in arc_list_of_position(n)], dtype=np.int64)
    bits = (masks[:, None] >> src_shift[None, :]) & 1
    out = np.empty(len(masks), dtype=np.int64)
    chunk = max(1, (1 << 22) // W.shape[1])
    for start in range(0, len(masks), chunk):
        out[start:start + chunk] = (bits[start:start + chunk] @ W).min(axis=1)
    return out


def canonical_mask(D: Digraph) -> int:
    """Canonical mask of one digraph, vectorized over permutations."""
    n = D.n
    if n > MAX_CANON_N:
        raise ValueError(f"canonical forms supported for n <= {MAX_CANON_N}")
    if n <= 1 or not D.arcs:
        return 0
    pos = _positions(n)
    P = _perms(n)
    us = np.array([u for u, _ in D.arcs], dtype=np.int64)
    vs = np.array([v for _, v in D.arcs], dtype=np.int64)
    shifts = pos[P[:, us], P[:, vs]]
    imgs = (np.int64(1) << shifts).sum(axis=1)
    return int(imgs.min())


def format_id(n: int, mask: int) -> str:
    N = n * (n - 1)
    bits = format(int(mask), f"0{N}b") if N else ""
    return f"{n}:{bits}"


def canonical_id(D: Digraph) -> str:
    """Relabeling-invariant string id ``"<n>:<bitstring>"``."""
    return format_id(D.n, canonical_mask(D))


def graph_canonical_id(G: UndirectedGraph) -> str:
    return canonical_id(symmetrize(G))


def canonical_form(D: Digraph) -> Digraph:
    return digraph_of_mask(D.n, canonical_mask(D))


def is_isomorphic(D1: Digraph, D2: Digraph) -> bool:
    if D1.n != D2.n or D1.m != D2.m:
        return False
    return canonical_mask(D1) == canonical_mask(D2)


# -- isomorphism-class enumeration by vertex augmentation ------------------


@lru_cache(maxsize=None)
def digraph_classes(n: int) -> tuple[int, ...]:
    """Sorted canonical masks of all digraphs on ``n`` vertices.

    Every ``n``-vertex digraph is some ``(n-1)``-vertex class representative
    plus a new vertex ``n-1`` with arbitrary in- and out-neighbourhoods, so
    augmenting each smaller class and canonicalizing covers every class.
    """
    if n <= 1:
        return (0,)
    small = digraph_classes(n - 1)
    pos_small = _positions(n - 1)
    pos = _positions(n)
    old_arcs = arc_list_of_position(n - 1)
    new = n - 1
    # bit k < n-1: arc (new, k); bit n-1+k: arc (k, new)
    ext = np.arange(1 << (2 * (n - 1)), dtype=np.int64)
    ext_mask = np.zeros_like(ext)
    for k in range(n - 1):
        ext_mask |= ((ext >> k) & 1) << pos[new, k]
        ext_mask |= ((ext >> (n - 1 + k)) & 1) << pos[k, new]
    out = set()
    for rep in small:
        base = 0
        for u, v in old_arcs:
            if rep >> int(pos_small[u, v]) & 1:
                base |= 1 << int(pos[u, v])
        cands = ext_mask | np.int64(base)
        out.update(np.unique(canonical_masks(n, cands)).tolist())
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def graph_classes(n: int) -> tuple[int, ...]:
    """Sorted canonical masks (of ``G*``) of all undirected graphs on ``n`` vertices."""
    if n <= 1:
        return (0,)
    small = graph_classes(n - 1)
    pos_small = _positions(n - 1)
    pos = _positions(n)
    new = n - 1
    ext = np.arange(1 << (n - 1), dtype=np.int64)
    ext_mask = np.zeros_like(ext)
    for k in range(n - 1):
        bit = (ext >> k) & 1
        ext_mask |= bit << pos[new, k]
        ext_mask |= bit << pos[k, new]
    out = set()
    for rep in small:
        base = 0
        for u in range(n - 1):
            for v in range(n - 1):
                if u != v and rep >> int(pos_small[u, v]) & 1:
                    base |= 1 << int(pos[u, v])
        cands = ext_mask | np.int64(base)
        out.update(np.unique(canonical_masks(n, cands)).tolist())
    return tuple(sorted(out))


def undirected_of_mask(n: int, mask: int) -> UndirectedGraph:
    D = digraph_of_mask(n, mask)
    return UndirectedGraph(n, ((u, v) for u, v in D.arcs if u < v))
