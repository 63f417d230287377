"""Even/noneven decisions, weak double cycles and sign-nonsingularity.

Two independent deciders answer "is this unweighted digraph noneven?":

* a search for a {0,1} arc weighting that makes every directed cycle odd,
  carried out modulo vertex switching, and
* a search for a weak k-double-cycle (odd k) contained as a subdigraph.

They agree by the Seymour-Thomassen theorem; the test-suite checks that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Mapping, Union

import numpy as np

from .canon import canonical_mask
from .digraph import Arc, Digraph, double_cycle, split, strong_components, subdivide
from .embed import find_embedding
from .exceptions import SearchSpaceTooLarge
from .pattern import SignPattern, WeightedDigraph, perfect_matching

Cycle = tuple[int, ...]

SNS_MAX_N = 8
DEFAULT_LIBRARY_N = 7


# -- cycles ------------------------------------------------------------------


def enumerate_cycles(D: Digraph) -> Iterator[Cycle]:
    """Every simple directed cycle once, as a vertex tuple starting at its least vertex.

    Backtracking from each start vertex ``s`` inside the strong component of
    ``s`` in the subdigraph induced on vertices ``>= s``.
    """
    out = D.out_masks
    n = D.n
    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << s) - 1)
        sub = Digraph(n, ((u, v) for u, v in D.arcs if above >> u & 1 and above >> v & 1))
        comp = next(c for c in strong_components(sub) if c >> s & 1)
        if comp == 1 << s:
            continue
        path = [s]

        def walk(u, visited):
            nxt = out[u] & comp
            if nxt >> s & 1:
                yield tuple(path)
            nxt &= ~visited
            while nxt:
                low = nxt & -nxt
                v = low.bit_length() - 1
                path.append(v)
                yield from walk(v, visited | low)
                path.pop()
                nxt ^= low

        yield from walk(s, 1 << s)


def cycle_arcs(cycle: Cycle) -> list[Arc]:
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def cycle_mask(D: Digraph, cycle: Cycle) -> int:
    idx = D.arc_index
    mask = 0
    for a in cycle_arcs(cycle):
        mask |= 1 << idx[a]
    return mask


# -- verdict types ---------------------------------------------------------


@dataclass(frozen=True)
class WeakDoubleCycleCert:
    """A weak k-double-cycle ``pattern`` mapped into a host by ``embedding``."""

    k: int
    pattern: Digraph
    embedding: tuple[int, ...]

    def host_arcs(self) -> set[Arc]:
        phi = self.embedding
        return {(phi[u], phi[v]) for u, v in self.pattern.arcs}

    def subdigraph(self) -> Digraph:
        """The embedded copy, renumbered onto ``0..len(embedding)-1``."""
        image = sorted(self.embedding)
        pos = {h: i for i, h in enumerate(image)}
        return Digraph(len(image), ((pos[u], pos[v]) for u, v in self.host_arcs()))


Witness = Union[Cycle, dict, WeakDoubleCycleCert, None]


@dataclass(frozen=True)
class ParityVerdict:
    """``even`` plus a witness: an even cycle, a noneven weighting, or a certificate."""

    even: bool
    witness: Witness = None

    @property
    def noneven(self) -> bool:
        return not self.even


# -- weighted digraphs --------------------------------------------------------


def is_even_weighted(Dw: WeightedDigraph) -> ParityVerdict:
    """Even iff some directed cycle has even total weight; the witness is that cycle."""
    w = Dw.weight
    for cyc in enumerate_cycles(Dw.base):
        if sum(w[a] for a in cycle_arcs(cyc)) % 2 == 0:
            return ParityVerdict(True, cyc)
    return ParityVerdict(False, None)


# -- unweighted digraphs: weighting search ----------------------------------


def spanning_forest_arcs(D: Digraph) -> list[Arc]:
    """One arc per edge of a BFS spanning forest of the underlying graph.

    Switching at vertices can set these arcs to any prescribed weights, so
    a noneven weighting exists iff one exists with all of them 0.
    """
    seen = [False] * D.n
    forest = []
    for root in range(D.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in range(D.n):
                if seen[v]:
                    continue
                if (u, v) in D.arcs:
                    forest.append((u, v))
                elif (v, u) in D.arcs:
                    forest.append((v, u))
                else:
                    continue
                seen[v] = True
                queue.append(v)
    return forest


def switch(weighting: Mapping[Arc, int], v: int) -> dict[Arc, int]:
    """Flip the weight of every arc entering or leaving ``v``."""
    return {a: w ^ (v in a) for a, w in weighting.items()}


def _solve_gf2(rows) -> int | None:
    """Solve ``popcount(x & mask) = rhs (mod 2)`` for all rows; None if inconsistent."""
    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        while mask:
            b = mask.bit_length() - 1
            if b not in pivots:
                break
            pm, pr = pivots[b]
            mask ^= pm
            rhs ^= pr
        if not mask:
            if rhs:
                return None
            continue
        pivots[mask.bit_length() - 1] = (mask, rhs)
    x = 0
    for b in sorted(pivots):
        pm, pr = pivots[b]
        if pr ^ ((pm & x).bit_count() & 1):
            x |= 1 << b
    return x


def _free_arc_setup(D: Digraph, reduce_switching: bool):
    if reduce_switching:
        fixed = set(spanning_forest_arcs(D))
    else:
        fixed = set()
    free = [a for a in D.arc_list if a not in fixed]
    free_bit = {a: i for i, a in enumerate(free)}
    return fixed, free, free_bit


def _free_mask(cycle, free_bit) -> int:
    mask = 0
    for a in cycle_arcs(cycle):
        if a in free_bit:
            mask |= 1 << free_bit[a]
    return mask


def is_noneven_unweighted(
    D: Digraph,
    *,
    method: str = "linear",
    reduce_switching: bool = True,
    certify: bool = False,
) -> ParityVerdict:
    """Decide whether some {0,1} arc weighting leaves every directed cycle odd.

    Parameters
    ----------
    method : {"linear", "enumerate"}
        ``"linear"`` treats "cycle weight is odd" as one GF(2) equation per
        cycle and runs Gaussian elimination.  ``"enumerate"`` tries every
        weighting of the free arcs.  Both are exact.
    reduce_switching : bool
        Fix weight 0 on a spanning forest (no loss of generality).
    certify : bool
        On an even verdict, attach a weak double-cycle certificate.

    Returns
    -------
    ParityVerdict
        Noneven verdicts carry the witnessing weighting as ``{arc: 0/1}``.
    """
    fixed, free, free_bit = _free_arc_setup(D, reduce_switching)
    if method == "linear":
        rows = ((_free_mask(c, free_bit), 1) for c in enumerate_cycles(D))
        x = _solve_gf2(rows)
    elif method == "enumerate":
        cyc_masks = sorted({_free_mask(c, free_bit) for c in enumerate_cycles(D)},
                           key=lambda m: m.bit_count())
        x = None
        if 0 not in cyc_masks:
            for cand in range(1 << len(free)):
                if all((cand & m).bit_count() & 1 for m in cyc_masks):
                    x = cand
                    break
    else:
        raise ValueError(f"unknown method {method!r}")
    if x is None:
        cert = find_weak_double_cycle(D) if certify else None
        return ParityVerdict(True, cert)
    weighting = {a: 0 for a in fixed}
    for a, i in free_bit.items():
        weighting[a] = x >> i & 1
    return ParityVerdict(False, weighting)


def is_noneven(D: Digraph) -> bool:
    return is_noneven_unweighted(D).noneven


def noneven_weighting(D: Digraph) -> dict[Arc, int] | None:
    v = is_noneven_unweighted(D)
    return None if v.even else v.witness


def all_noneven_weightings(D: Digraph) -> Iterator[dict[Arc, int]]:
    """Every noneven weighting of ``D`` (no switching reduction), brute force."""
    arcs = D.arc_list
    masks = [cycle_mask(D, c) for c in enumerate_cycles(D)]
    for x in range(1 << len(arcs)):
        if all((x & m).bit_count() & 1 for m in masks):
            yield {a: x >> i & 1 for i, a in enumerate(arcs)}


# -- weak double cycles ---------------------------------------------------------


@lru_cache(maxsize=None)
def weak_double_cycle_library(n_max: int = DEFAULT_LIBRARY_N) -> tuple[tuple[Digraph, int], ...]:
    """All weak k-double-cycles (odd k >= 3) on at most ``n_max`` vertices.

    Closure of ``C_k*`` under subdivision and splitting, one representative
    per isomorphism class, ordered by vertex count then arc count.
    """
    found: dict[tuple[int, int], tuple[Digraph, int]] = {}
    for k in range(3, n_max + 1, 2):
        frontier = [double_cycle(k)]
        found.setdefault((k, canonical_mask(frontier[0])), (frontier[0], k))
        for _ in range(k, n_max):
            nxt = []
            for D in frontier:
                children = [subdivide(D, a) for a in D.arc_list]
                children += [split(D, v) for v in range(D.n)]
                for C in children:
                    key = (C.n, canonical_mask(C))
                    if key not in found:
                        found[key] = (C, k)
                        nxt.append(C)
            frontier = nxt
    return tuple(sorted(found.values(), key=lambda e: (e[0].n, e[0].m, canonical_mask(e[0]))))


def find_weak_double_cycle(
    D: Digraph, n_max: int = DEFAULT_LIBRARY_N
) -> WeakDoubleCycleCert | None:
    """A weak odd double cycle contained in ``D`` as a subdigraph, or None.

    Complete whenever ``D.n <= n_max``.
    """
    for P, k in weak_double_cycle_library(n_max):
        if P.n > D.n:
            break
        if P.m > D.m:
            continue
        phi = find_embedding(P, D)
        if phi is not None:
            return WeakDoubleCycleCert(k, P, phi)
    return None


def recognize_weak_double_cycle(D: Digraph, order: str = "low") -> tuple[bool, int | None]:
    """Whether ``D`` itself is a weak k-double-cycle for some ``k >= 3``, and ``k``.

    Undo subdivisions (suppress a vertex with in- and out-degree 1) and
    splits (contract an arc ``a -> b`` with ``od(a) = id(b) = 1``) until
    neither applies, then test for ``C_k*``.  ``order`` picks whether the
    lowest or highest removable vertex goes first.
    """
    arcs = set(D.arcs)
    alive = set(range(D.n))
    if not alive:
        return False, None

    def outs(v):
        return [b for a, b in arcs if a == v]

    def ins(v):
        return [a for a, b in arcs if b == v]

    while True:
        moves = []
        for w in alive:
            iw, ow = ins(w), outs(w)
            if len(iw) == 1 and len(ow) == 1:
                u, v = iw[0], ow[0]
                if u != v and (u, v) not in arcs:
                    moves.append((w, "suppress", u, v))
        for a, b in arcs:
            if len(outs(a)) == 1 and len(ins(b)) == 1 and (b, a) not in arcs:
                moves.append((b, "contract", a, b))
        if not moves:
            break
        moves.sort(key=lambda m: m[0], reverse=(order == "high"))
        removed, kind, x, y = moves[0]
        if kind == "suppress":
            arcs -= {(x, removed), (removed, y)}
            arcs.add((x, y))
        else:
            new = set()
            for p, q in arcs:
                if (p, q) == (x, y):
                    continue
                new.add((x, q) if p == y else (p, q))
            arcs = new
        alive.discard(removed)

    k = len(alive)
    if k < 3:
        return False, None
    if any((b, a) not in arcs for a, b in arcs):
        return False, None
    deg = {v: len(outs(v)) for v in alive}
    if any(d != 2 for d in deg.values()) or len(arcs) != 2 * k:
        return False, None
    # connected 2-regular symmetric digraph = C_k*
    start = next(iter(alive))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in outs(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != alive:
        return False, None
    return True, k


# -- sign-nonsingularity ----------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_table(n: int):
    P = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    signs = np.ones(len(P), dtype=np.int64)
    for idx, p in enumerate(P):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        signs[idx] = -1 if inv % 2 else 1
    return P, signs


def permutation_terms(E: np.ndarray) -> np.ndarray:
    """Signs ``sgn(sigma) * prod_i E[i, sigma(i)]`` for every permutation."""
    E = np.asarray(E, dtype=np.int64)
    n = E.shape[0]
    if n > SNS_MAX_N:
        raise SearchSpaceTooLarge(f"permutation expansion refused for n={n} > {SNS_MAX_N}")
    if n == 0:
        return np.ones(1, dtype=np.int64)
    P, signs = _perm_table(n)
    return signs * E[np.arange(n), P].prod(axis=1)


def _sns_entries(E: np.ndarray) -> bool:
    terms = permutation_terms(E)
    nz = terms[terms != 0]
    return nz.size > 0 and bool((nz == nz[0]).all())


def is_sns(H: SignPattern) -> bool:
    """Sign-nonsingular: all nonzero permutation terms share one sign, and one exists."""
    return _sns_entries(H.entries)


def is_combinatorially_singular(H: SignPattern) -> bool:
    """No permutation has all its entries nonzero (no perfect matching on the support)."""
    return perfect_matching(H.entries != 0) is None
