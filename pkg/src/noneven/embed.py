"""Subgraph monomorphism search (injective, arc-preserving vertex maps)."""

from __future__ import annotations

from .digraph import Digraph


def _search_order(P: Digraph) -> list[int]:
    order: list[int] = []
    left = set(range(P.n))
    adj = [P.out_masks[v] | P.in_masks[v] for v in range(P.n)]
    while left:
        placed = 0
        for v in order:
            placed |= 1 << v
        best = max(left, key=lambda v: ((adj[v] & placed).bit_count(), adj[v].bit_count(), -v))
        order.append(best)
        left.remove(best)
    return order


def find_embedding(P: Digraph, H: Digraph) -> tuple[int, ...] | None:
    """Injective map ``phi`` with ``(phi[u], phi[v])`` an arc of ``H`` for every arc of ``P``.

    Plain backtracking with degree filters and bitmask candidate sets.
    """
    if P.n > H.n or P.m > H.m:
        return None
    if P.n == 0:
        return ()
    order = _search_order(P)
    rank = {v: i for i, v in enumerate(order)}
    hin = [H.indegree(h) for h in range(H.n)]
    hout = [H.outdegree(h) for h in range(H.n)]
    plan = []
    for p in order:
        outs = [q for q in P.successors(p) if rank[q] < rank[p]]
        ins = [q for q in P.predecessors(p) if rank[q] < rank[p]]
        ok = 0
        for h in range(H.n):
            if hin[h] >= P.indegree(p) and hout[h] >= P.outdegree(p):
                ok |= 1 << h
        plan.append((p, outs, ins, ok))

    phi = [-1] * P.n
    hout_m, hin_m = H.out_masks, H.in_masks

    def extend(depth: int, used: int) -> bool:
        if depth == len(plan):
            return True
        p, outs, ins, cand = plan[depth]
        cand &= ~used
        for q in outs:
            cand &= hin_m[phi[q]]
        for q in ins:
            cand &= hout_m[phi[q]]
        while cand:
            low = cand & -cand
            h = low.bit_length() - 1
            phi[p] = h
            if extend(depth + 1, used | low):
                return True
            cand ^= low
        phi[p] = -1
        return False

    if extend(0, 0):
        return tuple(phi)
    return None


def contains(H: Digraph, P: Digraph) -> bool:
    return find_embedding(P, H) is not None
