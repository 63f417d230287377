"""Sign patterns, sign classes, weighted digraphs and sign-equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .digraph import Arc, Digraph
from .exceptions import CombinatoriallySingular


def sgn(x) -> int:
    """Sign of a real number as -1, 0 or +1."""
    if x < 0:
        return -1
    if x > 0:
        return 1
    return 0


class SignPattern:
    """Square matrix over {-1, 0, +1}.

    Entries are held in a read-only ``int8`` array.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        raw = np.array(entries)
        if raw.size and not np.issubdtype(raw.dtype, np.number):
            raise ValueError("sign pattern entries must be numbers")
        arr = raw.astype(np.int64)
        if raw.size and not (arr == raw).all():
            raise ValueError("sign pattern entries must be -1, 0 or 1")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"sign pattern must be square and nonempty, got shape {arr.shape}")
        if not np.isin(arr, (-1, 0, 1)).all():
            raise ValueError("sign pattern entries must be -1, 0 or 1")
        arr = arr.astype(np.int8)
        arr.flags.writeable = False
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    def __getitem__(self, idx):
        return int(self._entries[idx])

    def __eq__(self, other):
        if not isinstance(other, SignPattern):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash((self.n, self._entries.tobytes()))

    def __repr__(self):
        return f"SignPattern({self._entries.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self._entries.tolist()

    def __neg__(self):
        return SignPattern(-self._entries.astype(np.int64))

    @property
    def is_negative_diagonal(self) -> bool:
        return bool((np.diag(self._entries) == -1).all())


@dataclass(frozen=True)
class WeightedDigraph:
    """A digraph with a parity bit on every arc."""

    base: Digraph
    weight: Mapping[Arc, int]

    def __init__(self, base: Digraph, weight: Mapping[Arc, int]):
        weight = {tuple(a): int(w) for a, w in weight.items()}
        if set(weight) != set(base.arcs):
            raise ValueError("weight must be defined on exactly the arc set")
        if any(w not in (0, 1) for w in weight.values()):
            raise ValueError("arc weights must be 0 or 1")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "weight", MappingProxyType(weight))

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.base == other.base and dict(self.weight) == dict(other.weight)

    def __hash__(self):
        return hash((self.base, frozenset(self.weight.items())))

    @property
    def n(self) -> int:
        return self.base.n

    def weight_mask(self) -> int:
        """Bitmask over ``base.arc_list`` of the weight-1 arcs."""
        idx = self.base.arc_index
        mask = 0
        for a, w in self.weight.items():
            if w:
                mask |= 1 << idx[a]
        return mask


def in_sign_class(A, H: SignPattern) -> bool:
    """True iff ``sgn(A_ij) == H_ij`` for every entry."""
    A = np.asarray(A, dtype=float)
    if A.shape != H.entries.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {H.entries.shape}")
    return bool((np.sign(A).astype(np.int64) == H.entries).all())


def digraph_of(H: SignPattern) -> WeightedDigraph:
    """Weighted digraph of ``H``: off-diagonal support, weight 1 on negative entries."""
    E = H.entries
    weight = {}
    for i in range(H.n):
        for j in range(H.n):
            if i != j and E[i, j] != 0:
                weight[(i, j)] = 1 if E[i, j] < 0 else 0
    return WeightedDigraph(Digraph(H.n, weight), weight)


def pattern_of(Dw: WeightedDigraph, diagonal=-1) -> SignPattern:
    """Lift a weighted digraph to a pattern: weight 0 -> +1, weight 1 -> -1.

    ``diagonal`` is a scalar or per-vertex sequence of diagonal signs.
    """
    n = Dw.n
    E = np.zeros((n, n), dtype=np.int64)
    E[np.diag_indices(n)] = diagonal
    for (u, v), w in Dw.weight.items():
        E[u, v] = -1 if w else 1
    return SignPattern(E)


def negative_diagonal_pattern(D: Digraph, weighting: Mapping[Arc, int]) -> SignPattern:
    return pattern_of(WeightedDigraph(D, weighting))


# -- matchings and normalization ----------------------------------------------


def perfect_matching(support: np.ndarray):
    """Column assigned to each row in a perfect matching of a 0/1 matrix, or None.

    Kuhn's augmenting-path algorithm.
    """
    n = support.shape[0]
    match_col = [-1] * n  # column -> row

    def augment(r, seen):
        for c in range(n):
            if support[r, c] and not seen[c]:
                seen[c] = True
                if match_col[c] < 0 or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        if not augment(r, [False] * n):
            return None
    row_to_col = [0] * n
    for c, r in enumerate(match_col):
        row_to_col[r] = c
    return row_to_col


@dataclass(frozen=True)
class SignTransform:
    """``H[i][j] = row_signs[i] * col_signs[j] * G[row_perm[i]][col_perm[j]]``."""

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    row_signs: tuple[int, ...]
    col_signs: tuple[int, ...]

    def apply(self, G: SignPattern) -> SignPattern:
        E = G.entries.astype(np.int64)[np.ix_(self.row_perm, self.col_perm)]
        E = E * np.array(self.row_signs)[:, None] * np.array(self.col_signs)[None, :]
        return SignPattern(E)


def negative_diagonal_normalize(H: SignPattern) -> tuple[SignPattern, SignTransform]:
    """A negative-diagonal pattern sign-equivalent to ``H``, with the transform.

    A pattern whose diagonal is already nonzero keeps its column order, so a
    negative-diagonal input comes back unchanged.

    Raises
    ------
    CombinatoriallySingular
        If no permutation puts nonzeros on the whole diagonal.
    """
    n = H.n
    if (np.diag(H.entries) != 0).all():
        match = list(range(n))
    else:
        match = perfect_matching(H.entries != 0)
    if match is None:
        raise CombinatoriallySingular("no nonzero diagonal under any column permutation")
    row_signs = tuple(-int(H.entries[i, match[i]]) for i in range(n))
    t = SignTransform(tuple(range(n)), tuple(match), row_signs, (1,) * n)
    return t.apply(H), t


def _sign_system_solvable(G: np.ndarray, H: np.ndarray):
    """Row/column signs with ``r_i c_j G_ij = H_ij``, or None.

    Assumes the supports already agree.  Parity propagation over the
    bipartite support graph (rows are nodes ``0..n-1``, columns ``n..2n-1``).
    """
    n = G.shape[0]
    parity = [None] * (2 * n)
    for start in range(2 * n):
        if parity[start] is not None:
            continue
        parity[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            if x < n:
                nbrs = [(n + j, G[x, j] != H[x, j]) for j in range(n) if H[x, j]]
            else:
                j = x - n
                nbrs = [(i, G[i, j] != H[i, j]) for i in range(n) if H[i, j]]
            for y, flip in nbrs:
                want = parity[x] ^ int(flip)
                if parity[y] is None:
                    parity[y] = want
                    stack.append(y)
                elif parity[y] != want:
                    return None
    rows = tuple(-1 if parity[i] else 1 for i in range(n))
    cols = tuple(-1 if parity[n + j] else 1 for j in range(n))
    return rows, cols


def sign_equivalent(G: SignPattern, H: SignPattern) -> SignTransform | None:
    """Transform mapping ``G`` onto ``H`` by negations and permutations, or None.

    Brute force over row permutations; columns are matched by support with
    backtracking and signs are settled by parity propagation.  Meant for
    orders up to about 6.
    """
    if G.n != H.n:
        raise ValueError("patterns must have equal order")
    n = H.n
    Gs = G.entries.astype(np.int64)
    Hs = H.entries.astype(np.int64)
    if np.count_nonzero(Gs) != np.count_nonzero(Hs):
        return None
    h_rowcount = np.count_nonzero(Hs, axis=1)
    if sorted(np.count_nonzero(Gs, axis=1)) != sorted(h_rowcount):
        return None
    if sorted(np.count_nonzero(Gs, axis=0)) != sorted(np.count_nonzero(Hs, axis=0)):
        return None
    h_cols = [tuple(np.flatnonzero(Hs[:, j])) for j in range(n)]
    for rp in permutations(range(n)):
        Gr = Gs[list(rp)]
        if any(np.count_nonzero(Gr[i]) != h_rowcount[i] for i in range(n)):
            continue
        g_cols = [tuple(np.flatnonzero(Gr[:, j])) for j in range(n)]
        col_perm = [-1] * n
        used = [False] * n

        def assign(j):
            if j == n:
                sol = _sign_system_solvable(Gr[:, col_perm], Hs)
                return sol
            for c in range(n):
                if not used[c] and g_cols[c] == h_cols[j]:
                    used[c] = True
                    col_perm[j] = c
                    sol = assign(j + 1)
                    if sol is not None:
                        return sol
                    used[c] = False
            return None

        sol = assign(0)
        if sol is not None:
            return SignTransform(tuple(rp), tuple(col_perm), sol[0], sol[1])
    return None
