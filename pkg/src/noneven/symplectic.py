"""Symplectic pairs: necessary conditions, maximality, and witness search.

A symplectic pair for a sign pattern ``H`` is ``(A, D)`` with both matrices in
the sign class of ``H`` and ``A.T @ D == I``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .digraph import Digraph, is_strong
from .exceptions import NotNoneven, NotSNS
from .parity import _sns_entries, is_noneven, is_noneven_unweighted, is_sns
from .pattern import SignPattern, WeightedDigraph, digraph_of, in_sign_class, negative_diagonal_pattern

SEARCH_FLOOR = 1e-3
WITNESS_FLOOR = 1e-2
DEFAULT_TOL = 1e-9
DEFAULT_BUDGET = 200
HINGE_WEIGHT = 1e2
MAX_NFEV = 150


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a necessary-condition check; failures are 0-based index tuples."""

    passed: bool
    failures: tuple = ()

    def __bool__(self):
        return self.passed

    @property
    def first(self):
        return self.failures[0] if self.failures else None


# -- overlap numbers ----------------------------------------------------------------------


@dataclass(frozen=True)
class OverlapNumbers:
    i: int
    j: int
    n_plus: int
    n_minus: int


def overlap_numbers(H: SignPattern, i: int, j: int) -> OverlapNumbers:
    """Columns where rows ``i`` and ``j`` agree (``n_plus``) or disagree (``n_minus``) in sign."""
    if i == j:
        raise ValueError("overlap numbers need distinct rows")
    prod = H.entries[i].astype(np.int64) * H.entries[j].astype(np.int64)
    return OverlapNumbers(i, j, int((prod > 0).sum()), int((prod < 0).sum()))


def prop31_check(H: SignPattern) -> CheckResult:
    """Fails at every row pair where exactly one of the overlap numbers is zero."""
    fails = []
    for i in range(H.n):
        for j in range(i + 1, H.n):
            ov = overlap_numbers(H, i, j)
            if (ov.n_plus == 0) != (ov.n_minus == 0):
                fails.append((i, j))
    return CheckResult(not fails, tuple(fails))


def prop31_digraph_check(Dw: WeightedDigraph, diagonal) -> CheckResult:
    """Digraph form of the overlap test.

    Vertex ``v`` dominates itself when ``diagonal[v] != 0``; such a self-arc
    has weight 1 when the diagonal entry is negative.  For each vertex pair
    the common out-neighbourhood splits by parity of the two arc weights.
    """
    n = Dw.n
    if np.isscalar(diagonal):
        diagonal = [diagonal] * n
    diagonal = list(diagonal)

    def dominated(v) -> dict[int, int]:
        out = {u: Dw.weight[(v, u)] for u in Dw.base.successors(v)}
        if diagonal[v] != 0:
            out[v] = 1 if diagonal[v] < 0 else 0
        return out

    dom = [dominated(v) for v in range(n)]
    fails = []
    for v in range(n):
        for w in range(v + 1, n):
            common = dom[v].keys() & dom[w].keys()
            even = sum(1 for u in common if (dom[v][u] + dom[w][u]) % 2 == 0)
            odd = len(common) - even
            if (even == 0) != (odd == 0):
                fails.append((v, w))
    return CheckResult(not fails, tuple(fails))


# -- minors and the minor-sign check ------------------------------------------------------------------


def minor_pattern(H: SignPattern, i: int, j: int) -> SignPattern:
    """Delete row ``i`` and column ``j``."""
    n = H.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"({i}, {j}) out of range for order {n}")
    if n == 1:
        raise ValueError("the minor of a 1x1 pattern is empty")
    return SignPattern(_minor(H.entries, i, j))


def _minor(E: np.ndarray, i: int, j: int) -> np.ndarray:
    return np.delete(np.delete(E, i, axis=0), j, axis=1)


def prop61_check(H: SignPattern) -> CheckResult:
    """Zero entries must have non-SNS minors and nonzero entries SNS minors.

    Failures are ``(i, j, condition)`` with condition 1 (zero entry, SNS
    minor) or 2 (nonzero entry, non-SNS minor).

    Raises
    ------
    NotSNS
        If ``H`` itself is not sign-nonsingular.
    """
    if not is_sns(H):
        raise NotSNS("the minor test applies to sign-nonsingular patterns only")
    E = H.entries.astype(np.int64)
    fails = []
    for i in range(H.n):
        for j in range(H.n):
            minor_sns = _sns_entries(_minor(E, i, j))
            if E[i, j] == 0 and minor_sns:
                fails.append((i, j, 1))
            elif E[i, j] != 0 and not minor_sns:
                fails.append((i, j, 2))
    return CheckResult(not fails, tuple(fails))


# -- maximality and irreducibility --------------------------------------------------------


def is_maximal_noneven(D: Digraph) -> bool:
    """Adding any absent arc makes ``D`` even.

    Raises
    ------
    NotNoneven
    """
    if not is_noneven(D):
        raise NotNoneven("maximality is defined for noneven digraphs")
    for u in range(D.n):
        for v in range(D.n):
            if u != v and (u, v) not in D.arcs and is_noneven(D.add_arc(u, v)):
                return False
    return True


def is_irreducible(H: SignPattern) -> bool:
    return is_strong(digraph_of(H).base)


def pattern_for_digraph(D: Digraph) -> SignPattern:
    """Negative-diagonal pattern from one noneven weighting of ``D``.

    Raises
    ------
    NotNoneven
    """
    v = is_noneven_unweighted(D)
    if v.even:
        raise NotNoneven("an even digraph has no sign-nonsingular negative-diagonal pattern")
    return negative_diagonal_pattern(D, v.witness)


# -- witness search ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessPair:
    A: np.ndarray
    D: np.ndarray
    residual: float

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotFound:
    """No witness within budget.  This is not a proof that none exists."""

    best_residual: float
    restarts: int
    reason: str = "budget"

    def __bool__(self):
        return False


def symplectic_residual(A, D) -> float:
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    return float(np.abs(A.T @ D - np.eye(A.shape[0])).max())


class WitnessObjective:
    """Least-squares residuals for ``A.T @ D - I`` over the pattern's nonzeros.

    The parameter vector holds the nonzero entries of ``A`` (row-major), then
    those of ``D`` unless ``orthogonal`` ties ``D`` to ``A``.  A squared hinge
    keeps every entry on its required side of ``floor``.
    """

    def __init__(self, H: SignPattern, *, floor=SEARCH_FLOOR, hinge_weight=HINGE_WEIGHT,
                 orthogonal=False):
        self.n = H.n
        self.rows, self.cols = np.nonzero(H.entries)
        self.signs = H.entries[self.rows, self.cols].astype(float)
        self.z = len(self.rows)
        self.orthogonal = orthogonal
        self.floor = floor
        self.hinge_scale = np.sqrt(hinge_weight)
        self.size = self.z if orthogonal else 2 * self.z

    def unpack(self, x):
        n = self.n
        A = np.zeros((n, n))
        A[self.rows, self.cols] = x[: self.z]
        if self.orthogonal:
            return A, A
        D = np.zeros((n, n))
        D[self.rows, self.cols] = x[self.z:]
        return A, D

    def pack(self, A, D=None):
        a = np.asarray(A)[self.rows, self.cols]
        if self.orthogonal:
            return a.copy()
        return np.concatenate([a, np.asarray(D)[self.rows, self.cols]])

    def _signs_full(self):
        return self.signs if self.orthogonal else np.concatenate([self.signs, self.signs])

    def core_residuals(self, x):
        A, D = self.unpack(x)
        return (A.T @ D - np.eye(self.n)).ravel()

    def core_jacobian(self, x):
        n, z = self.n, self.z
        A, D = self.unpack(x)
        J = np.zeros((n * n, self.size))
        ar = np.arange(n)
        for q, (k, l) in enumerate(zip(self.rows, self.cols)):
            # d(A^T D)_{ij} / dA_{kl} = [i == l] D_{kj}
            J[l * n + ar, q] += D[k]
            # d(A^T D)_{ij} / dD_{kl} = A_{ki} [j == l]
            col = q if self.orthogonal else z + q
            J[ar * n + l, col] += A[k]
        return J

    def hinge(self, x):
        return self.hinge_scale * np.maximum(0.0, self.floor - self._signs_full() * x)

    def residuals(self, x):
        return np.concatenate([self.core_residuals(x), self.hinge(x)])

    def jacobian(self, x):
        s = self._signs_full()
        active = (self.floor - s * x) > 0
        Jh = np.diag(np.where(active, -self.hinge_scale * s, 0.0))
        return np.vstack([self.core_jacobian(x), Jh])

    def value(self, x):
        r = self.residuals(x)
        return 0.5 * float(r @ r)

    def gradient(self, x):
        return self.jacobian(x).T @ self.residuals(x)

    def random_start(self, rng):
        mags = np.exp(rng.normal(0.0, 0.5, size=self.size))
        return self._signs_full() * mags

    def feasible(self, x, floor=None):
        floor = self.floor if floor is None else floor
        return bool((self._signs_full() * x >= floor).all())


def _polish(obj: WitnessObjective, x, steps: int = 20):
    """Minimum-norm Gauss-Newton on ``A.T D - I`` alone (hinge removed)."""
    for _ in range(steps):
        r = obj.core_residuals(x)
        if np.abs(r).max() < 1e-15:
            break
        step = np.linalg.lstsq(obj.core_jacobian(x), r, rcond=None)[0]
        x = x - step
    return x


def _balance(A, D):
    """Rescale ``(cA, D/c)`` so the two smallest magnitudes match."""
    a = np.abs(A[A != 0]).min()
    d = np.abs(D[D != 0]).min()
    c = np.sqrt(d / a)
    return A * c, D / c


def find_symplectic_pair(
    H: SignPattern,
    budget: int = DEFAULT_BUDGET,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    *,
    orthogonal: bool = False,
    prescreen: bool = False,
) -> WitnessPair | NotFound:
    """Search for ``A, D`` in the sign class of ``H`` with ``max|A.T D - I| <= tol``.

    Trust-region least squares from random sign-respecting starts.  Zero entries are
    structural, so they stay exactly zero.  A restart is accepted once a
    hinge-free polish keeps every sign and reaches ``tol``, and the balanced
    witness has all nonzero magnitudes at least ``WITNESS_FLOOR``.
    With ``orthogonal=True`` the search is over ``D = A`` (orthogonal ``A``).

    Restart ``r`` draws from ``default_rng([seed, r])``; the lowest accepted
    restart wins.  ``prescreen=True`` returns ``NotFound(inf, 0, "prop31")``
    without searching when the row-overlap condition already rules out pairs.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if prescreen and not prop31_check(H).passed:
        return NotFound(float("inf"), 0, "prop31")
    obj = WitnessObjective(H, orthogonal=orthogonal)
    best = np.inf
    for r in range(budget):
        rng = np.random.default_rng([seed, r])
        x0 = obj.random_start(rng)
        try:
            # MINPACK's "lm" is not bitwise reproducible across calls; "trf" is
            sol = least_squares(obj.residuals, x0, jac=obj.jacobian, method="trf",
                                xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=MAX_NFEV)
        except (ValueError, np.linalg.LinAlgError):
            continue
        x = sol.x
        best = min(best, float(np.abs(obj.core_residuals(x)).max()))
        if not obj.feasible(x):
            continue
        if obj.z and np.abs(obj.core_residuals(x)).max() > tol:
            x = _polish(obj, x)
            if not obj.feasible(x, floor=0.5 * obj.floor):
                continue
        A, D = obj.unpack(x)
        if not orthogonal:
            A, D = _balance(A, D)
        res = symplectic_residual(A, D)
        best = min(best, res)
        if res > tol:
            continue
        if np.abs(A[A != 0]).min() < WITNESS_FLOOR or np.abs(D[D != 0]).min() < WITNESS_FLOOR:
            continue
        if in_sign_class(A, H) and in_sign_class(D, H):
            return WitnessPair(A, D, res)
    return NotFound(float(best), budget)


def verify_witness(W: WitnessPair, H: SignPattern, tol: float = DEFAULT_TOL) -> bool:
    """Independent re-check of a witness against ``H``."""
    return (
        in_sign_class(W.A, H)
        and in_sign_class(W.D, H)
        and symplectic_residual(W.A, W.D) <= tol
    )


def requires_symplectic_sampling(H: SignPattern, trials: int = 10_000, seed: int = 0,
                                 zero_rtol: float = 1e-12) -> float:
    """Fraction of random ``A`` in the sign class whose ``inv(A).T`` is also in it.

    Magnitudes are log-uniform on ``[1e-2, 1e2]``.  Entries of ``inv(A).T``
    below ``zero_rtol`` times its largest magnitude count as zero.

    Raises
    ------
    NotSNS
    """
    if not is_sns(H):
        raise NotSNS("sampling the inverse needs a sign-nonsingular pattern")
    rng = np.random.default_rng(seed)
    S = H.entries.astype(float)
    hits = 0
    done = 0
    while done < trials:
        mags = np.exp(rng.uniform(np.log(1e-2), np.log(1e2), size=S.shape))
        A = S * mags
        try:
            D = np.linalg.inv(A).T
        except np.linalg.LinAlgError:
            continue
        done += 1
        D = np.where(np.abs(D) <= zero_rtol * np.abs(D).max(), 0.0, D)
        hits += in_sign_class(D, H)
    return hits / trials
