"""Exhaustive small-size re-verification of the characterization theorems.

Every check enumerates digraphs (or undirected graphs) up to isomorphism,
restricts to the theorem's hypothesis, and collects counterexamples.  Where
"allows symplectic pairs" is involved the negative side is one-sided: a
witness search that runs out of budget is evidence, not proof, so those
columns are labeled ``no-witness-at-budget``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import canon
from .digraph import (
    Digraph,
    UndirectedGraph,
    degree_sequences,
    double_cycle,
    is_dense,
    is_semi_complete,
    is_strong,
    is_strongly_2connected,
    is_strongly_k_connected,
    is_symmetric,
    is_two_connected,
    symmetrize,
)
from .exceptions import SearchSpaceTooLarge
from .io import format_digraph
from .parity import all_noneven_weightings, find_weak_double_cycle, is_noneven_unweighted
from .pattern import negative_diagonal_pattern, sign_equivalent
from .structures import (
    CATERPILLAR_MAX_N,
    extended_caterpillars,
    is_even_2connected_graph,
    is_extended_caterpillar_subdigraph,
    w4,
)
from .symplectic import (
    DEFAULT_BUDGET,
    find_symplectic_pair,
    is_maximal_noneven,
    prop31_check,
    prop61_check,
)

DEFAULT_SEED = int(os.environ.get("NONEVEN_SEED", "20240601"))

EXHAUSTIVE_MAX_N = 5
SYMMETRIC_MAX_N = 7

FLAG_NAMES = (
    "strong",
    "strongly_2connected",
    "semi_complete",
    "dense",
    "symmetric",
    "noneven",
    "maximal_noneven",
    "prop31_pass",
    "prop61_pass",
    "caterpillar_subdigraph",
)

# rough relative cost, used to order filter evaluation
_FLAG_COST = {
    "symmetric": 0,
    "semi_complete": 0,
    "dense": 1,
    "strong": 1,
    "strongly_2connected": 2,
    "noneven": 3,
    "prop31_pass": 4,
    "prop61_pass": 5,
    "maximal_noneven": 6,
    "caterpillar_subdigraph": 7,
}


class Flags:
    """Lazily computed, cached classification flags of one digraph."""

    def __init__(self, D: Digraph):
        self.D = D
        self._cache: dict[str, bool] = {}
        self._verdict = None

    def verdict(self):
        if self._verdict is None:
            self._verdict = is_noneven_unweighted(self.D)
        return self._verdict

    def _compute(self, name: str) -> bool:
        D = self.D
        if name == "strong":
            return is_strong(D)
        if name == "strongly_2connected":
            return is_strongly_2connected(D)
        if name == "semi_complete":
            return is_semi_complete(D)
        if name == "dense":
            return is_dense(D)
        if name == "symmetric":
            return is_symmetric(D)
        if name == "noneven":
            return self.verdict().noneven
        if name == "maximal_noneven":
            return self["noneven"] and is_maximal_noneven(D)
        if name == "prop31_pass":
            return self["noneven"] and prop31_check(self.pattern()).passed
        if name == "prop61_pass":
            return self["noneven"] and prop61_check(self.pattern()).passed
        if name == "caterpillar_subdigraph":
            return D.n <= CATERPILLAR_MAX_N and is_extended_caterpillar_subdigraph(D)
        raise KeyError(name)

    def pattern(self):
        return negative_diagonal_pattern(self.D, self.verdict().witness)

    def __getitem__(self, name: str) -> bool:
        if name not in self._cache:
            self._cache[name] = bool(self._compute(name))
        return self._cache[name]

    def all(self) -> dict[str, bool]:
        return {name: self[name] for name in FLAG_NAMES}


@dataclass(frozen=True)
class ClassificationRecord:
    canonical_id: str
    n: int
    m: int
    flags: dict
    indegrees: tuple[int, ...]
    outdegrees: tuple[int, ...]

    def flag_bits(self) -> str:
        return "".join("1" if self.flags[name] else "0" for name in FLAG_NAMES)

    def line(self) -> str:
        """Tab-separated: id, n, m, flag bits (``FLAG_NAMES`` order), indegrees, outdegrees."""
        return "\t".join([
            self.canonical_id,
            str(self.n),
            str(self.m),
            self.flag_bits(),
            ",".join(map(str, self.indegrees)),
            ",".join(map(str, self.outdegrees)),
        ])


def classify(D: Digraph, flags: Flags | None = None) -> ClassificationRecord:
    flags = flags or Flags(D)
    ind, outd, _ = degree_sequences(D)
    return ClassificationRecord(canon.canonical_id(D), D.n, D.m, flags.all(), ind, outd)


# -- enumeration ---------------------------------------------------------------------------


Filter = Callable[[Flags], bool]


def _as_filter(f) -> tuple[int, Filter]:
    if isinstance(f, str):
        if f not in _FLAG_COST:
            raise KeyError(f"unknown flag {f!r}")
        return _FLAG_COST[f], lambda fl, name=f: fl[name]
    return 10, f


def enumerate_with_flags(n: int, filters: Iterable = (), *, symmetric: bool = False):
    """One ``(digraph, Flags)`` pair per isomorphism class on ``n`` vertices passing every filter.

    Filters are flag names or callables taking :class:`Flags`; they run
    cheapest first.  ``symmetric=True`` restricts the universe to symmetric
    digraphs, which permits larger ``n``.  Output is ordered by canonical id.
    """
    if symmetric:
        if n > SYMMETRIC_MAX_N:
            raise SearchSpaceTooLarge(f"symmetric enumeration refused for n={n} > {SYMMETRIC_MAX_N}")
        masks = canon.graph_classes(n)
    else:
        if n > EXHAUSTIVE_MAX_N:
            raise SearchSpaceTooLarge(f"exhaustive enumeration refused for n={n} > {EXHAUSTIVE_MAX_N}")
        masks = canon.digraph_classes(n)
    checks = sorted((_as_filter(f) for f in filters), key=lambda t: t[0])
    for mask in masks:
        D = canon.digraph_of_mask(n, mask)
        fl = Flags(D)
        if all(check(fl) for _, check in checks):
            yield D, fl


def enumerate_digraphs(n: int, filters: Iterable = (), *, symmetric: bool = False) -> Iterator[Digraph]:
    for D, _ in enumerate_with_flags(n, filters, symmetric=symmetric):
        yield D


def two_connected_graphs(n: int) -> Iterator[UndirectedGraph]:
    for mask in canon.graph_classes(n):
        G = canon.undirected_of_mask(n, mask)
        if is_two_connected(G):
            yield G


def random_digraph(n: int, rng: np.random.Generator) -> Digraph:
    p = rng.uniform(0.15, 0.85)
    keep = rng.random((n, n)) < p
    return Digraph(n, ((u, v) for u in range(n) for v in range(n) if u != v and keep[u, v]))


# -- reports -------------------------------------------------------------------------------


@dataclass
class VerificationReport:
    theorem: str
    universe: str
    counterexamples: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def success(self) -> bool:
        return not self.counterexamples

    def bump(self, key, by: int = 1):
        self.counts[key] = self.counts.get(key, 0) + by

    def render(self, with_records: bool = True) -> str:
        lines = []
        if with_records:
            lines += [r.line() for r in sorted(self.records, key=lambda r: r.canonical_id)]
        lines.append(f"# theorem: {self.theorem}")
        lines.append(f"# universe: {self.universe}")
        for key in sorted(self.counts, key=str):
            lines.append(f"# count {key}: {self.counts[key]}")
        for note in self.notes:
            lines.append(f"# note: {note}")
        lines.append(f"# counterexamples: {len(self.counterexamples)}")
        lines.append(f"# result: {'success' if self.success else 'FAILURE'}")
        for D in self.counterexamples:
            lines.append("# counterexample:")
            lines.append(format_digraph(D).rstrip("\n"))
        return "\n".join(lines) + "\n"


def _record(report: VerificationReport, D: Digraph, flags: Flags | None = None):
    report.records.append(classify(D, flags))


# -- theorem checks ---------------------------------------------------------------------------


def verify_seymour_thomassen(
    n_max: int,
    *,
    exhaustive_max: int = EXHAUSTIVE_MAX_N,
    trials: int = 10_000,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Weighting search and weak-double-cycle search agree on evenness.

    Exhaustive over isomorphism classes up to ``min(n_max, exhaustive_max)``;
    ``trials`` seeded random digraphs at each larger size up to ``n_max``.
    """
    if n_max > 7:
        raise SearchSpaceTooLarge("the weak double-cycle library is complete only up to 7 vertices")
    top = min(n_max, exhaustive_max)
    rep = VerificationReport(
        "st", f"all digraphs n<={top}" + (f", {trials} random per n in {top + 1}..{n_max}" if n_max > top else "")
    )
    for n in range(1, top + 1):
        for mask in canon.digraph_classes(n):
            D = canon.digraph_of_mask(n, mask)
            even_w = is_noneven_unweighted(D).even
            even_c = find_weak_double_cycle(D) is not None
            rep.bump(f"n={n} classes")
            rep.bump(f"n={n} even", even_w)
            if even_w != even_c:
                rep.counterexamples.append(D)
    rng = np.random.default_rng(seed)
    for n in range(top + 1, n_max + 1):
        for _ in range(trials):
            D = random_digraph(n, rng)
            even_w = is_noneven_unweighted(D).even
            even_c = find_weak_double_cycle(D) is not None
            rep.bump(f"n={n} random")
            rep.bump(f"n={n} even", even_w)
            if even_w != even_c:
                rep.counterexamples.append(D)
    return rep


def verify_prop_4_1(n_max: int) -> VerificationReport:
    """Odd-cycle / three-paths criterion matches the parity of ``G*``, 2-connected ``G``."""
    if n_max > SYMMETRIC_MAX_N:
        raise SearchSpaceTooLarge(f"n_max must be at most {SYMMETRIC_MAX_N}")
    rep = VerificationReport("p41", f"2-connected undirected graphs, 3<=n<={n_max}")
    for n in range(3, n_max + 1):
        for G in two_connected_graphs(n):
            criterion = is_even_2connected_graph(G).even
            parity = is_noneven_unweighted(symmetrize(G)).even
            rep.bump(f"n={n} classes")
            rep.bump(f"n={n} even", parity)
            if criterion != parity:
                rep.counterexamples.append(symmetrize(G))
    return rep


def _iso_to_any(D: Digraph, family: Sequence[Digraph]) -> bool:
    return any(canon.is_isomorphic(D, E) for E in family)


def verify_theorem_4_2(n_max: int, *, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Strong symmetric noneven digraphs other than C2* and C4* fail a necessary
    condition and yield no witness; C2* and C4* yield witnesses.

    Starts at ``n = 2``: the one-vertex digraph trivially allows pairs.
    """
    if n_max > 6:
        raise SearchSpaceTooLarge("n_max must be at most 6")
    rep = VerificationReport("t42", f"strong symmetric noneven digraphs, 2<=n<={n_max}; "
                                    f"witness budget {budget}")
    special = [double_cycle(2), double_cycle(4)]
    for n in range(2, n_max + 1):
        for D, fl in enumerate_with_flags(n, ["strong", "noneven"], symmetric=True):
            _record(rep, D, fl)
            rep.bump(f"n={n} classes")
            H = fl.pattern()
            found = bool(find_symplectic_pair(H, budget=budget, seed=seed))
            if _iso_to_any(D, special):
                rep.bump("witness found (C2*/C4*)", found)
                if not found:
                    rep.counterexamples.append(D)
                continue
            p31 = prop31_check(H).passed
            p61 = prop61_check(H).passed
            maximal = is_maximal_noneven(D)
            rep.bump("prop31 fail", not p31)
            rep.bump("prop61 fail", not p61)
            rep.bump("non-maximal", not maximal)
            rep.bump("no-witness-at-budget", not found)
            if (p31 and p61 and maximal) or found:
                rep.counterexamples.append(D)
    return rep


def _exact_family_check(theorem, n_max, filters, expected_at_4, label) -> VerificationReport:
    if n_max > EXHAUSTIVE_MAX_N:
        raise SearchSpaceTooLarge(f"n_max must be at most {EXHAUSTIVE_MAX_N}")
    rep = VerificationReport(theorem, f"{label}, 1<=n<={n_max}")
    for n in range(1, n_max + 1):
        rep.counts[f"n={n} classes"] = 0
        found = []
        for D, fl in enumerate_with_flags(n, filters):
            _record(rep, D, fl)
            rep.bump(f"n={n} classes")
            found.append(D)
        expected = expected_at_4 if n == 4 else []
        matched = set()
        for D in found:
            hits = [i for i, E in enumerate(expected) if canon.is_isomorphic(D, E)]
            if not hits:
                rep.counterexamples.append(D)
            matched.update(hits)
        if len(matched) != len(expected):
            rep.notes.append(f"n={n}: expected {len(expected)} classes, matched {len(matched)}")
            rep.counterexamples.extend(E for i, E in enumerate(expected) if i not in matched)
    return rep


def _min_degree_at_least_n(fl: Flags) -> bool:
    D = fl.D
    return all(D.degree(v) >= D.n for v in range(D.n))


def verify_theorem_5_1(n_max: int) -> VerificationReport:
    """Strongly 2-connected semi-complete noneven digraphs are exactly W4."""
    return _exact_family_check(
        "t51", n_max, ["semi_complete", "strongly_2connected", "noneven"], [w4()],
        "strongly 2-connected semi-complete noneven digraphs",
    )


def verify_theorem_5_2(n_max: int) -> VerificationReport:
    """Strongly 2-connected noneven digraphs with all degrees >= n are exactly W4 and C4*."""
    return _exact_family_check(
        "t52", n_max, [_min_degree_at_least_n, "strongly_2connected", "noneven"],
        [w4(), double_cycle(4)],
        "strongly 2-connected noneven digraphs with d(v)>=n",
    )


def verify_semicomplete_characterization(n_max: int) -> VerificationReport:
    """Strong semi-complete: noneven iff W4 or a caterpillar subdigraph."""
    if n_max > EXHAUSTIVE_MAX_N:
        raise SearchSpaceTooLarge(f"n_max must be at most {EXHAUSTIVE_MAX_N}")
    rep = VerificationReport("semicomplete", f"strong semi-complete digraphs, 1<=n<={n_max}")
    W = w4()
    for n in range(1, n_max + 1):
        for D, fl in enumerate_with_flags(n, ["semi_complete", "strong"]):
            rep.bump(f"n={n} classes")
            noneven = fl["noneven"]
            embeds = is_extended_caterpillar_subdigraph(D)
            is_w4 = canon.is_isomorphic(D, W)
            if noneven:
                _record(rep, D, fl)
                rep.bump(f"n={n} noneven")
                rep.bump("W4 branch", is_w4)
                rep.bump("caterpillar branch", embeds)
            if noneven and not (is_w4 or embeds):
                rep.counterexamples.append(D)
            if embeds and not noneven:
                rep.counterexamples.append(D)
            if is_w4 and embeds:
                rep.notes.append("W4 embeds in a caterpillar")
                rep.counterexamples.append(D)
    return rep


def verify_theorem_6_3(n_max: int, *, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Strong dense noneven digraphs: W4, C4* and full caterpillars yield
    witnesses; every other one is non-maximal and yields none.

    Starts at ``n = 2`` (the one-vertex digraph is excluded as degenerate).
    """
    if n_max > EXHAUSTIVE_MAX_N:
        raise SearchSpaceTooLarge(f"n_max must be at most {EXHAUSTIVE_MAX_N}")
    rep = VerificationReport("t63", f"strong dense noneven digraphs, 2<=n<={n_max}; witness budget {budget}")
    for n in range(2, n_max + 1):
        special = list(extended_caterpillars(n))
        if n == 4:
            special += [w4(), double_cycle(4)]
        for D, fl in enumerate_with_flags(n, ["dense", "strong", "noneven"]):
            _record(rep, D, fl)
            rep.bump(f"n={n} classes")
            found = bool(find_symplectic_pair(fl.pattern(), budget=budget, seed=seed))
            if _iso_to_any(D, special):
                rep.bump("allowed family: witness found", found)
                if not found:
                    rep.counterexamples.append(D)
            else:
                maximal = fl["maximal_noneven"]
                rep.bump("other: non-maximal", not maximal)
                rep.bump("other: no-witness-at-budget", not found)
                if maximal or found:
                    rep.counterexamples.append(D)
    return rep


def verify_brualdi_shader(n_max: int, *, strong_only: bool = False) -> VerificationReport:
    """All noneven weightings of one noneven digraph give sign-equivalent patterns.

    Each weighting is compared with the first; transitivity covers all pairs.
    Over every noneven digraph the claim fails as soon as the underlying graph
    carries a cycle that is not directed (the transitive triangle is the
    smallest case), so counterexamples are also tallied by strong
    connectivity.  ``strong_only`` restricts the universe to strong digraphs,
    whose patterns are fully indecomposable.
    """
    if n_max > 4:
        raise SearchSpaceTooLarge("n_max must be at most 4")
    scope = "strong noneven digraphs" if strong_only else "noneven digraphs"
    rep = VerificationReport("bs", f"{scope}, 1<=n<={n_max}, every noneven weighting")
    filters = ["strong", "noneven"] if strong_only else ["noneven"]
    for n in range(1, n_max + 1):
        for D in enumerate_digraphs(n, filters):
            rep.bump(f"n={n} classes")
            ref = None
            for wt in all_noneven_weightings(D):
                H = negative_diagonal_pattern(D, wt)
                rep.bump("weightings")
                if ref is None:
                    ref = H
                elif sign_equivalent(ref, H) is None:
                    rep.counterexamples.append(D)
                    rep.bump("counterexamples strong" if is_strong(D) else "counterexamples not strong")
                    break
    return rep


def emergent_3connected_check(n_max: int) -> VerificationReport:
    """No strongly 3-connected digraph is noneven."""
    if n_max > EXHAUSTIVE_MAX_N:
        raise SearchSpaceTooLarge(f"n_max must be at most {EXHAUSTIVE_MAX_N}")
    rep = VerificationReport("c3", f"strongly 3-connected digraphs, 1<=n<={n_max}")
    for n in range(1, n_max + 1):
        for D in enumerate_digraphs(n, [lambda fl: is_strongly_k_connected(fl.D, 3)]):
            rep.bump(f"n={n} classes")
            if is_noneven_unweighted(D).noneven:
                rep.counterexamples.append(D)
    return rep


THEOREMS = {
    "st": verify_seymour_thomassen,
    "p41": verify_prop_4_1,
    "t42": verify_theorem_4_2,
    "t51": verify_theorem_5_1,
    "t52": verify_theorem_5_2,
    "semicomplete": verify_semicomplete_characterization,
    "t63": verify_theorem_6_3,
    "bs": verify_brualdi_shader,
    "c3": emergent_3connected_check,
}
