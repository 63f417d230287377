from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noneven import canon
from noneven.digraph import Digraph, double_cycle, split, subdivide
from noneven.exceptions import SearchSpaceTooLarge
from noneven.parity import (
    all_noneven_weightings,
    cycle_arcs,
    enumerate_cycles,
    find_weak_double_cycle,
    is_combinatorially_singular,
    is_even_weighted,
    is_noneven_unweighted,
    is_sns,
    permutation_terms,
    recognize_weak_double_cycle,
    switch,
    weak_double_cycle_library,
)
from noneven.pattern import SignPattern, WeightedDigraph, digraph_of, negative_diagonal_pattern
from noneven.verify import random_digraph

from test_digraph import digraphs


def _cycle_oracle(D: Digraph) -> set:
    """Simple cycles by brute force over vertex sequences (tiny n only)."""
    from itertools import permutations

    found = set()
    for k in range(2, D.n + 1):
        for seq in permutations(range(D.n), k):
            if seq[0] != min(seq):
                continue
            if all(D.has_arc(seq[i], seq[(i + 1) % k]) for i in range(k)):
                found.add(seq)
    return found


def _noneven_oracle(D: Digraph) -> bool:
    """Try every weighting of every arc."""
    cycles = list(enumerate_cycles(D))
    arcs = D.arc_list
    for bits in product((0, 1), repeat=len(arcs)):
        w = dict(zip(arcs, bits))
        if all(sum(w[a] for a in cycle_arcs(c)) % 2 for c in cycles):
            return True
    return False


# -- cycles ------------------------------------------------------------------------------


def test_cycles_of_c4star():
    cycles = list(enumerate_cycles(double_cycle(4)))
    assert sorted(len(c) for c in cycles) == [2, 2, 2, 2, 4, 4]
    assert len(set(cycles)) == 6


def test_cycles_acyclic_and_two_cycle():
    assert list(enumerate_cycles(Digraph(3, [(0, 1), (1, 2), (0, 2)]))) == []
    assert list(enumerate_cycles(double_cycle(2))) == [(0, 1)]


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=5))
def test_cycles_match_brute_force(D):
    ours = list(enumerate_cycles(D))
    assert len(ours) == len(set(ours))
    assert set(ours) == _cycle_oracle(D)


# -- weighted parity -------------------------------------------------------------------


def test_printed_matrix_digraph_is_noneven(overlap_failure):
    assert is_even_weighted(digraph_of(overlap_failure)).noneven


def test_zero_weight_two_cycle_is_even():
    D = Digraph(3, [(0, 1), (1, 0), (1, 2)])
    v = is_even_weighted(WeightedDigraph(D, {(0, 1): 0, (1, 0): 0, (1, 2): 1}))
    assert v.even and v.witness == (0, 1)


def test_acyclic_weighted_is_noneven():
    D = Digraph(3, [(0, 1), (1, 2)])
    assert is_even_weighted(WeightedDigraph(D, {(0, 1): 0, (1, 2): 0})).noneven


# -- unweighted parity -------------------------------------------------------------------


def test_c3star_even(c3star):
    assert is_noneven_unweighted(c3star).even


def test_c4star_noneven(c4star):
    v = is_noneven_unweighted(c4star)
    assert v.noneven
    assert is_even_weighted(WeightedDigraph(c4star, v.witness)).noneven


def test_single_arc_noneven():
    assert is_noneven_unweighted(Digraph(2, [(0, 1)])).noneven


def test_unknown_method():
    with pytest.raises(ValueError):
        is_noneven_unweighted(double_cycle(2), method="guess")


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=5))
def test_all_methods_agree_with_oracle(D):
    if D.m > 12:
        return
    expected = _noneven_oracle(D)
    for method in ("linear", "enumerate"):
        for reduce in (True, False):
            v = is_noneven_unweighted(D, method=method, reduce_switching=reduce)
            assert v.noneven == expected
            if v.noneven:
                assert is_even_weighted(WeightedDigraph(D, v.witness)).noneven


def test_switching_reduction_invariance_exhaustive_n4():
    for mask in canon.digraph_classes(4):
        D = canon.digraph_of_mask(4, mask)
        a = is_noneven_unweighted(D, method="enumerate", reduce_switching=True).noneven
        b = is_noneven_unweighted(D, method="enumerate", reduce_switching=False).noneven
        assert a == b


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=5), st.data())
def test_switching_preserves_cycle_parity(D, data):
    if D.m == 0:
        return
    w = {a: data.draw(st.integers(0, 1)) for a in D.arc_list}
    v = data.draw(st.integers(0, D.n - 1))
    s = switch(w, v)
    for c in enumerate_cycles(D):
        assert sum(w[a] for a in cycle_arcs(c)) % 2 == sum(s[a] for a in cycle_arcs(c)) % 2


def test_all_noneven_weightings_single_two_cycle():
    ws = list(all_noneven_weightings(double_cycle(2)))
    assert sorted(tuple(w[a] for a in sorted(w)) for w in ws) == [(0, 1), (1, 0)]


# -- weak double cycles ---------------------------------------------------------------------


def test_library_members_recognized():
    lib = weak_double_cycle_library(6)
    assert lib
    for P, k in lib:
        assert k % 2 == 1
        ok, kk = recognize_weak_double_cycle(P)
        assert ok and kk == k
        assert is_noneven_unweighted(P).even


def test_library_is_deduplicated():
    lib = weak_double_cycle_library()
    keys = [(P.n, canon.canonical_mask(P)) for P, _ in lib]
    assert len(keys) == len(set(keys))
    assert max(P.n for P, _ in lib) == 7


def test_c3star_certificate(c3star):
    cert = find_weak_double_cycle(c3star)
    assert cert is not None and cert.k == 3
    assert cert.host_arcs() == set(c3star.arcs)


def test_c4star_has_no_certificate(c4star):
    assert find_weak_double_cycle(c4star) is None


def test_subdivided_c3star_certificate(c3star):
    D = subdivide(subdivide(c3star, (0, 1)), (1, 2))
    cert = find_weak_double_cycle(D)
    assert cert is not None and cert.k == 3


@pytest.mark.parametrize("D, expected", [
    (double_cycle(5), (True, 5)),
    (subdivide(double_cycle(4), (0, 1)), (True, 4)),
    (Digraph(3, [(0, 1), (1, 2), (2, 0)]), (False, None)),
    (split(subdivide(double_cycle(3), (2, 0)), 1), (True, 3)),
    (Digraph(4, [(u, v) for u in range(4) for v in range(4) if u != v]), (False, None)),
])
def test_recognize(D, expected):
    assert recognize_weak_double_cycle(D) == expected
    assert recognize_weak_double_cycle(D, order="high") == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.lists(st.tuples(st.booleans(), st.integers(0, 100)), max_size=3))
def test_reduction_order_confluent(k, ops):
    D = double_cycle(k)
    for is_split, r in ops:
        D = split(D, r % D.n) if is_split else subdivide(D, D.arc_list[r % D.m])
    low = recognize_weak_double_cycle(D, "low")
    assert low == recognize_weak_double_cycle(D, "high")
    assert low == (True, k) or k == 2


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=5))
def test_certificate_soundness(D):
    v = is_noneven_unweighted(D, certify=True)
    if v.even:
        cert = v.witness
        assert cert is not None
        assert cert.host_arcs() <= set(D.arcs)
        ok, k = recognize_weak_double_cycle(cert.subdigraph())
        assert ok and k % 2 == 1


def test_deciders_agree_exhaustive_n4():
    for n in range(1, 5):
        for mask in canon.digraph_classes(n):
            D = canon.digraph_of_mask(n, mask)
            assert is_noneven_unweighted(D).even == (find_weak_double_cycle(D) is not None)


def test_deciders_agree_random_n6():
    rng = np.random.default_rng(6)
    for _ in range(300):
        D = random_digraph(6, rng)
        assert is_noneven_unweighted(D).even == (find_weak_double_cycle(D) is not None)


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=4), st.data())
def test_closure_operations_preserve_verdict(D, data):
    if D.n == 0:
        return
    before = is_noneven_unweighted(D).noneven
    if D.m and data.draw(st.booleans()):
        E = subdivide(D, data.draw(st.sampled_from(D.arc_list)))
    else:
        E = split(D, data.draw(st.integers(0, D.n - 1)))
    assert is_noneven_unweighted(E).noneven == before


# -- sign-nonsingularity ------------------------------------------------------------------


def test_sns_examples(c2_pattern, overlap_failure):
    assert is_sns(c2_pattern)
    assert sorted(permutation_terms(c2_pattern.entries).tolist()) == [1, 1]
    assert not is_sns(SignPattern([[1, 1], [1, 1]]))
    assert is_sns(overlap_failure)


def test_combinatorially_singular_examples():
    assert is_combinatorially_singular(SignPattern(np.zeros((3, 3), dtype=int)))
    assert not is_combinatorially_singular(SignPattern(np.eye(3, dtype=int)))
    assert is_combinatorially_singular(SignPattern([[0, 1], [0, 1]]))
    assert not is_sns(SignPattern([[0, 1], [0, 1]]))


def test_sns_refuses_large():
    with pytest.raises(SearchSpaceTooLarge):
        is_sns(SignPattern(-np.eye(9, dtype=int)))


def _det_sign_oracle(H: SignPattern) -> bool:
    """SNS oracle: explicit determinant expansion via itertools."""
    from itertools import permutations

    n = H.n
    signs = set()
    for p in permutations(range(n)):
        term = 1
        for i in range(n):
            term *= int(H.entries[i, p[i]])
        if term:
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
            signs.add(term * (-1) ** inv)
    return len(signs) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_sns_matches_oracle(rows):
    H = SignPattern(rows)
    assert is_sns(H) == _det_sign_oracle(H)


def _negative_diagonal_patterns(n):
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for vals in product((-1, 0, 1), repeat=len(off)):
        E = -np.eye(n, dtype=int)
        for (i, j), x in zip(off, vals):
            E[i, j] = x
        yield SignPattern(E)


def test_sns_bridge_exhaustive_n3():
    count = 0
    for H in _negative_diagonal_patterns(3):
        assert is_sns(H) == is_even_weighted(digraph_of(H)).noneven
        count += 1
    assert count == 3 ** 6


def test_sns_bridge_random_n4():
    rng = np.random.default_rng(4)
    for _ in range(2000):
        E = rng.integers(-1, 2, size=(4, 4))
        np.fill_diagonal(E, -1)
        H = SignPattern(E)
        assert is_sns(H) == is_even_weighted(digraph_of(H)).noneven


def test_noneven_weighting_gives_sns_pattern(c4star):
    for w in all_noneven_weightings(c4star):
        assert is_sns(negative_diagonal_pattern(c4star, w))
