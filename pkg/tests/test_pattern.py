import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noneven.digraph import Digraph, degree_sequences, double_cycle
from noneven.exceptions import CombinatoriallySingular
from noneven.parity import all_noneven_weightings
from noneven.pattern import (
    SignPattern,
    SignTransform,
    WeightedDigraph,
    digraph_of,
    in_sign_class,
    negative_diagonal_normalize,
    negative_diagonal_pattern,
    pattern_of,
    sgn,
    sign_equivalent,
)
from noneven.structures import CaterpillarSpec, build_extended_caterpillar, w4


# -- sgn / sign class ------------------------------------------------------------


@pytest.mark.parametrize("x, s", [(-3.2, -1), (0, 0), (0.0, 0), (7, 1), (-0.0, 0), (1e-300, 1)])
def test_sgn(x, s):
    assert sgn(x) == s


def test_pattern_in_own_class():
    H = SignPattern([[1, 0, -1], [0, -1, 1], [1, 1, 0]])
    assert in_sign_class(H.entries, H)


def test_zero_matrix_not_in_nonzero_class(c2_pattern):
    assert not in_sign_class(np.zeros((2, 2)), c2_pattern)


def test_entrywise_sign_agreement(c2_pattern):
    assert in_sign_class([[-0.5, 2], [-1, -3]], c2_pattern)
    assert not in_sign_class([[-0.5, 2], [1, -3]], c2_pattern)


def test_sign_class_dimension_mismatch(c2_pattern):
    with pytest.raises(ValueError):
        in_sign_class(np.zeros((3, 3)), c2_pattern)


@pytest.mark.parametrize("bad", [[[2]], [[1, 0]], [], [[0.5, 1], [1, 1]]])
def test_sign_pattern_rejects_bad_entries(bad):
    with pytest.raises(ValueError):
        SignPattern(bad)


def test_sign_pattern_is_read_only():
    H = SignPattern([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        H.entries[0, 0] = -1


# -- weighted digraph of a pattern ---------------------------------------------------


def test_digraph_of_printed_matrix(overlap_failure):
    Dw = digraph_of(overlap_failure)
    one_based = {(u + 1, v + 1): w for (u, v), w in Dw.weight.items()}
    assert one_based == {(1, 2): 0, (1, 4): 1, (2, 4): 0, (3, 2): 1, (3, 4): 0, (4, 2): 1}


def test_digraph_of_zero_and_diagonal_patterns():
    assert digraph_of(SignPattern(np.zeros((3, 3), dtype=int))).base.m == 0
    assert digraph_of(SignPattern(-np.eye(3, dtype=int))).base.m == 0


def test_digraph_of_ignores_diagonal(overlap_failure):
    E = overlap_failure.entries.astype(int).copy()
    np.fill_diagonal(E, [1, 0, 1, -1])
    assert digraph_of(SignPattern(E)) == digraph_of(overlap_failure)


def test_pattern_of_round_trip(overlap_failure):
    assert pattern_of(digraph_of(overlap_failure)) == overlap_failure


def test_weighted_digraph_must_be_total():
    D = Digraph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        WeightedDigraph(D, {(0, 1): 0})
    with pytest.raises(ValueError):
        WeightedDigraph(D, {(0, 1): 0, (1, 0): 2})


# -- normalization -------------------------------------------------------------------


def test_normalize_permutation_pattern():
    H = SignPattern([[0, 1], [-1, 0]])
    G, t = negative_diagonal_normalize(H)
    assert G.is_negative_diagonal
    assert t.apply(H) == G
    assert G == SignPattern([[-1, 0], [0, -1]])


def test_normalize_zero_column_is_singular():
    with pytest.raises(CombinatoriallySingular):
        negative_diagonal_normalize(SignPattern([[0, 1], [0, 1]]))


def test_normalize_keeps_negative_diagonal_pattern(overlap_failure):
    G, _ = negative_diagonal_normalize(overlap_failure)
    assert G == overlap_failure


# -- sign-equivalence ----------------------------------------------------------------


def test_equivalent_to_self(overlap_failure):
    t = sign_equivalent(overlap_failure, overlap_failure)
    assert t is not None and t.apply(overlap_failure) == overlap_failure


def test_equivalent_to_negation(overlap_failure):
    t = sign_equivalent(overlap_failure, -overlap_failure)
    assert t is not None and t.apply(overlap_failure) == -overlap_failure


def test_not_equivalent_different_support():
    assert sign_equivalent(SignPattern([[1, 1], [0, 1]]), SignPattern([[1, 1], [1, 1]])) is None


def test_not_equivalent_different_parity():
    # a 2x2 all-nonzero pattern has a sign-invariant: the product of its entries
    assert sign_equivalent(SignPattern([[1, 1], [1, 1]]), SignPattern([[1, 1], [1, -1]])) is None


def test_w4_and_c4star_patterns_equivalent():
    for D1 in (w4(), double_cycle(4)):
        for D2 in (w4(), double_cycle(4)):
            G = negative_diagonal_pattern(D1, next(all_noneven_weightings(D1)))
            H = negative_diagonal_pattern(D2, next(all_noneven_weightings(D2)))
            t = sign_equivalent(G, H)
            assert t is not None and t.apply(G) == H


patterns = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n),
                       min_size=n, max_size=n)
).map(SignPattern)


@st.composite
def transforms(draw, n):
    return SignTransform(
        tuple(draw(st.permutations(range(n)))),
        tuple(draw(st.permutations(range(n)))),
        tuple(draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))),
        tuple(draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))),
    )


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_transformed_copy_is_equivalent(data):
    G = data.draw(patterns)
    t = data.draw(transforms(G.n))
    H = t.apply(G)
    found = sign_equivalent(G, H)
    assert found is not None
    assert found.apply(G) == H
    back = sign_equivalent(H, G)
    assert back is not None and back.apply(H) == G


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_equivalence_is_transitive(data):
    G = data.draw(patterns)
    H = data.draw(transforms(G.n)).apply(G)
    K = data.draw(transforms(G.n)).apply(H)
    assert sign_equivalent(G, K) is not None


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_equivalence_is_symmetric_on_random_pairs(data):
    G = data.draw(patterns)
    H = SignPattern(data.draw(st.lists(
        st.lists(st.sampled_from([-1, 0, 1]), min_size=G.n, max_size=G.n), min_size=G.n, max_size=G.n)))
    assert (sign_equivalent(G, H) is None) == (sign_equivalent(H, G) is None)


def _brute_equivalent(G: SignPattern, H: SignPattern) -> bool:
    """Oracle: try every transform."""
    from itertools import permutations, product

    n = G.n
    for rp in permutations(range(n)):
        for cp in permutations(range(n)):
            for rs in product((-1, 1), repeat=n):
                for cs in product((-1, 1), repeat=n):
                    if SignTransform(rp, cp, rs, cs).apply(G) == H:
                        return True
    return False


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_equivalence_matches_brute_force(data):
    n = data.draw(st.integers(1, 3))
    cells = st.lists(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n), min_size=n, max_size=n)
    G = SignPattern(data.draw(cells))
    # half the time start from a transformed copy so positives are exercised too
    if data.draw(st.booleans()):
        H = data.draw(transforms(n)).apply(G)
        if data.draw(st.booleans()):
            E = H.entries.astype(int).copy()
            i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
            E[i, j] = -E[i, j]
            H = SignPattern(E)
    else:
        H = SignPattern(data.draw(cells))
    assert (sign_equivalent(G, H) is not None) == _brute_equivalent(G, H)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_equivalence_preserves_degree_multisets(data):
    G = data.draw(patterns)
    H = data.draw(transforms(G.n)).apply(G)
    try:
        Gn, _ = negative_diagonal_normalize(G)
        Hn, _ = negative_diagonal_normalize(H)
    except CombinatoriallySingular:
        return
    dG = degree_sequences(digraph_of(Gn).base)
    dH = degree_sequences(digraph_of(Hn).base)
    assert dG[:2] == dH[:2]


@settings(max_examples=150, deadline=None)
@given(patterns)
def test_normalize_output_is_equivalent(H):
    try:
        G, t = negative_diagonal_normalize(H)
    except CombinatoriallySingular:
        return
    assert G.is_negative_diagonal
    assert t.apply(H) == G
    assert sign_equivalent(H, G) is not None


# -- degree sequences -----------------------------------------------------------------


def test_degree_sequences_c4star():
    ind, outd, _ = degree_sequences(double_cycle(4))
    assert ind == outd == (2, 2, 2, 2)


def test_degree_sequences_backbone_caterpillar():
    ind, outd, _ = degree_sequences(build_extended_caterpillar(CaterpillarSpec(4, (0, 0))))
    assert sorted(ind) == sorted(outd) == [1, 2, 3, 3]


def test_degree_sequences_empty():
    ind, outd, tot = degree_sequences(Digraph(3, []))
    assert ind == outd == tot == (0, 0, 0)
