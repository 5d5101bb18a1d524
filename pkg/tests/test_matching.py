from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altdiam import MultiplicityMatrix, NoPerfectMatching, NotBalanced, hall_matching, multiplicity_matrix
from altdiam.matching import match_counts


@st.composite
def balanced_projections(draw):
    m = draw(st.integers(1, 6))
    n = draw(st.integers(1, 6))
    values = draw(st.permutations([v for v in range(m) for _ in range(n)]))
    return [list(values[a * n:(a + 1) * n]) for a in range(m)]


def test_counts_from_projection():
    assert multiplicity_matrix([[0, 1], [1, 0]]).entries == ((1, 1), (1, 1))
    assert multiplicity_matrix([[0, 0], [1, 1]]).entries == ((2, 0), (0, 2))


def test_unbalanced_projection():
    with pytest.raises(NotBalanced) as info:
        multiplicity_matrix([[0, 0], [0, 1]])
    assert (info.value.value, info.value.count) == (0, 3)


def test_matrix_validation():
    with pytest.raises(NotBalanced):
        MultiplicityMatrix(((1, 0), (1, 0)), 1)
    with pytest.raises(ValueError):
        MultiplicityMatrix(((1, 0, 0), (0, 1, 0)), 1)


def test_matching_examples():
    assert hall_matching(MultiplicityMatrix(((1, 1), (1, 1)), 2)).match == (0, 1)
    assert hall_matching(MultiplicityMatrix(((0, 2), (2, 0)), 2)).match == (1, 0)
    for size in range(1, 6):
        N = MultiplicityMatrix(tuple(tuple(3 * (a == b) for b in range(size)) for a in range(size)), 3)
        assert hall_matching(N).match == tuple(range(size))


def test_matching_needs_rerouting():
    # row 1 can only use column 0, which row 0 takes first
    counts = [[1, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert match_counts(counts) == [1, 0, 2]


def test_violator_certificate():
    counts = [[1, 0, 0], [1, 0, 0], [0, 1, 1]]
    with pytest.raises(NoPerfectMatching) as info:
        match_counts(counts)
    rows = info.value.violator
    cols = {b for a in rows for b in range(3) if counts[a][b]}
    assert len(cols) < len(rows)


def test_permutation_matrix():
    M = hall_matching(MultiplicityMatrix(((0, 1), (1, 0)), 1)).as_permutation_matrix()
    assert M == [[0, 1], [1, 0]]


@given(balanced_projections())
def test_matching_exists_and_decrements(proj):
    N = multiplicity_matrix(proj)
    counts = [list(r) for r in N.entries]
    for left in range(N.regularity, 0, -1):
        match = match_counts(counts)
        assert sorted(match) == list(range(N.size))
        for a, b in enumerate(match):
            assert counts[a][b] >= 1
            counts[a][b] -= 1
        for a in range(N.size):
            assert sum(counts[a]) == left - 1
            assert sum(counts[r][a] for r in range(N.size)) == left - 1
    assert all(v == 0 for r in counts for v in r)


def test_deterministic():
    rng = random.Random(7)
    vals = [v for v in range(5) for _ in range(4)]
    rng.shuffle(vals)
    N = multiplicity_matrix([vals[i:i + 4] for i in range(0, 20, 4)])
    assert hall_matching(N) == hall_matching(N)
