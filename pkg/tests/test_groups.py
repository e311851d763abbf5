from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critvals.errors import InvalidPermutation
from critvals.groups import Permutation, group_analyze


def tr(m, a, b):
    return Permutation.from_cycles(m, [(a, b)])


def test_permutation_basics():
    p = Permutation.from_cycles(4, [(1, 2, 3)])
    assert p.images == (2, 3, 1, 4)
    assert p.cycles() == [[1, 2, 3]]
    assert p.cycle_type() == (3, 1)
    assert p.then(p.inverse()).is_identity
    assert tr(3, 1, 2).is_transposition
    assert not p.is_transposition
    with pytest.raises(InvalidPermutation):
        Permutation([1, 1, 2])


def test_example_s3():
    r = group_analyze([tr(3, 1, 2), tr(3, 2, 3)], 3)
    assert r.is_transitive and r.all_transpositions and r.equals_symmetric
    assert r.order == 6 and r.solvable is True
    assert r.verdict == "SymmetricGroup"


def test_example_not_transitive():
    r = group_analyze([tr(3, 1, 2)], 3)
    assert not r.is_transitive and not r.equals_symmetric
    assert r.verdict == "Subgroup"
    assert r.order == 2


def test_example_s5():
    r = group_analyze([tr(5, i, i + 1) for i in range(1, 5)], 5)
    assert r.equals_symmetric and r.order == 120 and r.solvable is False


def test_cyclic_group_is_solvable_subgroup():
    c = Permutation.from_cycles(5, [(1, 2, 3, 4, 5)])
    r = group_analyze([c], 5)
    assert r.is_transitive and not r.all_transpositions
    assert r.order == 5 and r.solvable is True and r.verdict == "Subgroup"


def test_alternating_group_from_three_cycles():
    gens = [Permutation.from_cycles(5, [(1, 2, 3)]), Permutation.from_cycles(5, [(1, 2, 3, 4, 5)])]
    r = group_analyze(gens, 5)
    assert r.order == 60 and r.solvable is False and not r.equals_symmetric


def test_order_cap():
    r = group_analyze([tr(8, i, i + 1) for i in range(1, 8)], 8, order_cap=1000)
    assert r.order == "exceeds cap" and r.solvable == "order cap exceeded"
    assert r.equals_symmetric


def test_wrong_degree_rejected():
    with pytest.raises(InvalidPermutation):
        group_analyze([tr(3, 1, 2)], 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.data())
def test_symmetric_criterion_matches_closure(m, data):
    # random transpositions: whenever the criterion says S(m), the closure has m! elements
    k = data.draw(st.integers(1, 2 * m))
    gens = []
    for _ in range(k):
        a, b = data.draw(st.lists(st.integers(1, m), min_size=2, max_size=2, unique=True))
        gens.append(tr(m, a, b))
    r = group_analyze(gens, m)
    assert r.equals_symmetric == (r.order == math.factorial(m))
    if r.equals_symmetric:
        assert r.solvable == (m <= 4)
