import random

import pytest

from clusterkit.errors import NotExchangeable, SubsetBudgetExceeded
from clusterkit.morphism import analyze_injection, morphism_spec
from clusterkit.pairs import (
    classify_cotorsion_pairs,
    enumerate_complete_pairs,
    t_structure_pairs,
    verify_complete_pair,
)
from clusterkit.seed import freeze, initial_seed

from conftest import random_symmetrizable_seed


def count_components_union_find(seed, ex0):
    """Independent component-count oracle over the frozen matrix."""
    frozen = freeze(seed, ex0)
    n = len(frozen.matrix.ex)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(n):
            if frozen.matrix.entries[i][j] != 0:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(n)})


def test_indecomposable_two_pairs(a2c):
    pairs = enumerate_complete_pairs(a2c, [])
    assert len(pairs) == 2
    full = next(p for p in pairs if p.side1 == (0,))
    empty = next(p for p in pairs if p.side1 == ())
    assert {v.name for v in full.seed1.matrix.ex} == {"x1", "x2"}
    # the isolated frozen x4 is attached to both sides
    assert "x4" in {v.name for v in full.seed1.matrix.fx}
    assert empty.seed1.matrix.ex == ()
    assert {v.name for v in empty.seed1.matrix.fx} == {"x4"}
    assert full.coefficient_set == ("x3", "x4")


def test_seven_vertex_eight_pairs(seven_vertex):
    pairs = enumerate_complete_pairs(seven_vertex, [])
    assert len(pairs) == 8


def test_freeze_everything_single_pair(a2c):
    pairs = enumerate_complete_pairs(a2c, ["x1", "x2"])
    assert len(pairs) == 1
    (pair,) = pairs
    assert pair.seed1.matrix.ex == () and pair.seed2.matrix.ex == ()
    assert {v.name for v in pair.seed1.matrix.fx} == {"x1", "x2", "x3", "x4"}
    assert pair.coefficient_set == ("x3", "x4", "x1", "x2")


def test_rejects_frozen_freezing_set(a2c):
    with pytest.raises(NotExchangeable):
        enumerate_complete_pairs(a2c, ["x3"])


def test_count_law_random():
    rng = random.Random(29)
    for _ in range(40):
        seed = random_symmetrizable_seed(rng)
        ex0 = [v.name for v in seed.ex if rng.random() < 0.3]
        pairs = enumerate_complete_pairs(seed, ex0)
        c = count_components_union_find(seed, ex0)
        assert len(pairs) == 2 ** c


def test_swap_closure(seven_vertex):
    pairs = enumerate_complete_pairs(seven_vertex, [])
    sides = {(p.side1, p.side2) for p in pairs}
    for s1, s2 in sides:
        assert (s2, s1) in sides


def test_pairs_reverify(seven_vertex, a2c):
    rng = random.Random(31)
    for seed in (seven_vertex, a2c, random_symmetrizable_seed(rng)):
        for ex0 in ([], [seed.ex[0].name]):
            for pair in enumerate_complete_pairs(seed, ex0):
                assert verify_complete_pair(seed, pair)


def test_sides_are_sections(seven_vertex):
    frozen = freeze(seven_vertex, [])
    for pair in enumerate_complete_pairs(seven_vertex, []):
        for side in (pair.seed1, pair.seed2):
            if not side.matrix.ex:
                continue  # trivial side: nothing to embed
            spec = morphism_spec(
                side, frozen, {v.name: v.name for v in side.rows}
            )
            report = analyze_injection(spec)
            assert report.is_section


def test_classification_and_t_structures(a3, a2c):
    classification = classify_cotorsion_pairs(a3)
    assert len(classification) == 8  # subsets of three exchangeables
    for ex0, pairs in classification.items():
        c = count_components_union_find(a3, list(ex0))
        assert len(pairs) == 2 ** c
    # A3 has no frozen variables: the empty freezing gives coefficient-free pairs
    ts = t_structure_pairs(classification)
    assert ts and all(p.freezing == () for p in ts)
    # with frozen variables present there are never coefficient-free pairs
    assert t_structure_pairs(classify_cotorsion_pairs(a2c)) == []


def test_subset_budget(a3):
    with pytest.raises(SubsetBudgetExceeded):
        classify_cotorsion_pairs(a3, subset_limit=2)
    classification = classify_cotorsion_pairs(a3, subset_limit=2, allow_large=True)
    assert len(classification) == 8


def test_requested_subsets_only(a3):
    classification = classify_cotorsion_pairs(a3, subsets=[["x1"], []])
    assert list(classification) == [("x1",), ()]
