"""Acceptance suite: one test per criterion, run with `pytest -v`.

Each criterion is checked at its stated tolerance; the conftest hook
prints one ACCEPTANCE PASS/FAIL line per test.
"""

import random
import time

from clusterkit.morphism import (
    analyze_injection,
    check_morphism,
    ideal_check,
    image_seed,
    morphism_spec,
    tensor_decomposition_report,
)
from clusterkit.pairs import enumerate_complete_pairs
from clusterkit.quiver import matrix_to_quiver, quiver_to_matrix
from clusterkit.seed import (
    canonical_key,
    cluster_variables,
    decompose_seed,
    enumerate_class,
    freeze,
    initial_seed,
    mutate,
    named_form,
    reglue,
    seed_to_json,
    subseed,
    validate,
)

from conftest import random_symmetrizable_seed, random_tame_seed, seven_vertex_seed
from test_pairs import count_components_union_find
from test_seed import brute_force_clusters


def test_a2c_enumeration(a2c):
    """Exact variable strings for the two-coefficient A2 seed, < 1 s."""
    t0 = time.perf_counter()
    mclass = enumerate_class(a2c)
    cv = cluster_variables(mclass)
    elapsed = time.perf_counter() - t0
    assert mclass.complete
    assert {str(v) for v in cv.exchangeable} == {
        "x1",
        "x2",
        "(1 + x2)/x1",
        "(x1 + x3)/x2",
        "(x1 + x3 + x2*x3)/(x1*x2)",
    }
    assert {str(v) for v in cv.frozen} == {"x3", "x4"}
    assert elapsed < 1.0, f"enumeration took {elapsed:.3f}s"


def test_non_ideal_reproduction(a2c):
    """The two-integer-image morphism passes the axioms vacuously, has
    image seed (∅, (x1), [0]), and is certified not ideal with witness x2."""
    spec = morphism_spec(
        a2c,
        a2c,
        {"x1": 0, "x2": -1, "x3": 0, "x4": "x1"},
        generator_table={
            "(1 + x2)/x1": "x2",
            "(x1 + x3)/x2": 0,
            "(x1 + x3 + x2*x3)/(x1*x2)": -1,
        },
    )
    verdict = check_morphism(spec)
    assert verdict.ok and verdict.cm3 == "pass"  # no biadmissible sequences
    img = image_seed(spec)
    assert img.matrix.ex == ()
    assert [v.name for v in img.matrix.fx] == ["x1"]
    assert img.matrix.entries == ((),)
    result = ideal_check(spec)
    assert result.status == "not_ideal"
    assert str(result.witness) == "x2"


def test_seven_vertex_decomposition_golden(seven_vertex):
    """Three components with exchangeable sets {1,2}, {5}, {6,7}; x3
    copied into all three, x4 into two; regluing is exact."""
    dec = decompose_seed(seven_vertex)
    assert len(dec.components) == 3
    assert [frozenset(v.name for v in c.matrix.ex) for c in dec.components] == [
        frozenset({"x1", "x2"}),
        frozenset({"x5"}),
        frozenset({"x6", "x7"}),
    ]
    ident = {orig.name: copies for orig, copies in dec.identification.items()}
    assert [ci for ci, _ in ident["x3"]] == [0, 1, 2]
    assert [ci for ci, _ in ident["x4"]] == [0, 1]
    glued = reglue(dec)
    assert seed_to_json(glued) == seed_to_json(seven_vertex)


def test_freezing_golden(freezing_example):
    frozen = freeze(freezing_example, ["x3"])
    assert [v.name for v in frozen.matrix.ex] == ["x1", "x2"]
    assert [v.name for v in frozen.matrix.fx] == ["x3"]
    assert frozen.matrix.entries == ((0, -2), (1, 0), (-2, 2))


def test_tensor_decomposition(seven_vertex):
    """The identification ideal has exactly the three generators, and the
    variable-set partition holds under full enumeration."""
    report = tensor_decomposition_report(seven_vertex)
    assert report.complete
    assert report.variable_sets_match
    gens = {(g.original, g.left, g.right) for g in report.ideal_generators}
    assert gens == {
        ("x3", (0, "x3"), (1, "x3_1")),
        ("x3", (0, "x3"), (2, "x3_2")),
        ("x4", (0, "x4"), (1, "x4_1")),
    }


def test_property_suite():
    """1000 random tame seeds (n ≤ 4, m ≤ 6, entries in [-3,3],
    skew-symmetrizable by construction): involution, symmetrizer
    stability, the Laurent phenomenon over every admissible sequence of
    length ≤ 6, and both round trips; target < 60 s.

    Sequences are covered through canonical deduplication: seeds with
    equal canonical forms carry equal value sets, so checking every seed
    in the depth-6 ball checks every sequence endpoint.
    """
    rng = random.Random(20240809)
    t0 = time.perf_counter()
    for _ in range(1000):
        seed = random_tame_seed(rng)
        d = validate(seed)
        n = len(seed.matrix.ex)

        for x in seed.matrix.ex:
            once = mutate(seed, x)
            assert mutate(once, x) == seed, "mutation is not an involution"
            assert validate(once) == d, "symmetrizer not preserved"

        def check_values(s):
            for i, value in enumerate(s.values):
                assert value._terms, "cluster variable vanished"
                for coeff in value._terms.values():
                    assert isinstance(coeff, int)
                mins = value.min_exponents()
                for pos, m in enumerate(mins):
                    if m < 0:
                        assert pos < n, (
                            "frozen variable occurs with negative exponent"
                        )

        check_values(seed)
        found = {canonical_key(seed)}
        frontier = [(seed, None)]
        for _depth in range(6):
            nxt = []
            for s, came in frontier:
                for x in s.matrix.ex:
                    if x == came:
                        continue  # mutating back provably returns to s's parent
                    t = mutate(s, x)
                    kt = canonical_key(t)
                    if kt not in found:
                        found.add(kt)
                        check_values(t)
                        nxt.append((t, x))
            frontier = nxt

        assert quiver_to_matrix(matrix_to_quiver(seed.matrix, d)) == seed.matrix
        assert named_form(reglue(decompose_seed(seed))) == named_form(seed)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"property suite took {elapsed:.1f}s"


def test_section_criterion(a2c):
    """200 randomized freeze-and-embed constructions: is_section holds
    exactly when no embedded frozen variable was a demoted exchangeable;
    the identity into the A3 seed is not a section."""
    rng = random.Random(77)
    outcomes = {True: 0, False: 0}
    built = 0
    while built < 200:
        seed = random_symmetrizable_seed(rng, max_ex=4, max_total=6)
        ex2 = [v for v in seed.matrix.ex if rng.random() < 0.4]
        frozen = freeze(seed, ex2)
        dec = decompose_seed(frozen)
        if not dec.components:
            continue
        chosen = [c for c in dec.components if rng.random() < 0.7] or [
            dec.components[0]
        ]
        keep_ex, keep_fx = set(), set()
        for comp in chosen:
            keep_ex |= {v.name for v in comp.matrix.ex}
            for orig, copies in dec.identification.items():
                if any(dec.components[ci] is comp for ci, _ in copies):
                    keep_fx.add(orig.name)
        source = subseed(frozen, keep_ex, keep_fx)
        spec = morphism_spec(source, seed, {v.name: v.name for v in source.rows})
        report = analyze_injection(spec)
        expected_ex2 = keep_fx & {v.name for v in ex2}
        assert set(report.ex2) == expected_ex2
        assert report.is_section == (not expected_ex2)
        outcomes[report.is_section] += 1
        built += 1
    assert outcomes[True] and outcomes[False]

    source = initial_seed(["x1", "x2"], ["x3"], [[0, 1], [-1, 0], [0, -1]])
    target = initial_seed(
        ["x1", "x2", "x3"], [], [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    )
    spec = morphism_spec(source, target, {"x1": "x1", "x2": "x2", "x3": "x3"})
    assert analyze_injection(spec).is_section is False


def test_complete_pair_count_law(seven_vertex):
    """2^c ordered pairs on 100 random seeds, against an independent
    component-count oracle; 8 pairs for the seven-vertex seed."""
    rng = random.Random(41)
    for _ in range(100):
        seed = random_symmetrizable_seed(rng)
        ex0 = [v.name for v in seed.matrix.ex if rng.random() < 0.3]
        pairs = enumerate_complete_pairs(seed, ex0)
        c = count_components_union_find(seed, ex0)
        assert len(pairs) == 2 ** c
    assert len(enumerate_complete_pairs(seven_vertex, [])) == 8


def test_a3_desk_check(a3):
    mclass = enumerate_class(a3)
    assert mclass.complete
    cv = cluster_variables(mclass)
    clusters, variables = brute_force_clusters(a3, depth=8)
    assert len(mclass.seeds) == 14 == len(clusters)
    assert len(cv.exchangeable) == 9 == len(variables)
