import random

import pytest

from clusterkit.errors import (
    NotComponentEmbedding,
    NotIdeal,
    NotInjective,
)
from clusterkit.laurent import parse, transport
from clusterkit.morphism import (
    analyze_injection,
    check_morphism,
    factorize_ideal,
    ideal_check,
    image_seed,
    morphism_from_json,
    morphism_spec,
    specialize,
    tensor_decomposition_report,
)
from clusterkit.seed import (
    cluster_variables,
    decompose_seed,
    enumerate_class,
    freeze,
    initial_seed,
    named_form,
    seed_to_json,
    subseed,
)

from conftest import random_symmetrizable_seed


def identity_spec(seed):
    return morphism_spec(seed, seed, {v.name: v.name for v in seed.rows})


@pytest.fixture
def thawing_identity():
    """Identity map into a seed where the frozen variable becomes
    exchangeable; an injective morphism that is not a section."""
    source = initial_seed(["x1", "x2"], ["x3"], [[0, 1], [-1, 0], [0, -1]])
    target = initial_seed(["x1", "x2", "x3"], [], [[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    return morphism_spec(source, target, {"x1": "x1", "x2": "x2", "x3": "x3"})


@pytest.fixture
def counterexample(a2c):
    """The non-ideal morphism: both exchangeables to integers, x4 to x1,
    with the generator table fixing the non-inducible images."""
    return morphism_spec(
        a2c,
        a2c,
        {"x1": 0, "x2": -1, "x3": 0, "x4": "x1"},
        generator_table={
            "(1 + x2)/x1": "x2",
            "(x1 + x3)/x2": 0,
            "(x1 + x3 + x2*x3)/(x1*x2)": -1,
        },
    )


# -- check_morphism ---------------------------------------------------------------


def test_identity_spec_passes(a2c):
    verdict = check_morphism(identity_spec(a2c), depth=8)
    assert verdict.ok and verdict.cm1 and verdict.cm2
    assert verdict.cm3 == "pass"
    assert verdict.inducible


def test_thawing_identity_passes(thawing_identity):
    verdict = check_morphism(thawing_identity, depth=12)
    assert verdict.ok
    assert verdict.cm3 == "pass"


def test_counterexample_is_morphism_with_vacuous_cm3(counterexample):
    verdict = check_morphism(counterexample)
    assert verdict.ok
    assert verdict.cm3 == "pass"  # no biadmissible sequences at all
    assert not verdict.inducible


def test_cm1_failure_witness(a2c):
    spec = morphism_spec(
        a2c, a2c, {"x1": "x3", "x2": "x2", "x3": "x3", "x4": "x4"}
    )
    verdict = check_morphism(spec)
    assert not verdict.cm1 and verdict.witness.axiom == "CM1"
    assert verdict.witness.variable == "x1"
    assert verdict.cm3 == "skipped"
    assert not verdict.ok


def test_cm2_failure_witness(a2c):
    spec = morphism_spec(
        a2c, a2c, {"x1": "x1", "x2": "x2", "x3": "1 + x1", "x4": "x4"}
    )
    verdict = check_morphism(spec)
    assert verdict.cm1 and not verdict.cm2
    assert verdict.witness.axiom == "CM2"


def test_cm3_failure_witness(a2c):
    # swapping the exchangeables is not compatible with mutation
    spec = morphism_spec(
        a2c, a2c, {"x1": "x2", "x2": "x1", "x3": "x3", "x4": "x4"}
    )
    verdict = check_morphism(spec)
    assert verdict.cm1 and verdict.cm2
    assert verdict.cm3 == "fail"
    assert verdict.witness.axiom == "CM3"
    assert verdict.witness.sequence == ("x1",)
    # the reported mismatch replays
    assert verdict.witness.lhs != verdict.witness.rhs


def test_cm3_exhausted_at_tiny_depth(thawing_identity):
    verdict = check_morphism(thawing_identity, depth=1)
    assert verdict.cm3 == "exhausted"
    assert verdict.checked_depth == 1
    assert verdict.ok  # no counterexample found within depth


def test_cm3_witness_replays_from_scratch(a2c):
    # recompute both sides of the reported mismatch independently
    from clusterkit.laurent import substitute
    from clusterkit.seed import apply_sequence

    spec = morphism_spec(
        a2c, a2c, {"x1": "x2", "x2": "x1", "x3": "x3", "x4": "x4"}
    )
    witness = check_morphism(spec).witness
    assert witness is not None and witness.axiom == "CM3"
    mutated_source = apply_sequence(a2c, witness.sequence)
    lhs = substitute(
        mutated_source.value_of(witness.variable), spec.images, a2c.ring
    )
    image_sequence = [str(spec.image_of(x)) for x in witness.sequence]
    mutated_target = apply_sequence(a2c, image_sequence)
    rhs = mutated_target.value_of(str(spec.image_of(witness.variable)))
    assert str(lhs) == witness.lhs
    assert str(rhs) == witness.rhs
    assert lhs != rhs


# -- image seed -----------------------------------------------------------------


def test_image_seed_identity(a2c):
    img = image_seed(identity_spec(a2c))
    assert named_form(img) == named_form(a2c)


def test_image_seed_counterexample(counterexample):
    img = image_seed(counterexample)
    assert img.ex == ()
    assert [v.name for v in img.fx] == ["x1"]
    assert img.matrix.entries == ((),)


def test_image_seed_surjective():
    source = initial_seed(
        ["x1", "x2", "x3"], [], [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]
    )
    target = initial_seed(["x1", "x2"], [], [[0, 1], [-1, 0]])
    spec = morphism_spec(source, target, {"x1": "x1", "x2": "x2", "x3": 5})
    assert named_form(image_seed(spec)) == named_form(target)


# -- ideal check -----------------------------------------------------------------


def test_ideal_fast_path_inclusion(a2c):
    # dropping only the isolated frozen x4 keeps all exchange relations
    source = subseed(a2c, ["x1", "x2"], ["x3"])
    spec = morphism_spec(source, a2c, {"x1": "x1", "x2": "x2", "x3": "x3"})
    verdict = ideal_check(spec)
    assert verdict.status == "ideal"
    assert verdict.fast_path == "exchangeables-to-exchangeables"


def test_ideal_fast_path_inclusion_thawing_identity(thawing_identity):
    verdict = ideal_check(thawing_identity)
    assert verdict.status == "ideal"
    assert verdict.fast_path == "exchangeables-to-exchangeables"


def test_ideal_fast_path_acyclic():
    source = initial_seed(["x1", "x2"], [], [[0, 1], [-1, 0]])
    spec = morphism_spec(source, source, {"x1": 1, "x2": "x2"})
    verdict = ideal_check(spec, precheck=False)
    assert verdict.status == "ideal"
    assert verdict.fast_path == "inducible-acyclic-source"


def test_ideal_fast_path_surjective():
    source = initial_seed(
        ["x1", "x2", "x3"], [], [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]
    )
    target = initial_seed(["x1", "x2"], [], [[0, 1], [-1, 0]])
    spec = morphism_spec(source, target, {"x1": "x1", "x2": "x2", "x3": 5})
    verdict = ideal_check(spec, precheck=False)
    assert verdict.status == "ideal"
    assert verdict.fast_path == "inducible-surjective"


def test_counterexample_not_ideal(counterexample):
    verdict = ideal_check(counterexample)
    assert verdict.status == "not_ideal"
    assert str(verdict.witness) == "x2"
    # witness is certified by support alone: x2 is not an image-seed variable
    assert verdict.fast_path is None
    img = image_seed(counterexample)
    image_positions = {
        counterexample.target.ring.position(v.name) for v in img.rows
    }
    assert not verdict.witness.support() <= image_positions


def test_fast_path_inclusion_confirmed_by_brute_force(thawing_identity):
    # exhaustively compare f(A(source)) and A(image seed) generator sets
    from clusterkit.morphism import _f_eval

    assert ideal_check(thawing_identity).fast_path == "exchangeables-to-exchangeables"
    img = image_seed(thawing_identity)
    source_class = enumerate_class(thawing_identity.source)
    image_class = enumerate_class(img)
    assert source_class.complete and image_class.complete
    sv = cluster_variables(source_class)
    iv = cluster_variables(image_class)
    f_gens = {_f_eval(thawing_identity, v) for v in sv.exchangeable + sv.frozen}
    image_gens = {
        transport(v, thawing_identity.target.ring)
        for v in iv.exchangeable + iv.frozen
    }
    assert f_gens == image_gens


def test_ideal_unknown_without_generator_table(a2c):
    spec = morphism_spec(a2c, a2c, {"x1": 0, "x2": -1, "x3": 0, "x4": "x1"})
    verdict = ideal_check(spec)
    assert verdict.status == "unknown"
    assert "generator table" in verdict.detail


def test_ideal_slow_path_and_degree_budget(a2c):
    # same shape as the counterexample, but the free image is chosen
    # inside Z[x1], so both generator inclusions hold; certifying
    # x1^2 + x1 ∈ Z[x1] needs a degree-2 product of the generators
    spec = morphism_spec(
        a2c,
        a2c,
        {"x1": 0, "x2": -1, "x3": 0, "x4": "x1"},
        generator_table={
            "(1 + x2)/x1": "x1^2 + x1",
            "(x1 + x3)/x2": 0,
            "(x1 + x3 + x2*x3)/(x1*x2)": -1,
        },
    )
    verdict = ideal_check(spec)
    assert verdict.status == "ideal"
    assert verdict.fast_path is None  # certified by bounded membership
    starved = ideal_check(spec, degree_bound=1)
    assert starved.status == "unknown"
    assert "degree bound 1" in starved.detail


# -- analyze_injection -------------------------------------------------------------


def test_injection_thawing_identity(thawing_identity):
    report = analyze_injection(thawing_identity)
    assert report.ex0 == ("x1", "x2")
    assert report.ex2 == ("x3",)
    assert report.ex1 == () and report.fx0 == () and report.fx1 == ()
    assert not report.is_section
    assert report.component_map == (
        type(report.component_map[0])(0, 0, False),
    )


def test_injection_subseed_is_section(a2c):
    source = subseed(a2c, ["x1", "x2"], ["x3", "x4"])
    spec = morphism_spec(source, a2c, {v.name: v.name for v in source.rows})
    report = analyze_injection(spec)
    assert report.is_section and report.ex2 == ()


def test_injection_rejects_integer_image(a2c):
    spec = morphism_spec(a2c, a2c, {"x1": 1, "x2": "x2", "x3": "x3", "x4": "x4"})
    with pytest.raises(NotInjective):
        analyze_injection(spec)


def test_injection_rejects_duplicates(a2c):
    source = subseed(a2c, ["x1", "x2"], [])
    spec = morphism_spec(source, a2c, {"x1": "x1", "x2": "x1"})
    with pytest.raises(NotInjective):
        analyze_injection(spec)


def test_injection_rejects_wrong_matrix():
    source = initial_seed(["x1", "x2"], [], [[0, 1], [-1, 0]])
    target = initial_seed(["x1", "x2"], [], [[0, 2], [-1, 0]])
    spec = morphism_spec(source, target, {"x1": "x1", "x2": "x2"})
    with pytest.raises(NotComponentEmbedding):
        analyze_injection(spec)


def test_injection_opposite_component():
    target = initial_seed(["x1", "x2"], ["x3"], [[0, 1], [-1, 0], [0, -1]])
    source = initial_seed(["x1", "x2"], ["x3"], [[0, -1], [1, 0], [0, 1]])
    spec = morphism_spec(source, target, {"x1": "x1", "x2": "x2", "x3": "x3"})
    report = analyze_injection(spec)
    assert report.is_section
    assert report.component_map[0].opposite


def test_injection_random_freeze_and_embed():
    rng = random.Random(17)
    seen_section = seen_not = 0
    for _ in range(40):
        seed = random_symmetrizable_seed(rng, max_ex=4, max_total=6)
        ex2 = [v for v in seed.ex if rng.random() < 0.4]
        frozen = freeze(seed, ex2)
        dec = decompose_seed(frozen)
        if not dec.components:
            continue
        chosen = [c for c in dec.components if rng.random() < 0.7] or [
            dec.components[0]
        ]
        keep_ex, keep_fx = set(), set()
        for comp in chosen:
            keep_ex |= {v.name for v in comp.ex}
            for orig, copies in dec.identification.items():
                if any(dec.components[ci] is comp for ci, _ in copies):
                    keep_fx.add(orig.name)
        source = subseed(frozen, keep_ex, keep_fx)
        spec = morphism_spec(
            source, seed, {v.name: v.name for v in source.rows}
        )
        report = analyze_injection(spec)
        expected_ex2 = keep_fx & {v.name for v in ex2}
        assert set(report.ex2) == expected_ex2
        assert report.is_section == (not expected_ex2)
        if report.is_section:
            seen_section += 1
        else:
            seen_not += 1
    assert seen_section and seen_not


# -- factorization -------------------------------------------------------------------


def test_factorize_identity(a2c):
    surj, inj = factorize_ideal(identity_spec(a2c))
    assert named_form(surj.target) == named_form(a2c)
    for v in a2c.rows:
        img = inj.images[inj.source.var(v.name)]
        assert str(img) == v.name


def test_factorize_composes(a2c):
    source = subseed(a2c, ["x1", "x2"], ["x3"])
    spec = morphism_spec(source, a2c, {"x1": "x1", "x2": "x2", "x3": "x3"})
    surj, inj = factorize_ideal(spec)
    for v in source.rows:
        through = transport(surj.images[v], a2c.ring)
        assert through == spec.images[v]
    # the surjection hits every image-seed variable
    hit = {str(p) for p in surj.images.values()}
    assert {v.name for v in surj.target.rows} <= hit


def test_factorize_requires_ideal(counterexample):
    with pytest.raises(NotIdeal):
        factorize_ideal(counterexample)


# -- specialization -------------------------------------------------------------------


def test_specialize_frozen_to_one(a2c):
    spec = specialize(a2c, ["x3"])
    verdict = check_morphism(spec, depth=8)
    assert verdict.ok and verdict.cm3 == "pass"


def test_specialize_empty_is_identity(a2c):
    spec = specialize(a2c, [])
    assert named_form(spec.target) == named_form(a2c)
    verdict = check_morphism(spec)
    assert verdict.ok


def test_specialize_value_matches_enumeration(a2c):
    from clusterkit.morphism import _f_eval

    spec = specialize(a2c, ["x3"])
    value = parse("(x1 + x3)/x2", a2c.ring)
    specialized = _f_eval(spec, value)
    assert str(specialized) == "(1 + x1)/x2"
    target_vars = cluster_variables(enumerate_class(spec.target))
    assert specialized in set(target_vars.exchangeable)


def test_specialize_exchangeable_to_zero_fails_checks(a2c):
    spec = specialize(a2c, ["x1"], values={"x1": 0})
    verdict = check_morphism(spec)
    assert not verdict.ok or verdict.cm3 == "fail"


# -- tensor decomposition ----------------------------------------------------------


def test_tensor_report_seven_vertex(seven_vertex):
    report = tensor_decomposition_report(seven_vertex)
    assert report.complete
    assert report.variable_sets_match
    gens = {(g.original, g.left, g.right) for g in report.ideal_generators}
    assert gens == {
        ("x3", (0, "x3"), (1, "x3_1")),
        ("x3", (0, "x3"), (2, "x3_2")),
        ("x4", (0, "x4"), (1, "x4_1")),
    }
    displays = {g.display for g in report.ideal_generators}
    assert "x3⊗1⊗1 - 1⊗x3_1⊗1" in displays
    assert "x3⊗1⊗1 - 1⊗1⊗x3_2" in displays
    assert "x4⊗1⊗1 - 1⊗x4_1⊗1" in displays


def test_tensor_report_indecomposable(freezing_example):
    # infinite type: tiny budgets keep the enumeration cheap; the report
    # is about the decomposition, which is trivial here
    report = tensor_decomposition_report(freezing_example, max_depth=1, max_seeds=5)
    assert report.ideal_generators == ()
    assert not report.complete


def test_tensor_report_two_components_shared_frozen():
    seed = initial_seed(
        ["x1", "x2", "x4", "x5"],
        ["x3"],
        [
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, -1, 0],
            [1, 0, 1, 0],
        ],
    )
    report = tensor_decomposition_report(seed)
    assert report.complete and report.variable_sets_match
    assert len(report.ideal_generators) == 1
    g = report.ideal_generators[0]
    assert (g.original, g.left, g.right) == ("x3", (0, "x3"), (1, "x3_1"))


# -- JSON ------------------------------------------------------------------------


def test_morphism_from_json(a2c):
    blob = {
        "source": seed_to_json(a2c),
        "target": seed_to_json(a2c),
        "images": {"x1": "0", "x2": "-1", "x3": 0, "x4": "x1"},
        "generator_table": {
            "(1 + x2)/x1": "x2",
            "(x1 + x3)/x2": "0",
            "(x1 + x3 + x2*x3)/(x1*x2)": "-1",
        },
    }
    spec = morphism_from_json(blob)
    assert check_morphism(spec).ok
    assert ideal_check(spec).status == "not_ideal"
