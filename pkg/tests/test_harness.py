import pytest
from hypothesis import given, settings, strategies as st

from cubical.harness import (
    Canon, FuelExhausted, GenConfig, GrammarGen, NonCanonical, StuckOrFuel, SuiteConfig, TypedGen,
    check_canonicity, endpoint_substs, gen_closed_bool, gen_closed_circle, obs_equal_bool, run_suite, shrink,
)
from cubical.harness.oracle import expected_step
from cubical.harness.suites import determinacy_problem, shard_seed, stability_problem
from cubical.opsem import Stepped, Value, notf, step
from cubical.surface import parse
from cubical.syntax import TRUE, alpha_eq, free_dims, free_vars

from golden_cases import CASES


def test_canonicity_verdicts():
    assert check_canonicity(parse("(coe x (not-ty x) 0 1 true)")) == Canon("False")
    assert check_canonicity(parse("(hcom bool (exts 0) 0 1 true (tube y true true))")) == Canon("True")
    assert check_canonicity(parse("(loop 1)")) == Canon("Base")
    assert isinstance(check_canonicity(parse("(lam a a)")), NonCanonical)
    v = check_canonicity(parse("(app true true)"))
    assert isinstance(v, StuckOrFuel) and v.trace.outcome == "stuck"
    with pytest.raises(ValueError):
        Canon("Maybe")


def test_obs_equal_bool():
    assert obs_equal_bool(parse("(notf (notf true))"), TRUE)
    assert not obs_equal_bool(parse("(notf true)"), TRUE)
    # coe along not from i: equal at both endpoints to the flipped or unflipped input
    lhs = parse("(coe x bool i 1 (if _ bool (hcom bool (exts i) 0 1 true (tube y true true)) true false))")
    assert obs_equal_bool(lhs, TRUE)
    assert obs_equal_bool(lhs, TRUE, psi={"i", "j"})
    with pytest.raises(ValueError):
        obs_equal_bool(lhs, TRUE, psi=set())
    # a non-boolean side is never equal
    assert not obs_equal_bool(parse("base"), parse("base"))


def test_obs_equal_fuel():
    with pytest.raises(FuelExhausted):
        obs_equal_bool(parse("(notf (notf (notf true)))"), TRUE, fuel=1)


def test_endpoint_substs():
    subs = endpoint_substs({"i", "j"})
    assert len(subs) == 4
    assert all(not s.target for s in subs)


def test_generator_config_validation():
    with pytest.raises(ValueError):
        GenConfig(depth=0)
    with pytest.raises(ValueError):
        GenConfig(weights={"const": 0.0})


def test_depth_one_is_constants():
    terms = {t for t, _ in gen_closed_bool(GenConfig(depth=1, seed=5), 300)}
    assert terms == {TRUE, parse("false")}


def test_depth_three_reaches_double_negation():
    # pinned: seed 0 at depth 3 produces notf(notf(true)) at position 78
    terms = [t for t, _ in gen_closed_bool(GenConfig(depth=3, seed=0), 100)]
    assert alpha_eq(terms[78], notf(notf(TRUE)))


def test_typed_terms_are_closed_and_deterministic():
    a = [t for t, _ in gen_closed_bool(GenConfig(depth=5, seed=9), 200)]
    b = [t for t, _ in gen_closed_bool(GenConfig(depth=5, seed=9), 200)]
    assert a == b
    assert all(not free_dims(t) and not free_vars(t) for t in a)


def test_circle_terms_are_canonical():
    for t, _ in gen_closed_circle(GenConfig(depth=5, seed=2), 200):
        assert check_canonicity(t) == Canon("Base")


def test_grammar_terms_without_free_names():
    g = GrammarGen(seed=1, depth=5, free_dims=())
    for _ in range(300):
        t = g.term()
        assert not free_dims(t) and not free_vars(t)


def test_grammar_terms_free_names_within_context():
    g = GrammarGen(seed=1, depth=5)
    for _ in range(300):
        assert free_dims(g.term()) <= {"i", "j"}


@pytest.mark.parametrize("rule,source,label,_r", CASES, ids=[c[0] for c in CASES])
def test_oracle_agrees_on_golden_sources(rule, source, label, _r):
    out = step(parse(source))
    exp = expected_step(parse(source))
    assert exp[0] == "step"
    assert "/".join(exp[1] + (exp[2],)) == out.label


def test_oracle_on_values_and_stuck():
    assert expected_step(TRUE) == ("value",)
    assert expected_step(parse("(app true true)")) == ("stuck",)


def test_determinacy_and_stability_helpers():
    assert determinacy_problem(parse("(notf (notf true))"), 50) is None
    assert stability_problem(parse("(coe x (not-ty x) 0 1 true)"), 50) is None


@given(st.integers(0, 2**32))
@settings(max_examples=200, deadline=None)
def test_value_exclusive_with_step(seed):
    t = GrammarGen(seed=seed, depth=4).term()
    out = step(t)
    if isinstance(out, Value):
        assert expected_step(t) == ("value",)
    if isinstance(out, Stepped):
        assert free_dims(out.next) <= free_dims(t)


def test_shrink_preserves_predicate():
    big = parse("(pair (notf (notf true)) (fst (pair (loop 1) base)))")

    def fails(u):
        return "Pair" in type(u).__name__

    small = shrink(big, fails)
    assert fails(small)
    assert small.size < big.size
    assert alpha_eq(small, parse("(pair true base)"))


def test_shrink_keeps_term_when_nothing_helps():
    t = parse("(notf true)")
    assert shrink(t, lambda u: u == t) == t


@pytest.mark.parametrize("name", ["canonicity", "kan-laws", "not-involution", "ia-roundtrip",
                                  "sbool-collapse", "circle-canonicity", "obs-congruence"])
def test_small_suites_pass(name):
    rep = run_suite(name, SuiteConfig(count=60, seed=4))
    assert rep.passed, rep.summary()
    assert rep.count >= 60


def test_sharding_is_deterministic():
    one = run_suite("determinacy", SuiteConfig(count=400, seed=3, shards=4))
    par = run_suite("determinacy", SuiteConfig(count=400, seed=3, shards=4, workers=2))
    assert one.to_json() == par.to_json()
    assert one.count == 400 and one.shards == 4
    assert shard_seed(3, 0) == 3 and shard_seed(3, 1) != shard_seed(3, 2)


def test_report_is_reproducible():
    a = run_suite("stability", SuiteConfig(count=100, seed=8))
    b = run_suite("stability", SuiteConfig(count=100, seed=8))
    assert a.to_json() == b.to_json()
    assert "elapsed" not in a.to_dict()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_planted_failure_is_reported_with_trace():
    from cubical.harness.suites import SuiteReport, _law

    rep = SuiteReport("planted", 0)
    _law(rep, SuiteConfig(), "negation is identity", notf(parse("(fst (pair true base))")), TRUE)
    assert not rep.passed
    f = rep.failures[0]
    assert "sides differ" in f["detail"] and f["trace"][0].startswith("start")
    assert "FAIL" in rep.summary()
