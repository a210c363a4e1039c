from pathlib import Path

import pytest

from cubical.opsem import (
    RULES, Stepped, Stuck, Value, elaborate_com, eval_term, evaluate, is_val, notf, step, whnf,
)
from cubical.surface import parse, show
from cubical.syntax import FALSE, TRUE, DBind, Hcom, alpha_eq, dim, free_dims

from golden_cases import CASES, STUCK
from regen_golden import GOLDEN, render


def test_every_rule_has_a_case():
    assert sorted(c[0] for c in CASES) == sorted(RULES)
    assert len(RULES) >= 45


@pytest.mark.parametrize("rule,source,label,reduct", CASES, ids=[c[0] for c in CASES])
def test_first_step_matches_hand_derivation(rule, source, label, reduct):
    out = step(parse(source))
    assert isinstance(out, Stepped)
    assert out.label == label
    assert alpha_eq(out.next, parse(reduct)), show(out.next)


@pytest.mark.parametrize("rule", [c[0] for c in CASES])
def test_stored_trace_exact(rule):
    source = next(c[1] for c in CASES if c[0] == rule)
    stored = (GOLDEN / f"{rule}.trace").read_text(encoding="utf-8")
    assert render(source) == stored


@pytest.mark.parametrize("source,reason", STUCK)
def test_stuck_reasons(source, reason):
    tr = evaluate(parse(source))
    assert tr.outcome == "stuck"
    assert tr.stuck.reason == reason
    assert tr.value is None


@pytest.mark.parametrize("src", [
    "true", "false", "base", "(loop i)", "(lam a (app a a))", "(pair (fst true) base)",
    "(dlam x (dapp (lam a a) x))", "bool", "(pi a bool bool)", "(not-ty i)", "(not-el i true)",
    "(ia i bool circle (lam a a) (lam b b))", "(ia-in i true (lam a a))",
    "(hcom circle (exts i) 0 1 base (tube y base base))",
])
def test_values_do_not_step(src):
    t = parse(src)
    assert is_val(t)
    assert isinstance(step(t), Value)
    tr = evaluate(t)
    assert tr.outcome == "value" and tr.n_steps == 0 and tr.final == t


def test_fuel_exhaustion_reports_last_term():
    t = parse("(notf (notf (notf (notf true))))")
    tr = evaluate(t, fuel=2)
    assert tr.outcome == "fuel" and tr.n_steps == 2
    assert evaluate(t).value == TRUE
    with pytest.raises(ValueError):
        evaluate(t, fuel=0)


def test_value_on_last_unit_of_fuel_counts():
    tr = evaluate(parse("(fst (pair true false))"), fuel=1)
    assert tr.outcome == "value" and tr.final == TRUE


def test_trace_elision():
    t = parse("(notf (notf (notf (notf true))))")
    full = evaluate(t)
    cut = evaluate(t, max_len=2)
    assert cut.n_steps == full.n_steps
    assert cut.steps == full.steps[-2:]
    assert cut.elided == full.n_steps - 2
    assert "<" in cut.lines()[1] and "elided" in cut.lines()[1]
    bare = evaluate(t, keep=False)
    assert bare.steps == [] and bare.final == full.final


def test_aliases():
    t = parse("(notf true)")
    assert eval_term(t).final == FALSE
    assert whnf(t) == FALSE
    assert whnf(parse("(app true true)")) is None


def test_notf_twice_is_identity_on_constants():
    for b in (TRUE, FALSE):
        assert whnf(notf(notf(b))) == b


def test_com_elaborates_to_hcom_of_coercions():
    line = DBind("x", parse("(not-ty x)"))
    tubes = ((DBind("y", TRUE), DBind("y", FALSE)),)
    t = elaborate_com((dim(0),), line, dim(0), dim(1), TRUE, tubes)
    assert isinstance(t, Hcom)
    assert alpha_eq(t.ty, parse("(not-ty 1)"))
    # extent 0 selects the first tube at y := 1, i.e. true coerced 1 to 1
    assert whnf(t) == TRUE
    src = "(com x (not-ty x) (exts 0) 0 1 true (tube y true false))"
    assert alpha_eq(parse(src), t)


def test_stability_on_golden_traces():
    for _, source, _, _ in CASES:
        cur = parse(source)
        for _, nxt in evaluate(cur, fuel=10_000).steps:
            assert free_dims(nxt) <= free_dims(cur)
            cur = nxt


def test_step_is_deterministic():
    for _, source, _, _ in CASES:
        assert step(parse(source)) == step(parse(source))
