import json
import random
import tempfile
from pathlib import Path

import pytest

from cubical.checker import (
    CATALOG, REASON_CODES, Assumption, Derivation, DerivationFormatError, ElemEq, Judgment, TypeEq,
    dumps, instantiate, judgments_alpha_eq, loads, load, read_judgment, show_judgment, validate,
)
from cubical.checker.generate import (
    build_corpus, derive, full_examples, mutate_conclusion, mutate_premise, valid_instance,
)
from cubical.checker.validate import _check_restriction
from cubical.restriction import EqSet
from cubical.surface import parse
from cubical.syntax import BASE, BOOL, CIRCLE, DName, TRUE, ZERO, ONE, Var

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus" / "derivations"


def test_catalog_size():
    assert len(CATALOG) >= 58


def test_true_in_bool():
    assert validate(derive("true", {})).valid
    d = derive("true", {})
    bad = Derivation("true", {}, Judgment(frozenset(), ElemEq(TRUE, TRUE, CIRCLE)), [])
    assert validate(bad).codes == ["TemplateMismatch"]
    assert validate(d).summary() == "valid (1 nodes)"


def test_pi_beta_conclusion():
    _, concl = instantiate("pi-beta", {"a": "a", "A": BOOL, "B": BOOL, "M": Var("a"), "N": TRUE})
    assert judgments_alpha_eq(concl, read_judgment("(judg (dims) (eqs) (ctx) (eq (app (lam a a) true) true bool))"))


def test_loop_endpoint():
    _, concl = instantiate("loop-endpoint", {"eps": ZERO})
    assert judgments_alpha_eq(concl, read_judgment("(judg (dims) (eqs) (ctx) (eq (loop 0) base circle))"))


@pytest.mark.parametrize("name", sorted(full_examples()))
def test_full_examples_have_no_assumptions(name):
    rep = validate(full_examples()[name])
    assert rep.valid and not rep.assumptions


def _node(rule, bindings, concl=None):
    return Derivation(rule, bindings, concl or Judgment(frozenset(), TypeEq(BOOL, BOOL)), [])


def test_reason_codes():
    assert validate(_node("no-such-rule", {})).codes == ["UnknownRule"]
    assert validate(_node("loop-endpoint", {})).codes == ["MissingBinding"]
    assert validate(_node("true", {"Q": TRUE})).codes == ["UnexpectedBinding"]
    assert validate(_node("loop-endpoint", {"eps": DName("x")})).codes == ["SortMismatch"]
    side = {"A": BOOL, "extents": (DName("i"),), "r": ZERO, "r2": ONE, "M": TRUE, "y": "y",
            "tubes": ((TRUE, TRUE),), "i": 1, "Psi": frozenset({"i"})}
    assert validate(_node("hcom-tube", side)).codes == ["SideCondition"]
    _, concl = instantiate("loop", {"r": DName("x"), "Psi": frozenset({"x"})})
    unscoped = Judgment(frozenset(), concl.body)
    assert validate(_node("loop", {"r": DName("x")}, unscoped)).codes == ["IllScoped"]
    d = derive("var", {"a": "a", "A": BOOL})
    assert validate(d).codes == ["ArityMismatch"]


def test_premise_and_template_mutations():
    d = valid_instance("pi-beta", random.Random(3))
    assert validate(d).valid
    assert validate(mutate_conclusion(d)).codes == ["TemplateMismatch"]
    assert validate(mutate_premise(d)).codes == ["PremiseMismatch"]
    assert mutate_premise(derive("true", {})) is None


def test_restriction_guard():
    # the template check already pins the restriction down, so this guard is
    # exercised on a node whose conclusion disagrees with its own bindings
    J = ElemEq(TRUE, TRUE, BOOL)
    b = {"J": J, "x": "x", "eps": ONE}
    prems, concl = instantiate("restrict-one", b)
    bad = Judgment(concl.psi, J, concl.gamma, EqSet.of(("x", 0)))
    node = Derivation("restrict-one", b, bad, [])
    assert _check_restriction(CATALOG["restrict-one"], node, prems)
    assert not _check_restriction(CATALOG["restrict-one"], Derivation("restrict-one", b, concl, []), prems)
    assert "RestrictionMismatch" in REASON_CODES


def test_every_rule_round_trips():
    rng = random.Random(11)
    for name in sorted(CATALOG):
        d = valid_instance(name, rng)
        assert validate(d).valid, name
        again = loads(dumps(d))
        assert dumps(again) == dumps(d)
        assert validate(again).valid


def test_format_errors():
    with pytest.raises(DerivationFormatError):
        loads(json.dumps({"format": 2, "derivation": {}}))
    with pytest.raises(DerivationFormatError):
        loads(json.dumps({"format": 1, "derivation": {"rule": "true"}}))


def test_report_dict():
    rep = validate(_node("no-such-rule", {}))
    d = rep.to_dict()
    assert d["valid"] is False and d["failures"][0]["code"] == "UnknownRule"
    assert "UnknownRule" in rep.summary()


def test_shipped_corpus_matches_generator():
    with tempfile.TemporaryDirectory() as tmp:
        expect = build_corpus(tmp, seed=0)
        for rel, code in expect.items():
            shipped = CORPUS / rel
            assert shipped.read_text() == (Path(tmp) / rel).read_text(), rel
            rep = validate(load(shipped))
            if code is None:
                assert rep.valid, rel
            else:
                assert rep.codes == [code], rel
    assert len(list(CORPUS.rglob("*.json"))) == len(expect)
