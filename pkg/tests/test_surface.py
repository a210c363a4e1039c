from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from cubical.harness import GrammarGen
from cubical.opsem import notf
from cubical.surface import ParseError, parse, parse_dim, parse_program, show
from cubical.syntax import TRUE, Hcom, If, alpha_eq, dim

from golden_cases import CASES
from strategies import terms

ROOT = Path(__file__).resolve().parent.parent


def test_atoms_and_forms():
    assert parse("true") is TRUE
    assert parse_dim("0") == dim(0) and parse_dim("x") == dim("x")
    t = parse("(hcom bool (exts i 0) 0 1 true (tube y true true) (tube y false false))")
    assert isinstance(t, Hcom) and len(t.tubes) == 2
    assert isinstance(parse("(notf true)"), If)
    assert parse("(notf true)") == notf(TRUE)


def test_comments_and_whitespace():
    assert parse("  ; note\n (fst\n (pair true ; x\n false))") == parse("(fst (pair true false))")


@pytest.mark.parametrize("src,code", [
    ("(hcom bool (exts) 0 1 true)", "EmptyExtents"),
    ("(frob true)", "UnknownForm"),
    ("(fst true false)", "ArityError"),
    ("(lam %0 true)", "ReservedName"),
    ("(fst (pair true false)", "SyntaxError"),
    ("(fst true))", "SyntaxError"),
    ("()", "SyntaxError"),
    ("true false", "SyntaxError"),
])
def test_error_codes(src, code):
    with pytest.raises(ParseError) as e:
        parse(src)
    assert e.value.code == code


def test_error_position():
    with pytest.raises(ParseError) as e:
        parse("(fst\n  (hcom bool (exts) 0 1 true))")
    assert (e.value.line, e.value.col) == (2, 14)
    assert str(e.value).startswith("2:14: EmptyExtents")


def test_hcom_tube_count_must_match_extents():
    with pytest.raises(ParseError):
        parse("(hcom bool (exts i j) 0 1 true (tube y true true))")


def test_program_definitions_expand():
    prog = parse_program("(def t true)\n(def u (pair t t))\n(eval (fst u))\n(assert-canon (snd u) t)")
    assert [n for n, _ in prog.definitions] == ["t", "u"]
    assert prog.directives[0].term == parse("(fst (pair true true))")
    assert prog.directives[1].kind == "assert-canon" and prog.directives[1].expected is TRUE
    assert prog.directives[1].line == 4


def test_program_errors():
    with pytest.raises(ParseError) as e:
        parse_program("(def t true)(def t false)")
    assert e.value.code == "DuplicateDefinition"
    with pytest.raises(ParseError):
        parse_program("true")


def test_shipped_program_parses():
    prog = parse_program((ROOT / "corpus/programs/basics.ctt").read_text())
    assert len(prog.directives) >= 8


@pytest.mark.parametrize("src", [c[1] for c in CASES] + [c[3] for c in CASES])
def test_print_parse_round_trip_golden(src):
    t = parse(src)
    assert alpha_eq(parse(show(t)), t)


def test_print_parse_round_trip_grammar_terms():
    g = GrammarGen(seed=7, depth=5)
    for _ in range(300):
        t = g.term()
        assert alpha_eq(parse(show(t)), t), show(t)


@given(terms)
@settings(max_examples=300)
def test_print_parse_round_trip_property(t):
    assert alpha_eq(parse(show(t)), t)


@given(st.integers(0, 10_000))
@settings(max_examples=100)
def test_printing_is_stable(seed):
    t = GrammarGen(seed=seed, depth=4).term()
    assert show(parse(show(t))) == show(t)
