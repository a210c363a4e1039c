import pytest
from hypothesis import given, settings, strategies as st

from cubical.substitution import (
    SubstError, TotalDimSubst, apply_total, compose, dim_subst, dsubst_many, instantiate_dbind,
    instantiate_tbind, term_subst,
)
from cubical.surface import parse
from cubical.syntax import DBind, DName, TRUE, Var, alpha_eq, free_dims, free_vars, ONE, ZERO

from strategies import NAMES, terms


def test_dim_subst_avoids_capture():
    t = parse("(dlam y (pair (loop x) (loop y)))")
    out = dim_subst(t, DName("y"), "x")
    assert free_dims(out) == {"y"}
    assert alpha_eq(out, parse("(dlam z (pair (loop y) (loop z)))"))


def test_dim_subst_stops_at_binder():
    t = parse("(dlam x (loop x))")
    assert dim_subst(t, ONE, "x") is t


def test_term_subst_avoids_capture():
    t = parse("(lam b (pair a b))")
    out = term_subst(t, Var("b"), "a")
    assert free_vars(out) == {"b"}
    assert alpha_eq(out, parse("(lam c (pair b c))"))


def test_term_subst_renames_dim_binder_on_conflict():
    t = parse("(dlam x (pair a (loop x)))")
    out = term_subst(t, parse("(loop x)"), "a")
    assert free_dims(out) == {"x"}
    assert alpha_eq(out, parse("(dlam z (pair (loop x) (loop z)))"))


def test_instantiate():
    assert instantiate_dbind(DBind("x", parse("(loop x)")), ZERO) == parse("(loop 0)")
    assert instantiate_tbind(parse("(lam a (pair a a))").body, TRUE) == parse("(pair true true)")


def test_total_substitution_validation():
    with pytest.raises(SubstError):
        TotalDimSubst({"x", "y"}, set(), {"x": 0})
    with pytest.raises(SubstError):
        TotalDimSubst({"x"}, set(), {"x": "z"})
    with pytest.raises(SubstError):
        apply_total(parse("(loop q)"), TotalDimSubst.identity({"x"}))
    with pytest.raises(SubstError):
        compose(TotalDimSubst.identity({"x"}), TotalDimSubst.identity({"y"}))


def test_total_substitution_is_simultaneous():
    swap = TotalDimSubst({"x", "y"}, {"x", "y"}, {"x": "y", "y": "x"})
    assert apply_total(parse("(pair (loop x) (loop y))"), swap) == parse("(pair (loop y) (loop x))")


def _substs(src, tgt):
    return st.fixed_dictionaries({n: st.sampled_from([0, 1, *tgt]) for n in src}).map(
        lambda m: TotalDimSubst(src, tgt, m))


@given(terms, _substs(NAMES, ("u", "v")), _substs(("u", "v"), ("w",)))
@settings(max_examples=300)
def test_compose_law(t, p1, p2):
    assert alpha_eq(apply_total(apply_total(t, p1), p2), apply_total(t, compose(p1, p2)))


@given(terms)
@settings(max_examples=200)
def test_identity_substitution(t):
    assert alpha_eq(apply_total(t, TotalDimSubst.identity(NAMES)), t)
    assert dsubst_many(t, {}) is t


@given(terms, st.sampled_from(NAMES), st.sampled_from([0, 1, "x", "y", "i"]))
@settings(max_examples=300)
def test_free_dims_after_subst(t, x, r):
    out = dim_subst(t, r, x)
    expect = free_dims(t) - {x}
    if x in free_dims(t) and isinstance(r, str):
        expect |= {r}
    assert free_dims(out) == expect
