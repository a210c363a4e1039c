from hypothesis import given, settings

from cubical.syntax import (
    BASE, TRUE, App, DBind, DLam, DName, Lam, Loop, Pair, TBind, Var, alpha_eq, alpha_key, dim, flip,
    free_dims, free_vars, fresh_name, fresh_var, is_const, is_reserved, subterms, ONE, ZERO,
)
from cubical.substitution import dim_subst

from strategies import terms


def test_dims():
    assert dim(0) == ZERO and dim(1) == ONE and dim("x") == DName("x")
    assert is_const(ZERO) and not is_const(DName("x"))
    assert flip(ZERO) == ONE and flip(ONE) == ZERO


def test_alpha_eq_ignores_bound_names():
    assert alpha_eq(Lam(TBind("a", Var("a"))), Lam(TBind("b", Var("b"))))
    assert alpha_eq(DLam(DBind("x", Loop(DName("x")))), DLam(DBind("y", Loop(DName("y")))))
    assert not alpha_eq(Lam(TBind("a", Var("a"))), Lam(TBind("a", Var("b"))))
    assert not alpha_eq(DLam(DBind("x", Loop(DName("i")))), DLam(DBind("x", Loop(DName("x")))))


def test_free_names():
    t = Pair(Lam(TBind("a", App(Var("a"), Var("b")))), DLam(DBind("x", Pair(Loop(DName("x")), Loop(DName("i"))))))
    assert free_vars(t) == {"b"}
    assert free_dims(t) == {"i"}
    assert t.fv == free_vars(t) and t.fd == free_dims(t)


def test_fresh_names_are_reserved_and_deterministic():
    n = fresh_name({"x", "%0"})
    assert is_reserved(n) and n != "%0"
    assert fresh_name({"x", "%0"}) == n
    assert is_reserved(fresh_var(())) and not is_reserved("a")


def test_subterms_outermost_first():
    t = Pair(TRUE, BASE)
    assert list(subterms(t)) == [t, TRUE, BASE]


@given(terms)
@settings(max_examples=300)
def test_alpha_key_reflexive_and_rename_invariant(t):
    assert alpha_eq(t, t)
    # renaming a bound name to a fresh one gives an alpha-equivalent term
    wrapped = DLam(DBind("x", t))
    renamed = DLam(DBind("%9", dim_subst(t, DName("%9"), "x")))
    assert alpha_key(wrapped) == alpha_key(renamed)


@given(terms)
@settings(max_examples=300)
def test_cached_sets_match_recomputation(t):
    assert t.fd == free_dims(t)
    assert t.fv == free_vars(t)
    assert t.size >= 1
