"""An independent redex matcher used to test determinacy.

Every operational rule is written here as a flat shape predicate over the
term, with no reference to the evaluator.  Determinacy then amounts to: at
each term at most one rule matches, and the evaluator picks exactly that one
(descending through the matching congruence rules).
"""

from __future__ import annotations

from ..syntax import (
    App, Base, Bool, CElim, Circle, Coe, Const, DApp, DLam, DName, FalseTm, Fst, Hcom, Id, If, IaIn,
    IaOut, IaTy, Lam, Loop, NotEl, NotTy, Pair, Pi, SBool, Sigma, Snd, TrueTm,
)


def _name(r) -> bool:
    return isinstance(r, DName)


def value(t) -> bool:
    """Values, restated from the rule table."""
    if isinstance(t, (Bool, SBool, Circle, Pi, Sigma, Id, Lam, Pair, DLam, TrueTm, FalseTm, Base)):
        return True
    if isinstance(t, (Loop, NotTy, NotEl, IaTy, IaIn)):
        return _name(t.r)
    if isinstance(t, Hcom):
        return (isinstance(t.ty, (Bool, Circle)) and t.src != t.dst
                and not any(isinstance(r, Const) for r in t.extents))
    return False


def type_value(t) -> bool:
    return isinstance(t, (Bool, SBool, Circle, Pi, Sigma, Id, NotTy, IaTy)) and value(t)


def _hv(t, cls) -> bool:
    return isinstance(t, Hcom) and isinstance(t.ty, cls) and value(t)


def _const_ext(t: Hcom) -> bool:
    return any(isinstance(r, Const) for r in t.extents)


def _coe_shape(t: Coe):
    return t.line.name, t.line.body


# (rule, predicate, principal-argument selector or None)
def _coe_not(t, pred):
    x, a = _coe_shape(t)
    return isinstance(a, NotTy) and type_value(a) and pred(x, a, t)


REDEX = (
    ("app-beta", lambda t: isinstance(t, App) and isinstance(t.fn, Lam)),
    ("fst-beta", lambda t: isinstance(t, Fst) and isinstance(t.arg, Pair)),
    ("snd-beta", lambda t: isinstance(t, Snd) and isinstance(t.arg, Pair)),
    ("dapp-beta", lambda t: isinstance(t, DApp) and isinstance(t.fn, DLam)),
    ("not-ty-const", lambda t: isinstance(t, NotTy) and not _name(t.r)),
    ("loop-const", lambda t: isinstance(t, Loop) and not _name(t.r)),
    ("notel-0", lambda t: isinstance(t, NotEl) and t.r == Const(0)),
    ("notel-1", lambda t: isinstance(t, NotEl) and t.r == Const(1)),
    ("ia-0", lambda t: isinstance(t, IaTy) and t.r == Const(0)),
    ("ia-1", lambda t: isinstance(t, IaTy) and t.r == Const(1)),
    ("iain-0", lambda t: isinstance(t, IaIn) and t.r == Const(0)),
    ("iain-1", lambda t: isinstance(t, IaIn) and t.r == Const(1)),
    ("iaout-0", lambda t: isinstance(t, IaOut) and t.r == Const(0)),
    ("iaout-1", lambda t: isinstance(t, IaOut) and t.r == Const(1)),
    ("iaout-beta", lambda t: isinstance(t, IaOut) and _name(t.r) and isinstance(t.arg, IaIn)
     and t.arg.r == t.r),
    ("if-true", lambda t: isinstance(t, If) and isinstance(t.scrut, TrueTm)),
    ("if-false", lambda t: isinstance(t, If) and isinstance(t.scrut, FalseTm)),
    ("if-hcom", lambda t: isinstance(t, If) and _hv(t.scrut, Bool)),
    ("celim-base", lambda t: isinstance(t, CElim) and isinstance(t.scrut, Base)),
    ("celim-loop", lambda t: isinstance(t, CElim) and isinstance(t.scrut, Loop) and _name(t.scrut.r)),
    ("celim-hcom", lambda t: isinstance(t, CElim) and _hv(t.scrut, Circle)),
    ("hcom-bool-tube", lambda t: isinstance(t, Hcom) and isinstance(t.ty, Bool) and _const_ext(t)),
    ("hcom-bool-cap", lambda t: isinstance(t, Hcom) and isinstance(t.ty, Bool) and not _const_ext(t)
     and t.src == t.dst),
    ("hcom-s1-tube", lambda t: isinstance(t, Hcom) and isinstance(t.ty, Circle) and _const_ext(t)),
    ("hcom-s1-cap", lambda t: isinstance(t, Hcom) and isinstance(t.ty, Circle) and not _const_ext(t)
     and t.src == t.dst),
    ("hcom-sbool", lambda t: isinstance(t, Hcom) and isinstance(t.ty, SBool)),
    ("hcom-pi", lambda t: isinstance(t, Hcom) and isinstance(t.ty, Pi)),
    ("hcom-sigma", lambda t: isinstance(t, Hcom) and isinstance(t.ty, Sigma)),
    ("hcom-id", lambda t: isinstance(t, Hcom) and isinstance(t.ty, Id)),
    ("hcom-not", lambda t: isinstance(t, Hcom) and isinstance(t.ty, NotTy) and value(t.ty)),
    ("hcom-ia", lambda t: isinstance(t, Hcom) and isinstance(t.ty, IaTy) and value(t.ty)),
    ("coe-bool", lambda t: isinstance(t, Coe) and isinstance(t.line.body, Bool)),
    ("coe-sbool", lambda t: isinstance(t, Coe) and isinstance(t.line.body, SBool)),
    ("coe-s1", lambda t: isinstance(t, Coe) and isinstance(t.line.body, Circle)),
    ("coe-pi", lambda t: isinstance(t, Coe) and isinstance(t.line.body, Pi)),
    ("coe-sigma", lambda t: isinstance(t, Coe) and isinstance(t.line.body, Sigma)),
    ("coe-id", lambda t: isinstance(t, Coe) and isinstance(t.line.body, Id)),
    ("coe-not-apart", lambda t: isinstance(t, Coe) and _coe_not(
        t, lambda x, a, c: a.r != DName(x))),
    ("coe-not-refl", lambda t: isinstance(t, Coe) and _coe_not(
        t, lambda x, a, c: a.r == DName(x) and isinstance(c.src, Const) and c.src == c.dst)),
    ("coe-not-flip", lambda t: isinstance(t, Coe) and _coe_not(
        t, lambda x, a, c: a.r == DName(x) and isinstance(c.src, Const)
        and isinstance(c.dst, Const) and c.src != c.dst)),
    ("coe-not-0x", lambda t: isinstance(t, Coe) and _coe_not(
        t, lambda x, a, c: a.r == DName(x) and c.src == Const(0) and _name(c.dst))),
    ("coe-not-1x", lambda t: isinstance(t, Coe) and _coe_not(
        t, lambda x, a, c: a.r == DName(x) and c.src == Const(1) and _name(c.dst))),
    ("coe-not-notel", lambda t: isinstance(t, Coe) and _coe_not(
        t, lambda x, a, c: a.r == DName(x) and _name(c.src) and isinstance(c.arg, NotEl)
        and c.arg.r == c.src)),
    ("coe-ia", lambda t: isinstance(t, Coe) and isinstance(t.line.body, IaTy)
     and t.line.body.r == DName(t.line.name)),
    ("coe-ia-apart", lambda t: isinstance(t, Coe) and isinstance(t.line.body, IaTy)
     and _name(t.line.body.r) and t.line.body.r != DName(t.line.name)),
)

# (rule, applies, principal argument)
CONGRUENCE = (
    ("app-cong", lambda t: isinstance(t, App) and not value(t.fn), lambda t: t.fn),
    ("fst-cong", lambda t: isinstance(t, Fst) and not value(t.arg), lambda t: t.arg),
    ("snd-cong", lambda t: isinstance(t, Snd) and not value(t.arg), lambda t: t.arg),
    ("dapp-cong", lambda t: isinstance(t, DApp) and not value(t.fn), lambda t: t.fn),
    ("if-cong", lambda t: isinstance(t, If) and not value(t.scrut), lambda t: t.scrut),
    ("celim-cong", lambda t: isinstance(t, CElim) and not value(t.scrut), lambda t: t.scrut),
    ("iaout-cong", lambda t: isinstance(t, IaOut) and _name(t.r) and not value(t.arg),
     lambda t: t.arg),
    ("hcom-cong", lambda t: isinstance(t, Hcom) and not value(t.ty), lambda t: t.ty),
    ("coe-cong", lambda t: isinstance(t, Coe) and not value(t.line.body), lambda t: t.line.body),
    ("coe-not-cong", lambda t: isinstance(t, Coe) and _coe_not(
        t, lambda x, a, c: a.r == DName(x) and _name(c.src) and not value(c.arg)),
     lambda t: t.arg),
)


def matches(t) -> list:
    """Names of all rules (redex or congruence) whose premises hold at ``t``."""
    out = [name for name, p in REDEX if p(t)]
    out += [name for name, p, _ in CONGRUENCE if p(t)]
    return out


def expected_step(t):
    """What a deterministic evaluator must do at ``t``.

    Returns ``("value",)``, ``("stuck",)``, ``("step", path, rule)`` or
    ``("overlap", rules)`` when more than one rule applies somewhere on the
    way down.
    """
    path = []
    cur = t
    while True:
        ms = matches(cur)
        if len(ms) > 1:
            return ("overlap", tuple(ms))
        if not ms:
            if not path and value(cur):
                return ("value",)
            return ("stuck",)
        rule = ms[0]
        cong = {name: arg for name, _, arg in CONGRUENCE}
        if rule not in cong:
            return ("step", tuple(path), rule)
        path.append(rule)
        cur = cong[rule](cur)
