"""Deterministic weak-head evaluation.

``step`` is a function from closed terms to :class:`Value`, :class:`Stepped`
or :class:`Stuck`.  It descends along principal arguments with an explicit
focus stack, fires at most one top-level rule at the focus, and plugs the
reduct back in.  Rule names come from :data:`RULES`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .substitution import (
    dim_subst, instantiate_dbind, instantiate_tbind, rename_dim_binder, rename_term_binder,
    term_subst,
)
from .syntax import (
    BASE, BOOL, FALSE, ONE, TRUE, ZERO, App, Base, Bool, CElim, Circle, Coe, Const, DApp,
    DBind, DLam, DName, Dim, FalseTm, Fst, Hcom, Id, If, IaIn, IaOut, IaTy, Lam, Loop, NotEl,
    NotTy, Pair, Pi, SBool, Sigma, Snd, TBind, Term, TrueTm, Var, free_dims, fresh_name,
)

DEFAULT_FUEL = 1_000_000

# reason codes for Stuck
ELIMINATOR_MISMATCH = "EliminatorMismatch"
NON_TYPE_SUBSCRIPT = "NonTypeSubscript"
FREE_TERM_VARIABLE = "FreeTermVariable"

# Step rules, grouped by the type former they belong to.  Congruence rules
# end in "-cong"; they never fire alone but prefix the rule at the focus.
RULES = (
    # types
    "not-ty-const",
    # hcom/coe congruence
    "coe-cong", "hcom-cong",
    # dependent functions
    "app-cong", "app-beta", "hcom-pi", "coe-pi",
    # dependent pairs
    "fst-cong", "snd-cong", "fst-beta", "snd-beta", "hcom-sigma", "coe-sigma",
    # identifications
    "dapp-cong", "dapp-beta", "hcom-id", "coe-id",
    # booleans
    "hcom-bool-tube", "hcom-bool-cap", "if-cong", "if-true", "if-false", "if-hcom", "coe-bool",
    # circle
    "hcom-s1-tube", "hcom-s1-cap", "loop-const", "celim-cong", "celim-base", "celim-loop",
    "celim-hcom", "coe-s1",
    # not
    "notel-0", "notel-1", "coe-not-flip", "coe-not-refl", "coe-not-0x", "coe-not-1x",
    "coe-not-cong", "coe-not-notel", "coe-not-apart", "hcom-not",
    # strict booleans
    "hcom-sbool", "coe-sbool",
    # isomorphism-univalence
    "ia-0", "ia-1", "iain-0", "iain-1", "iaout-0", "iaout-1", "iaout-cong", "iaout-beta",
    "coe-ia", "coe-ia-apart", "hcom-ia",
)


# ----------------------------------------------------------------------------
# Outcomes and traces


@dataclass(frozen=True)
class Value:
    pass


@dataclass(frozen=True)
class Stepped:
    next: Term
    rule: str
    # congruence rules from the root down to the focus
    path: tuple = ()

    @property
    def label(self) -> str:
        return "/".join(self.path + (self.rule,))


@dataclass(frozen=True)
class Stuck:
    reason: str
    subterm: Term


StepOutcome = Union[Value, Stepped, Stuck]

VALUE = Value()


@dataclass
class Trace:
    initial: Term
    steps: list = field(default_factory=list)  # (label, term)
    outcome: str = "value"  # value | stuck | fuel
    final: Optional[Term] = None
    stuck: Optional[Stuck] = None
    n_steps: int = 0
    elided: int = 0

    @property
    def value(self) -> Optional[Term]:
        return self.final if self.outcome == "value" else None

    def lines(self) -> list:
        from .surface import show

        out = [f"start ⊢ {show(self.initial)}"]
        if self.elided:
            out.append(f"... ⊢ <{self.elided} steps elided>")
        out.extend(f"{label} ⊢ {show(t)}" for label, t in self.steps)
        if self.outcome == "stuck":
            out.append(f"stuck ⊢ {self.stuck.reason}: {show(self.stuck.subterm)}")
        elif self.outcome == "fuel":
            out.append("fuel ⊢ exhausted")
        return out


# ----------------------------------------------------------------------------
# Abbreviations


def notf(m: Term) -> Term:
    """Boolean negation as an ``if`` with a constant motive."""
    return If(TBind("_", BOOL), m, FALSE, TRUE)


elaborate_notf = notf


def _wrap_tube(b: DBind, wrap: Callable[[str, Term], Term], avoid) -> DBind:
    y, body = rename_dim_binder(b, frozenset(avoid))
    return DBind(y, wrap(y, body))


def _map_tubes(tubes, wrap, avoid) -> tuple:
    return tuple(
        (_wrap_tube(t0, wrap, avoid), _wrap_tube(t1, wrap, avoid)) for t0, t1 in tubes
    )


def elaborate_com(extents, line: DBind, r: Dim, r2: Dim, cap: Term, tubes) -> Term:
    """Heterogeneous composition along ``line``, as an hcom of coercions."""
    avoid = free_dims(line) | free_dims(r2)
    new_tubes = _map_tubes(
        tubes, lambda y, n: Coe(line, DName(y), r2, n), avoid
    )
    return Hcom(
        tuple(extents), instantiate_dbind(line, r2), r, r2, Coe(line, r, r2, cap), new_tubes
    )


# ----------------------------------------------------------------------------
# Values


def is_val(t: Term) -> bool:
    if isinstance(t, (Pi, Sigma, Id, Bool, SBool, Circle, Lam, Pair, DLam, TrueTm, FalseTm, Base)):
        return True
    if isinstance(t, (NotTy, Loop, IaTy)):
        return isinstance(t.r, DName)
    if isinstance(t, (NotEl, IaIn)):
        return isinstance(t.r, DName)
    if isinstance(t, Hcom):
        return _is_hcom_value(t)
    return False


def _is_hcom_value(t: Hcom) -> bool:
    return (
        isinstance(t.ty, (Bool, Circle))
        and all(isinstance(r, DName) for r in t.extents)
        and t.src != t.dst
    )


def _is_type_value(t: Term) -> bool:
    return isinstance(t, (Pi, Sigma, Id, Bool, SBool, Circle, NotTy, IaTy)) and is_val(t)


# ----------------------------------------------------------------------------
# Top-level rules: each returns (rule, reduct) or None


def _top(t: Term):
    fn = _TOP.get(type(t))
    return fn(t) if fn is not None else None


def _top_app(t: App):
    if isinstance(t.fn, Lam):
        return "app-beta", instantiate_tbind(t.fn.body, t.arg)
    return None


def _top_fst(t: Fst):
    if isinstance(t.arg, Pair):
        return "fst-beta", t.arg.fst
    return None


def _top_snd(t: Snd):
    if isinstance(t.arg, Pair):
        return "snd-beta", t.arg.snd
    return None


def _top_dapp(t: DApp):
    if isinstance(t.fn, DLam):
        return "dapp-beta", instantiate_dbind(t.fn.body, t.r)
    return None


def _top_notty(t: NotTy):
    if isinstance(t.r, Const):
        return "not-ty-const", BOOL
    return None


def _top_loop(t: Loop):
    if isinstance(t.r, Const):
        return "loop-const", BASE
    return None


def _top_notel(t: NotEl):
    if t.r == ZERO:
        return "notel-0", notf(t.arg)
    if t.r == ONE:
        return "notel-1", t.arg
    return None


def _top_iaty(t: IaTy):
    if t.r == ZERO:
        return "ia-0", t.a_ty
    if t.r == ONE:
        return "ia-1", t.b_ty
    return None


def _top_iain(t: IaIn):
    if t.r == ZERO:
        return "iain-0", t.arg
    if t.r == ONE:
        return "iain-1", App(t.fwd, t.arg)
    return None


def _top_iaout(t: IaOut):
    if t.r == ZERO:
        return "iaout-0", t.arg
    if t.r == ONE:
        return "iaout-1", App(t.bwd, t.arg)
    if isinstance(t.arg, IaIn) and t.arg.r == t.r:
        return "iaout-beta", t.arg.arg
    return None


def _top_if(t: If):
    s = t.scrut
    if isinstance(s, TrueTm):
        return "if-true", t.tcase
    if isinstance(s, FalseTm):
        return "if-false", t.fcase
    if isinstance(s, Hcom) and isinstance(s.ty, Bool) and _is_hcom_value(s):
        z = fresh_name(t.fd)
        h = Hcom(s.extents, BOOL, s.src, DName(z), s.cap, s.tubes)
        avoid = free_dims(t.motive) | t.tcase.fd | t.fcase.fd
        tubes = _map_tubes(s.tubes, lambda y, n: If(t.motive, n, t.tcase, t.fcase), avoid)
        line = DBind(z, instantiate_tbind(t.motive, h))
        return "if-hcom", elaborate_com(
            s.extents, line, s.src, s.dst, If(t.motive, s.cap, t.tcase, t.fcase), tubes
        )
    return None


def _top_celim(t: CElim):
    s = t.scrut
    if isinstance(s, Base):
        return "celim-base", t.base_case
    if isinstance(s, Loop) and isinstance(s.r, DName):
        return "celim-loop", instantiate_dbind(t.loop_case, s.r)
    if isinstance(s, Hcom) and isinstance(s.ty, Circle) and _is_hcom_value(s):
        z = fresh_name(t.fd)
        f = Hcom(s.extents, s.ty, s.src, DName(z), s.cap, s.tubes)
        avoid = free_dims(t.motive) | t.base_case.fd | free_dims(t.loop_case)
        tubes = _map_tubes(
            s.tubes, lambda y, n: CElim(t.motive, n, t.base_case, t.loop_case), avoid
        )
        line = DBind(z, instantiate_tbind(t.motive, f))
        return "celim-hcom", elaborate_com(
            s.extents, line, s.src, s.dst,
            CElim(t.motive, s.cap, t.base_case, t.loop_case), tubes,
        )
    return None


def _top_hcom(t: Hcom):
    ty = t.ty
    if not _is_type_value(ty):
        return None
    if isinstance(ty, (Bool, Circle)):
        tag = "bool" if isinstance(ty, Bool) else "s1"
        for i, r in enumerate(t.extents):
            if isinstance(r, Const):
                side = t.tubes[i][r.value]
                return f"hcom-{tag}-tube", instantiate_dbind(side, t.dst)
        if t.src == t.dst:
            return f"hcom-{tag}-cap", t.cap
        return None
    if isinstance(ty, SBool):
        return "hcom-sbool", t.cap
    if isinstance(ty, Pi):
        a, b = rename_term_binder(ty.cod, t.fv)
        tubes = _map_tubes(t.tubes, lambda y, n: App(n, Var(a)), ())
        return "hcom-pi", Lam(TBind(a, Hcom(t.extents, b, t.src, t.dst, App(t.cap, Var(a)), tubes)))
    if isinstance(ty, Sigma):
        z = fresh_name(t.fd)
        fst_tubes = _map_tubes(t.tubes, lambda y, n: Fst(n), ())
        snd_tubes = _map_tubes(t.tubes, lambda y, n: Snd(n), ())
        first = Hcom(t.extents, ty.fst_ty, t.src, t.dst, Fst(t.cap), fst_tubes)
        filler = Hcom(t.extents, ty.fst_ty, t.src, DName(z), Fst(t.cap), fst_tubes)
        line = DBind(z, instantiate_tbind(ty.snd_ty, filler))
        second = elaborate_com(t.extents, line, t.src, t.dst, Snd(t.cap), snd_tubes)
        return "hcom-sigma", Pair(first, second)
    if isinstance(ty, Id):
        outside = t.fd
        x, a = rename_dim_binder(ty.line, outside)
        tubes = _map_tubes(t.tubes, lambda y, n: DApp(n, DName(x)), {x})
        d0 = fresh_name(ty.left.fd)
        d1 = fresh_name(ty.right.fd)
        tubes = tubes + ((DBind(d0, ty.left), DBind(d1, ty.right)),)
        inner = Hcom(t.extents + (DName(x),), a, t.src, t.dst, DApp(t.cap, DName(x)), tubes)
        return "hcom-id", DLam(DBind(x, inner))
    if isinstance(ty, NotTy):
        w = ty.r
        nline = DBind("x", NotTy(DName("x")))
        tubes = _map_tubes(t.tubes, lambda y, n: Coe(nline, w, ONE, n), free_dims(w))
        inner = Hcom(t.extents, BOOL, t.src, t.dst, Coe(nline, w, ONE, t.cap), tubes)
        return "hcom-not", NotEl(w, inner)
    if isinstance(ty, IaTy):
        x = ty.r
        z = fresh_name(t.fd)
        out_tubes = _map_tubes(
            t.tubes, lambda y, n: IaOut(x, n, ty.bwd), free_dims(x) | ty.bwd.fd
        )
        filler_a = Hcom(t.extents, ty.a_ty, t.src, DName(z), t.cap, t.tubes)
        filler_b = Hcom(t.extents, ty.b_ty, t.src, DName(z), t.cap, t.tubes)
        tubes = out_tubes + ((DBind(z, filler_a), DBind(z, App(ty.bwd, filler_b))),)
        inner = Hcom(
            t.extents + (x,), ty.a_ty, t.src, t.dst, IaOut(x, t.cap, ty.bwd), tubes
        )
        return "hcom-ia", IaIn(x, inner, ty.fwd)
    return None


def _top_coe(t: Coe):
    if not _is_type_value(t.line.body):
        return None
    r, r2, m = t.src, t.dst, t.arg
    outside = free_dims(r) | free_dims(r2) | m.fd
    x, a = rename_dim_binder(t.line, outside)
    dx = DName(x)
    if isinstance(a, (Bool, Circle, SBool)):
        rule = {Bool: "coe-bool", Circle: "coe-s1", SBool: "coe-sbool"}[type(a)]
        return rule, m
    if isinstance(a, Pi):
        v, b = rename_term_binder(a.cod, m.fv)
        dom_line = DBind(x, a.dom)
        back = Coe(dom_line, r2, dx, Var(v))
        line = DBind(x, term_subst(b, back, v))
        arg = App(m, Coe(dom_line, r2, r, Var(v)))
        return "coe-pi", Lam(TBind(v, Coe(line, r, r2, arg)))
    if isinstance(a, Sigma):
        dom_line = DBind(x, a.fst_ty)
        first = Coe(dom_line, r, r2, Fst(m))
        filler = Coe(dom_line, r, dx, Fst(m))
        line = DBind(x, instantiate_tbind(a.snd_ty, filler))
        return "coe-sigma", Pair(first, Coe(line, r, r2, Snd(m)))
    if isinstance(a, Id):
        avoid = outside | {x} | a.left.fd | a.right.fd
        z, body = rename_dim_binder(a.line, avoid)
        cap = DApp(m, DName(z))
        tubes = ((DBind(x, a.left), DBind(x, a.right)),)
        com = elaborate_com((DName(z),), DBind(x, body), r, r2, cap, tubes)
        return "coe-id", DLam(DBind(z, com))
    if isinstance(a, NotTy):
        if a.r != dx:
            return "coe-not-apart", m
        if isinstance(r, Const):
            if isinstance(r2, Const):
                return ("coe-not-refl", m) if r == r2 else ("coe-not-flip", notf(m))
            if r == ZERO:
                return "coe-not-0x", NotEl(r2, notf(m))
            return "coe-not-1x", NotEl(r2, m)
        if isinstance(m, NotEl) and m.r == r:
            return "coe-not-notel", NotEl(r2, m.arg)
        return None
    if isinstance(a, IaTy):
        if a.r == dx:
            inner = Coe(DBind(x, a.a_ty), r, r2, IaOut(r, m, dim_subst(a.bwd, r, x)))
            return "coe-ia", IaIn(r2, inner, dim_subst(a.fwd, r2, x))
        w = a.r
        y = fresh_name(t.fd | a.fd | {x})
        dy = DName(y)
        tube0 = DBind(y, Coe(DBind(x, a.a_ty), r, dy, m))
        tube1 = DBind(y, App(dim_subst(a.bwd, dy, x), Coe(DBind(x, a.b_ty), r, dy, m)))
        c = elaborate_com(
            (w,), DBind(x, a.a_ty), r, r2, IaOut(w, m, dim_subst(a.bwd, r, x)), ((tube0, tube1),)
        )
        return "coe-ia-apart", IaIn(w, c, dim_subst(a.fwd, r2, x))
    return None


_TOP = {
    App: _top_app, Fst: _top_fst, Snd: _top_snd, DApp: _top_dapp, NotTy: _top_notty,
    Loop: _top_loop, NotEl: _top_notel, IaTy: _top_iaty, IaIn: _top_iain, IaOut: _top_iaout,
    If: _top_if, CElim: _top_celim, Hcom: _top_hcom, Coe: _top_coe,
}


# ----------------------------------------------------------------------------
# Principal arguments: (congruence rule, subterm, plug) or None


def _principal(t: Term):
    if isinstance(t, App):
        return "app-cong", t.fn, lambda n: App(n, t.arg)
    if isinstance(t, Fst):
        return "fst-cong", t.arg, Fst
    if isinstance(t, Snd):
        return "snd-cong", t.arg, Snd
    if isinstance(t, DApp):
        return "dapp-cong", t.fn, lambda n: DApp(n, t.r)
    if isinstance(t, If):
        return "if-cong", t.scrut, lambda n: If(t.motive, n, t.tcase, t.fcase)
    if isinstance(t, CElim):
        return "celim-cong", t.scrut, lambda n: CElim(t.motive, n, t.base_case, t.loop_case)
    if isinstance(t, IaOut) and isinstance(t.r, DName):
        return "iaout-cong", t.arg, lambda n: IaOut(t.r, n, t.bwd)
    if isinstance(t, Hcom):
        if not is_val(t.ty):
            return "hcom-cong", t.ty, lambda n: Hcom(t.extents, n, t.src, t.dst, t.cap, t.tubes)
        return None
    if isinstance(t, Coe):
        body = t.line.body
        if not is_val(body):
            name = t.line.name
            return "coe-cong", body, lambda n: Coe(DBind(name, n), t.src, t.dst, t.arg)
        if (
            isinstance(body, NotTy)
            and body.r == DName(t.line.name)
            and isinstance(t.src, DName)
        ):
            return "coe-not-cong", t.arg, lambda n: Coe(t.line, t.src, t.dst, n)
        return None
    return None


def _stuck_reason(t: Term) -> str:
    if isinstance(t, Var):
        return FREE_TERM_VARIABLE
    if isinstance(t, Hcom) and not _is_type_value(t.ty):
        return NON_TYPE_SUBSCRIPT
    if isinstance(t, Coe) and not _is_type_value(t.line.body):
        return NON_TYPE_SUBSCRIPT
    return ELIMINATOR_MISMATCH


def step(t: Term) -> StepOutcome:
    """One step of weak-head evaluation."""
    frames = []
    cur = t
    while True:
        fired = _top(cur)
        if fired is not None:
            rule, red = fired
            for _, plug in reversed(frames):
                red = plug(red)
            return Stepped(red, rule, tuple(name for name, _ in frames))
        focus = _principal(cur)
        if focus is not None:
            name, sub, plug = focus
            if not is_val(sub):
                frames.append((name, plug))
                cur = sub
                continue
        if not frames and is_val(cur):
            return VALUE
        return Stuck(_stuck_reason(cur), cur)


def evaluate(t: Term, fuel: int = DEFAULT_FUEL, max_len: Optional[int] = None, keep: bool = True) -> Trace:
    """Iterate :func:`step` at most ``fuel`` times.

    ``max_len`` caps the number of stored intermediate terms (the oldest are
    elided); ``keep=False`` stores none.
    """
    if fuel < 1:
        raise ValueError("fuel must be positive")
    trace = Trace(initial=t)
    cur = t
    for _ in range(fuel):
        out = step(cur)
        if isinstance(out, Value):
            trace.outcome, trace.final = "value", cur
            return trace
        if isinstance(out, Stuck):
            trace.outcome, trace.final, trace.stuck = "stuck", cur, out
            return trace
        cur = out.next
        trace.n_steps += 1
        if keep:
            trace.steps.append((out.label, cur))
            if max_len is not None and len(trace.steps) > max_len:
                del trace.steps[0]
                trace.elided += 1
        else:
            trace.elided += 1
    # the budget is spent; a value reached on the last step still counts
    if is_val(cur) and isinstance(step(cur), Value):
        trace.outcome, trace.final = "value", cur
    else:
        trace.outcome, trace.final = "fuel", cur
    return trace


# ``eval`` shadows a builtin; keep the public name the docs use as an alias
eval_term = evaluate


def whnf(t: Term, fuel: int = DEFAULT_FUEL) -> Optional[Term]:
    """The value of ``t`` or ``None`` when evaluation is stuck or out of fuel."""
    tr = evaluate(t, fuel, keep=False)
    return tr.final if tr.outcome == "value" else None
