"""The rule catalog.

Each rule is a template: given bindings for its metavariables it computes the
expected premises and conclusion by forward substitution.  Every rule also
reads two ambient bindings, ``Psi`` (dimension context, default empty) and
``Gamma`` (term context, default empty), which the conclusion lives in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..opsem import notf
from ..restriction import EqSet
from ..substitution import SubstError, TotalDimSubst, dim_subst, term_subst
from ..syntax import (
    BASE, BOOL, CIRCLE, FALSE, ONE, SBOOL, TRUE, ZERO, App, CElim, Coe, Const, DApp, DBind, DLam,
    DName, Dim, Fst, Hcom, Id, If, IaIn, IaOut, IaTy, Lam, Loop, NotTy, Pair, Pi, Sigma, Snd,
    TBind, Term, Var, flip, free_vars, fresh_var, make_tube,
)
from .judgment import ElemEq, Judgment, TypeEq, apply_total_judgment, dsubst_judgment, map_body

SORTS = (
    "term", "dim", "eps", "dname", "var", "extents", "tubes", "gamma", "dims", "judg", "eqs",
    "subst", "index",
)

AMBIENT = {"Psi": "dims", "Gamma": "gamma"}


class SideConditionError(ValueError):
    pass


@dataclass(frozen=True)
class MetaVar:
    sort: str
    # binding metavariables whose bound name may occur free in this one
    scope: tuple = ()


def _mv(sig: str) -> MetaVar:
    sort, _, scope = sig.partition("@")
    if sort not in SORTS:
        raise ValueError(f"unknown sort {sort}")
    return MetaVar(sort, tuple(s for s in scope.split(",") if s))


@dataclass(frozen=True)
class Rule:
    name: str
    group: str
    sig: dict
    build: Callable = field(compare=False, repr=False)
    # expected restriction class for the restriction rules
    restriction: Optional[str] = None


CATALOG: dict = {}


def rule(name: str, group: str, restriction: Optional[str] = None, **sig):
    def deco(fn):
        if name in CATALOG:
            raise ValueError(f"duplicate rule {name}")
        CATALOG[name] = Rule(name, group, {k: _mv(v) for k, v in sig.items()}, fn, restriction)
        return fn

    return deco


# ----------------------------------------------------------------------------
# Instantiation context


class Inst:
    def __init__(self, bindings: dict):
        self.b = bindings
        self.psi = frozenset(bindings.get("Psi", frozenset()))
        self.gamma = tuple(bindings.get("Gamma", ()))

    def __getitem__(self, k):
        return self.b[k]

    def require(self, cond: bool, msg: str):
        if not cond:
            raise SideConditionError(msg)

    def fresh_dim(self, *names):
        for x in names:
            self.require(x not in self.psi, f"{x} must be fresh for the dimension context")
        self.require(len(set(names)) == len(names), "bound dimension names must be distinct")

    def fresh_ctx_var(self, a):
        self.require(a not in {v for v, _ in self.gamma}, f"{a} must be fresh for the term context")

    def j(self, body, *, dims=(), ctx=(), xi=None, psi=None) -> Judgment:
        base = self.psi if psi is None else frozenset(psi)
        return Judgment(base | frozenset(dims), body, self.gamma + tuple(ctx), xi or EqSet())

    def new_var(self, *terms) -> str:
        """A readable context variable unused by Γ and ``terms``."""
        avoid = {v for v, _ in self.gamma}
        for t in terms:
            avoid |= free_vars(t)
        k = 0
        while True:
            for base in "abcdefgh":
                name = base if k == 0 else f"{base}{k}"
                if name not in avoid:
                    return name
            k += 1


def wf(a: Term) -> TypeEq:
    return TypeEq(a, a)


def mem(m: Term, a: Term) -> ElemEq:
    return ElemEq(m, m, a)


def arrow(a: Term, b: Term) -> Pi:
    return Pi(a, TBind(fresh_var(b.fv), b))


def _one(r: Dim) -> EqSet:
    return EqSet.of((r, ONE))


# ----------------------------------------------------------------------------
# Structural


@rule("var", "structural", a="var", A="term")
def _(c):
    c.fresh_ctx_var(c["a"])
    return [c.j(wf(c["A"]))], c.j(mem(Var(c["a"]), c["A"]), ctx=[(c["a"], c["A"])])


@rule("weaken", "structural", J="judg", a="var", A="term")
def _(c):
    c.fresh_ctx_var(c["a"])
    return [c.j(c["J"]), c.j(wf(c["A"]))], c.j(c["J"], ctx=[(c["a"], c["A"])])


@rule("dsubst", "structural", J="judg", psi="subst", target="dims")
def _(c):
    prem = c.j(c["J"])
    try:
        psi = TotalDimSubst(c.psi, c["target"], c["psi"])
        concl = apply_total_judgment(prem, psi)
    except SubstError as e:
        raise SideConditionError(str(e)) from e
    return [prem], concl


@rule("teq-sym", "structural", A="term", A2="term")
def _(c):
    return [c.j(TypeEq(c["A"], c["A2"]))], c.j(TypeEq(c["A2"], c["A"]))


@rule("teq-trans", "structural", A="term", A2="term", A3="term")
def _(c):
    return (
        [c.j(TypeEq(c["A"], c["A2"])), c.j(TypeEq(c["A2"], c["A3"]))],
        c.j(TypeEq(c["A"], c["A3"])),
    )


@rule("eq-sym", "structural", M="term", M2="term", A="term")
def _(c):
    return [c.j(ElemEq(c["M2"], c["M"], c["A"]))], c.j(ElemEq(c["M"], c["M2"], c["A"]))


@rule("eq-trans", "structural", M="term", M2="term", M3="term", A="term")
def _(c):
    A = c["A"]
    return (
        [c.j(ElemEq(c["M"], c["M2"], A)), c.j(ElemEq(c["M2"], c["M3"], A))],
        c.j(ElemEq(c["M"], c["M3"], A)),
    )


@rule("conv", "structural", M="term", M2="term", A="term", A2="term")
def _(c):
    return (
        [c.j(ElemEq(c["M"], c["M2"], c["A"])), c.j(TypeEq(c["A"], c["A2"]))],
        c.j(ElemEq(c["M"], c["M2"], c["A2"])),
    )


@rule("subst-type", "structural", a="var", A="term", B="term@a", B2="term@a", N="term", N2="term")
def _(c):
    a = c["a"]
    c.fresh_ctx_var(a)
    prem = [c.j(TypeEq(c["B"], c["B2"]), ctx=[(a, c["A"])]), c.j(ElemEq(c["N"], c["N2"], c["A"]))]
    return prem, c.j(TypeEq(term_subst(c["B"], c["N"], a), term_subst(c["B2"], c["N2"], a)))


@rule("subst-elem", "structural", a="var", A="term", B="term@a", M="term@a", M2="term@a",
      N="term", N2="term")
def _(c):
    a = c["a"]
    c.fresh_ctx_var(a)
    prem = [
        c.j(ElemEq(c["M"], c["M2"], c["B"]), ctx=[(a, c["A"])]),
        c.j(ElemEq(c["N"], c["N2"], c["A"])),
    ]
    concl = ElemEq(term_subst(c["M"], c["N"], a), term_subst(c["M2"], c["N2"], a),
                   term_subst(c["B"], c["N"], a))
    return prem, c.j(concl)


# ----------------------------------------------------------------------------
# Dependent functions and pairs carry the hypotheses "A type" and "a:A ⊢ B type"


def _fam_hyps(c):
    a = c["a"]
    c.fresh_ctx_var(a)
    return [c.j(wf(c["A"])), c.j(wf(c["B"]), ctx=[(a, c["A"])])]


def _pi(c, A="A", B="B"):
    return Pi(c[A], TBind(c["a"], c[B]))


def _sigma(c, A="A", B="B"):
    return Sigma(c[A], TBind(c["a"], c[B]))


@rule("pi-eq", "pi", a="var", A="term", A2="term", B="term@a", B2="term@a")
def _(c):
    prem = [c.j(TypeEq(c["A"], c["A2"])), c.j(TypeEq(c["B"], c["B2"]), ctx=[(c["a"], c["A"])])]
    return prem + _fam_hyps(c), c.j(TypeEq(_pi(c), _pi(c, "A2", "B2")))


@rule("lam-eq", "pi", a="var", A="term", B="term@a", M="term@a", M2="term@a")
def _(c):
    a = c["a"]
    prem = [c.j(ElemEq(c["M"], c["M2"], c["B"]), ctx=[(a, c["A"])])]
    concl = ElemEq(Lam(TBind(a, c["M"])), Lam(TBind(a, c["M2"])), _pi(c))
    return prem + _fam_hyps(c), c.j(concl)


@rule("app-eq", "pi", a="var", A="term", B="term@a", M="term", M2="term", N="term", N2="term")
def _(c):
    prem = [c.j(ElemEq(c["M"], c["M2"], _pi(c))), c.j(ElemEq(c["N"], c["N2"], c["A"]))]
    concl = ElemEq(App(c["M"], c["N"]), App(c["M2"], c["N2"]), term_subst(c["B"], c["N"], c["a"]))
    return prem + _fam_hyps(c), c.j(concl)


@rule("pi-beta", "pi", a="var", A="term", B="term@a", M="term@a", N="term")
def _(c):
    a, N = c["a"], c["N"]
    prem = [c.j(mem(c["M"], c["B"]), ctx=[(a, c["A"])]), c.j(mem(N, c["A"]))]
    concl = ElemEq(App(Lam(TBind(a, c["M"])), N), term_subst(c["M"], N, a), term_subst(c["B"], N, a))
    return prem + _fam_hyps(c), c.j(concl)


@rule("pi-eta", "pi", a="var", A="term", B="term@a", M="term")
def _(c):
    a, M = c["a"], c["M"]
    c.require(a not in M.fv, f"{a} must not occur free in the function")
    concl = ElemEq(M, Lam(TBind(a, App(M, Var(a)))), _pi(c))
    return [c.j(mem(M, _pi(c)))] + _fam_hyps(c), c.j(concl)


@rule("sigma-eq", "sigma", a="var", A="term", A2="term", B="term@a", B2="term@a")
def _(c):
    prem = [c.j(TypeEq(c["A"], c["A2"])), c.j(TypeEq(c["B"], c["B2"]), ctx=[(c["a"], c["A"])])]
    return prem + _fam_hyps(c), c.j(TypeEq(_sigma(c), _sigma(c, "A2", "B2")))


@rule("pair-eq", "sigma", a="var", A="term", B="term@a", M="term", M2="term", N="term", N2="term")
def _(c):
    prem = [
        c.j(ElemEq(c["M"], c["M2"], c["A"])),
        c.j(ElemEq(c["N"], c["N2"], term_subst(c["B"], c["M"], c["a"]))),
    ]
    concl = ElemEq(Pair(c["M"], c["N"]), Pair(c["M2"], c["N2"]), _sigma(c))
    return prem + _fam_hyps(c), c.j(concl)


@rule("fst-eq", "sigma", a="var", A="term", B="term@a", P="term", P2="term")
def _(c):
    prem = [c.j(ElemEq(c["P"], c["P2"], _sigma(c)))]
    return prem + _fam_hyps(c), c.j(ElemEq(Fst(c["P"]), Fst(c["P2"]), c["A"]))


@rule("snd-eq", "sigma", a="var", A="term", B="term@a", P="term", P2="term")
def _(c):
    prem = [c.j(ElemEq(c["P"], c["P2"], _sigma(c)))]
    ty = term_subst(c["B"], Fst(c["P"]), c["a"])
    return prem + _fam_hyps(c), c.j(ElemEq(Snd(c["P"]), Snd(c["P2"]), ty))


def _pair_prems(c):
    return [c.j(mem(c["M"], c["A"])), c.j(mem(c["N"], term_subst(c["B"], c["M"], c["a"])))]


@rule("fst-beta", "sigma", a="var", A="term", B="term@a", M="term", N="term")
def _(c):
    concl = ElemEq(Fst(Pair(c["M"], c["N"])), c["M"], c["A"])
    return _pair_prems(c) + _fam_hyps(c), c.j(concl)


@rule("snd-beta", "sigma", a="var", A="term", B="term@a", M="term", N="term")
def _(c):
    concl = ElemEq(Snd(Pair(c["M"], c["N"])), c["N"], term_subst(c["B"], c["M"], c["a"]))
    return _pair_prems(c) + _fam_hyps(c), c.j(concl)


@rule("sigma-eta", "sigma", a="var", A="term", B="term@a", P="term")
def _(c):
    P = c["P"]
    concl = ElemEq(P, Pair(Fst(P), Snd(P)), _sigma(c))
    return [c.j(mem(P, _sigma(c)))] + _fam_hyps(c), c.j(concl)


# ----------------------------------------------------------------------------
# Identifications carry the hypothesis "[Ψ,x] A type"


def _id_hyp(c):
    c.fresh_dim(c["x"])
    return [c.j(wf(c["A"]), dims=[c["x"]])]


def _id(c, A="A", P0="P0", P1="P1"):
    return Id(DBind(c["x"], c[A]), c[P0], c[P1])


def _at(c, t, r):
    return dim_subst(c[t], r, c["x"])


@rule("id-eq", "id", x="dname", A="term@x", A2="term@x", P0="term", P02="term", P1="term",
      P12="term")
def _(c):
    prem = [
        c.j(TypeEq(c["A"], c["A2"]), dims=[c["x"]]),
        c.j(ElemEq(c["P0"], c["P02"], _at(c, "A", ZERO))),
        c.j(ElemEq(c["P1"], c["P12"], _at(c, "A", ONE))),
    ]
    return prem + _id_hyp(c), c.j(TypeEq(_id(c), _id(c, "A2", "P02", "P12")))


@rule("dlam-eq", "id", x="dname", A="term@x", P0="term", P1="term", M="term@x", M2="term@x")
def _(c):
    x = c["x"]
    prem = [
        c.j(ElemEq(c["M"], c["M2"], c["A"]), dims=[x]),
        c.j(ElemEq(_at(c, "M", ZERO), c["P0"], _at(c, "A", ZERO))),
        c.j(ElemEq(_at(c, "M", ONE), c["P1"], _at(c, "A", ONE))),
    ]
    concl = ElemEq(DLam(DBind(x, c["M"])), DLam(DBind(x, c["M2"])), _id(c))
    return prem + _id_hyp(c), c.j(concl)


@rule("dapp-eq", "id", x="dname", A="term@x", P0="term", P1="term", M="term", M2="term", r="dim")
def _(c):
    prem = [c.j(ElemEq(c["M"], c["M2"], _id(c)))]
    concl = ElemEq(DApp(c["M"], c["r"]), DApp(c["M2"], c["r"]), _at(c, "A", c["r"]))
    return prem + _id_hyp(c), c.j(concl)


@rule("dapp-endpoint", "id", x="dname", A="term@x", P0="term", P1="term", M="term", eps="eps")
def _(c):
    e = c["eps"]
    prem = [c.j(mem(c["M"], _id(c)))]
    concl = ElemEq(DApp(c["M"], e), c["P0"] if e == ZERO else c["P1"], _at(c, "A", e))
    return prem + _id_hyp(c), c.j(concl)


@rule("id-beta", "id", x="dname", A="term@x", M="term@x", r="dim")
def _(c):
    x, r = c["x"], c["r"]
    prem = [c.j(mem(c["M"], c["A"]), dims=[x])]
    concl = ElemEq(DApp(DLam(DBind(x, c["M"])), r), _at(c, "M", r), _at(c, "A", r))
    return prem + _id_hyp(c), c.j(concl)


@rule("id-eta", "id", x="dname", A="term@x", P0="term", P1="term", M="term")
def _(c):
    x, M = c["x"], c["M"]
    concl = ElemEq(M, DLam(DBind(x, DApp(M, DName(x)))), _id(c))
    hyps = _id_hyp(c)
    return [c.j(mem(M, _id(c)))] + hyps, c.j(concl)


# ----------------------------------------------------------------------------
# Booleans


@rule("bool-wf", "bool")
def _(c):
    return [], c.j(wf(BOOL))


@rule("true", "bool")
def _(c):
    return [], c.j(mem(TRUE, BOOL))


@rule("false", "bool")
def _(c):
    return [], c.j(mem(FALSE, BOOL))


def _if_eq(c, ty):
    a = c["a"]
    c.fresh_ctx_var(a)
    A = c["A"]
    return [
        c.j(TypeEq(A, c["A2"]), ctx=[(a, ty)]),
        c.j(ElemEq(c["M"], c["M2"], ty)),
        c.j(ElemEq(c["T"], c["T2"], term_subst(A, TRUE, a))),
        c.j(ElemEq(c["F"], c["F2"], term_subst(A, FALSE, a))),
    ]


@rule("if-eq", "bool", a="var", A="term@a", A2="term@a", M="term", M2="term", T="term",
      T2="term", F="term", F2="term")
def _(c):
    a = c["a"]
    lhs = If(TBind(a, c["A"]), c["M"], c["T"], c["F"])
    rhs = If(TBind(a, c["A2"]), c["M2"], c["T2"], c["F2"])
    return _if_eq(c, BOOL), c.j(ElemEq(lhs, rhs, term_subst(c["A"], c["M"], a)))


def _if_comp_prems(c, ty):
    a, A = c["a"], c["A"]
    c.fresh_ctx_var(a)
    return [
        c.j(wf(A), ctx=[(a, ty)]),
        c.j(mem(c["T"], term_subst(A, TRUE, a))),
        c.j(mem(c["F"], term_subst(A, FALSE, a))),
    ]


@rule("if-true", "bool", a="var", A="term@a", T="term", F="term")
def _(c):
    a, A = c["a"], c["A"]
    concl = ElemEq(If(TBind(a, A), TRUE, c["T"], c["F"]), c["T"], term_subst(A, TRUE, a))
    return _if_comp_prems(c, BOOL), c.j(concl)


@rule("if-false", "bool", a="var", A="term@a", T="term", F="term")
def _(c):
    a, A = c["a"], c["A"]
    concl = ElemEq(If(TBind(a, A), FALSE, c["T"], c["F"]), c["F"], term_subst(A, FALSE, a))
    return _if_comp_prems(c, BOOL), c.j(concl)


# ----------------------------------------------------------------------------
# Circle


@rule("s1-wf", "circle")
def _(c):
    return [], c.j(wf(CIRCLE))


@rule("base", "circle")
def _(c):
    return [], c.j(mem(BASE, CIRCLE))


@rule("loop", "circle", r="dim")
def _(c):
    return [], c.j(mem(Loop(c["r"]), CIRCLE))


@rule("loop-endpoint", "circle", eps="eps")
def _(c):
    return [], c.j(ElemEq(Loop(c["eps"]), BASE, CIRCLE))


def _loop_faces(c, L="L"):
    x, a = c["x"], c["a"]
    at_base = term_subst(c["A"], BASE, a)
    return [c.j(ElemEq(dim_subst(c[L], e, x), c["P"], at_base)) for e in (ZERO, ONE)]


def _celim_comp_prems(c):
    a, x = c["a"], c["x"]
    c.fresh_ctx_var(a)
    c.fresh_dim(x)
    return [
        c.j(wf(c["A"]), ctx=[(a, CIRCLE)]),
        c.j(mem(c["L"], term_subst(c["A"], Loop(DName(x)), a)), dims=[x]),
    ] + _loop_faces(c)


@rule("celim-eq", "circle", a="var", A="term@a", A2="term@a", M="term", M2="term", P="term",
      P2="term", x="dname", L="term@x", L2="term@x")
def _(c):
    a, x, A = c["a"], c["x"], c["A"]
    c.fresh_ctx_var(a)
    c.fresh_dim(x)
    prem = [
        c.j(TypeEq(A, c["A2"]), ctx=[(a, CIRCLE)]),
        c.j(ElemEq(c["M"], c["M2"], CIRCLE)),
        c.j(ElemEq(c["P"], c["P2"], term_subst(A, BASE, a))),
        c.j(ElemEq(c["L"], c["L2"], term_subst(A, Loop(DName(x)), a)), dims=[x]),
    ] + _loop_faces(c)
    lhs = CElim(TBind(a, A), c["M"], c["P"], DBind(x, c["L"]))
    rhs = CElim(TBind(a, c["A2"]), c["M2"], c["P2"], DBind(x, c["L2"]))
    return prem, c.j(ElemEq(lhs, rhs, term_subst(A, c["M"], a)))


@rule("celim-base", "circle", a="var", A="term@a", P="term", x="dname", L="term@x")
def _(c):
    a, A = c["a"], c["A"]
    lhs = CElim(TBind(a, A), BASE, c["P"], DBind(c["x"], c["L"]))
    return _celim_comp_prems(c), c.j(ElemEq(lhs, c["P"], term_subst(A, BASE, a)))


@rule("celim-loop", "circle", a="var", A="term@a", P="term", x="dname", L="term@x", r="dim")
def _(c):
    a, A, x, r = c["a"], c["A"], c["x"], c["r"]
    lhs = CElim(TBind(a, A), Loop(r), c["P"], DBind(x, c["L"]))
    concl = ElemEq(lhs, dim_subst(c["L"], r, x), term_subst(A, Loop(r), a))
    return _celim_comp_prems(c), c.j(concl)


# ----------------------------------------------------------------------------
# Hcom.  Tubes are bound as open terms (N0, N1) in the name bound to ``y``.


def _tube_count(c, key="tubes"):
    c.require(len(c[key]) == len(c["extents"]), "one tube pair per extent")


def _hcom(c, A, r, r2, cap, tubes_key="tubes"):
    y = c["y"]
    tubes = tuple(make_tube(y, n0, n1) for n0, n1 in c[tubes_key])
    return Hcom(tuple(c["extents"]), A, r, r2, cap, tubes)


def _adjacency(c, A):
    """(∀i,j,ε,ε′) [Ψ,y] r_i=ε, r_j=ε′ ⊢ N^ε_i ≐ N^ε′_j ∈ A"""
    exts, tubes, y = c["extents"], c["tubes"], c["y"]
    out = []
    for i, ri in enumerate(exts):
        for e in (0, 1):
            for j, rj in enumerate(exts):
                for e2 in (0, 1):
                    xi = EqSet.of((ri, Const(e)), (rj, Const(e2)))
                    out.append(c.j(ElemEq(tubes[i][e], tubes[j][e2], A), dims=[y], xi=xi))
    return out


def _cap_faces(c, A, M):
    """(∀i,ε) r_i=ε ⊢ N^ε_i[r/y] ≐ M ∈ A"""
    exts, tubes, y, r = c["extents"], c["tubes"], c["y"], c["r"]
    return [
        c.j(ElemEq(dim_subst(tubes[i][e], r, y), M, A), xi=EqSet.of((ri, Const(e))))
        for i, ri in enumerate(exts)
        for e in (0, 1)
    ]


@rule("hcom-eq", "hcom", A="term", A2="term", extents="extents", r="dim", r2="dim", M="term",
      O="term", y="dname", tubes="tubes@y", tubes2="tubes@y")
def _(c):
    c.fresh_dim(c["y"])
    _tube_count(c)
    _tube_count(c, "tubes2")
    A, y = c["A"], c["y"]
    prem = [c.j(TypeEq(A, c["A2"])), c.j(ElemEq(c["M"], c["O"], A))]
    for i, ri in enumerate(c["extents"]):
        for e in (0, 1):
            xi = EqSet.of((ri, Const(e)))
            prem.append(c.j(ElemEq(c["tubes"][i][e], c["tubes2"][i][e], A), dims=[y], xi=xi))
    prem += _adjacency(c, A) + _cap_faces(c, A, c["M"])
    lhs = _hcom(c, A, c["r"], c["r2"], c["M"])
    rhs = _hcom(c, c["A2"], c["r"], c["r2"], c["O"], "tubes2")
    return prem, c.j(ElemEq(lhs, rhs, A))


def _hcom_wf_prems(c):
    c.fresh_dim(c["y"])
    _tube_count(c)
    A, M = c["A"], c["M"]
    return [c.j(wf(A)), c.j(mem(M, A))] + _adjacency(c, A) + _cap_faces(c, A, M)


@rule("hcom-cap", "hcom", A="term", extents="extents", r="dim", M="term", y="dname",
      tubes="tubes@y")
def _(c):
    prem = _hcom_wf_prems(c)
    return prem, c.j(ElemEq(_hcom(c, c["A"], c["r"], c["r"], c["M"]), c["M"], c["A"]))


@rule("hcom-tube", "hcom", A="term", extents="extents", r="dim", r2="dim", M="term", y="dname",
      tubes="tubes@y", i="index")
def _(c):
    exts, i = c["extents"], c["i"]
    c.require(1 <= i <= len(exts), f"index {i} out of range")
    ri = exts[i - 1]
    c.require(isinstance(ri, Const), f"extent {i} must be a constant")
    prem = _hcom_wf_prems(c)
    face = dim_subst(c["tubes"][i - 1][ri.value], c["r2"], c["y"])
    return prem, c.j(ElemEq(_hcom(c, c["A"], c["r"], c["r2"], c["M"]), face, c["A"]))


# ----------------------------------------------------------------------------
# Restriction


def _restricted(c, xi: EqSet, dims=()):
    return Judgment(c.psi | frozenset(dims), c["J"], c.gamma, xi)


@rule("restrict-empty", "restriction", restriction="all", J="judg")
def _(c):
    return [c.j(c["J"])], _restricted(c, EqSet())


@rule("restrict-refl", "restriction", restriction="same", J="judg", xi="eqs", r="dim")
def _(c):
    return [_restricted(c, c["xi"])], _restricted(c, c["xi"].add(c["r"], c["r"]))


@rule("restrict-absurd", "restriction", restriction="none", J="judg", xi="eqs")
def _(c):
    return [], _restricted(c, c["xi"].add(ZERO, ONE))


@rule("restrict-clash", "restriction", restriction="none", J="judg", x="dname")
def _(c):
    x = c["x"]
    c.fresh_dim(x)
    return [], _restricted(c, EqSet.of((DName(x), ZERO), (DName(x), ONE)), [x])


@rule("restrict-one", "restriction", restriction="reduce", J="judg@x", x="dname", eps="eps")
def _(c):
    x, e = c["x"], c["eps"]
    c.fresh_dim(x)
    concl = _restricted(c, EqSet.of((DName(x), e)), [x])
    prem = dsubst_judgment(Judgment(concl.psi, concl.body, concl.gamma), e, x, psi=c.psi)
    return [prem], concl


@rule("restrict-two", "restriction", restriction="reduce", J="judg@x,y", x="dname", y="dname",
      eps="eps", eps2="eps")
def _(c):
    x, y, e, e2 = c["x"], c["y"], c["eps"], c["eps2"]
    c.fresh_dim(x, y)
    concl = _restricted(c, EqSet.of((DName(x), e), (DName(y), e2)), [x, y])
    step1 = dsubst_judgment(Judgment(concl.psi, concl.body, concl.gamma), e, x, psi=concl.psi - {x})
    return [dsubst_judgment(step1, e2, y, psi=c.psi)], concl


# ----------------------------------------------------------------------------
# Coe


@rule("coe-eq", "coe", x="dname", A="term@x", A2="term@x", r="dim", r2="dim", M="term", N="term")
def _(c):
    x = c["x"]
    c.fresh_dim(x)
    prem = [
        c.j(TypeEq(c["A"], c["A2"]), dims=[x]),
        c.j(ElemEq(c["M"], c["N"], _at(c, "A", c["r"]))),
    ]
    lhs = Coe(DBind(x, c["A"]), c["r"], c["r2"], c["M"])
    rhs = Coe(DBind(x, c["A2"]), c["r"], c["r2"], c["N"])
    return prem, c.j(ElemEq(lhs, rhs, _at(c, "A", c["r2"])))


@rule("coe-refl", "coe", x="dname", A="term@x", r="dim", M="term")
def _(c):
    x, r = c["x"], c["r"]
    c.fresh_dim(x)
    prem = [c.j(wf(c["A"]), dims=[x]), c.j(mem(c["M"], _at(c, "A", r)))]
    return prem, c.j(ElemEq(Coe(DBind(x, c["A"]), r, r, c["M"]), c["M"], _at(c, "A", r)))


# ----------------------------------------------------------------------------
# Not


@rule("not-wf", "not", r="dim")
def _(c):
    return [], c.j(wf(NotTy(c["r"])))


@rule("not-const", "not", eps="eps")
def _(c):
    return [], c.j(TypeEq(NotTy(c["eps"]), BOOL))


def _not_line(c):
    x = c["x"]
    return DBind(x, NotTy(DName(x)))


@rule("coe-not-refl", "not", x="dname", eps="eps", M="term")
def _(c):
    e = c["eps"]
    concl = ElemEq(Coe(_not_line(c), e, e, c["M"]), c["M"], BOOL)
    return [c.j(mem(c["M"], BOOL))], c.j(concl)


@rule("coe-not-flip", "not", x="dname", eps="eps", M="term")
def _(c):
    e = c["eps"]
    concl = ElemEq(Coe(_not_line(c), e, flip(e), c["M"]), notf(c["M"]), BOOL)
    return [c.j(mem(c["M"], BOOL))], c.j(concl)


# ----------------------------------------------------------------------------
# Strict booleans


@rule("sbool-wf", "sbool")
def _(c):
    return [], c.j(wf(SBOOL))


@rule("strue", "sbool")
def _(c):
    return [], c.j(mem(TRUE, SBOOL))


@rule("sfalse", "sbool")
def _(c):
    return [], c.j(mem(FALSE, SBOOL))


@rule("sif-eq", "sbool", a="var", A="term@a", B="term@a", B2="term@a", M="term", M2="term",
      T="term", T2="term", F="term", F2="term")
def _(c):
    a, A = c["a"], c["A"]
    c.fresh_ctx_var(a)
    prem = [
        c.j(ElemEq(c["M"], c["M2"], SBOOL)),
        c.j(wf(A), ctx=[(a, SBOOL)]),
        c.j(ElemEq(c["T"], c["T2"], term_subst(A, TRUE, a))),
        c.j(ElemEq(c["F"], c["F2"], term_subst(A, FALSE, a))),
    ]
    lhs = If(TBind(a, c["B"]), c["M"], c["T"], c["F"])
    rhs = If(TBind(a, c["B2"]), c["M2"], c["T2"], c["F2"])
    return prem, c.j(ElemEq(lhs, rhs, term_subst(A, c["M"], a)))


@rule("sif-true", "sbool", a="var", A="term@a", B="term@a", T="term", F="term")
def _(c):
    a, A = c["a"], c["A"]
    concl = ElemEq(If(TBind(a, c["B"]), TRUE, c["T"], c["F"]), c["T"], term_subst(A, TRUE, a))
    return _if_comp_prems(c, SBOOL), c.j(concl)


@rule("sif-false", "sbool", a="var", A="term@a", B="term@a", T="term", F="term")
def _(c):
    a, A = c["a"], c["A"]
    concl = ElemEq(If(TBind(a, c["B"]), FALSE, c["T"], c["F"]), c["F"], term_subst(A, FALSE, a))
    return _if_comp_prems(c, SBOOL), c.j(concl)


@rule("sbool-ext", "sbool", a="var", A="term@a", M="term@a", M2="term@a", N="term", N2="term")
def _(c):
    a, A, M, M2 = c["a"], c["A"], c["M"], c["M2"]
    c.fresh_ctx_var(a)
    at = lambda t, v: term_subst(t, v, a)  # noqa: E731
    prem = [
        c.j(mem(M, A), ctx=[(a, SBOOL)]),
        c.j(mem(M2, A), ctx=[(a, SBOOL)]),
        c.j(ElemEq(at(M, TRUE), at(M2, TRUE), at(A, TRUE))),
        c.j(ElemEq(at(M, FALSE), at(M2, FALSE), at(A, FALSE))),
        c.j(ElemEq(c["N"], c["N2"], SBOOL)),
    ]
    return prem, c.j(ElemEq(at(M, c["N"]), at(M2, c["N2"]), at(A, c["N"])))


# ----------------------------------------------------------------------------
# Isomorphism-univalence


def _inverse_laws(c, A, B, F, G, xi):
    a = c.new_var(A, B, F, G)
    b = a
    return [
        c.j(ElemEq(App(G, App(F, Var(a))), Var(a), A), ctx=[(a, A)], xi=xi),
        c.j(ElemEq(App(F, App(G, Var(b))), Var(b), B), ctx=[(b, B)], xi=xi),
    ]


def _iso(c):
    """The six-judgment package: A type, and under r=1 an isomorphism F, G."""
    A, B, F, G = c["A"], c["B"], c["F"], c["G"]
    xi = _one(c["r"])
    return [
        c.j(wf(A)),
        c.j(wf(B), xi=xi),
        c.j(mem(F, arrow(A, B)), xi=xi),
        c.j(mem(G, arrow(B, A)), xi=xi),
    ] + _inverse_laws(c, A, B, F, G, xi)


def _ia(c):
    return IaTy(c["r"], c["A"], c["B"], c["F"], c["G"])


@rule("ia-eq", "ia", r="dim", A="term", A2="term", B="term", B2="term", F="term", F2="term",
      G="term", G2="term")
def _(c):
    A, B, F, G = c["A"], c["B"], c["F"], c["G"]
    xi = _one(c["r"])
    prem = [
        c.j(TypeEq(A, c["A2"])),
        c.j(TypeEq(B, c["B2"]), xi=xi),
        c.j(ElemEq(F, c["F2"], arrow(A, B)), xi=xi),
        c.j(ElemEq(G, c["G2"], arrow(B, A)), xi=xi),
    ] + _inverse_laws(c, A, B, F, G, xi)
    rhs = IaTy(c["r"], c["A2"], c["B2"], c["F2"], c["G2"])
    return prem, c.j(TypeEq(_ia(c), rhs))


@rule("ia-0", "ia", A="term", B="term", F="term", G="term")
def _(c):
    return [c.j(wf(c["A"]))], c.j(TypeEq(IaTy(ZERO, c["A"], c["B"], c["F"], c["G"]), c["A"]))


@rule("ia-1", "ia", A="term", B="term", F="term", G="term")
def _(c):
    return [c.j(wf(c["B"]))], c.j(TypeEq(IaTy(ONE, c["A"], c["B"], c["F"], c["G"]), c["B"]))


@rule("iain-eq", "ia", r="dim", A="term", B="term", F="term", F2="term", G="term", M="term",
      M2="term")
def _(c):
    r = c["r"]
    prem = (
        [c.j(ElemEq(c["M"], c["M2"], c["A"]))]
        + _iso(c)
        + [c.j(ElemEq(c["F"], c["F2"], arrow(c["A"], c["B"])), xi=_one(r))]
    )
    concl = ElemEq(IaIn(r, c["M"], c["F"]), IaIn(r, c["M2"], c["F2"]), _ia(c))
    return prem, c.j(concl)


@rule("iain-0", "ia", A="term", M="term", F="term")
def _(c):
    return [c.j(mem(c["M"], c["A"]))], c.j(ElemEq(IaIn(ZERO, c["M"], c["F"]), c["M"], c["A"]))


@rule("iain-1", "ia", A="term", B="term", M="term", F="term")
def _(c):
    prem = [c.j(mem(c["M"], c["A"])), c.j(mem(c["F"], arrow(c["A"], c["B"])))]
    return prem, c.j(ElemEq(IaIn(ONE, c["M"], c["F"]), App(c["F"], c["M"]), c["B"]))


@rule("iaout-eq", "ia", r="dim", A="term", B="term", F="term", G="term", G2="term", M="term",
      M2="term")
def _(c):
    r = c["r"]
    prem = (
        [c.j(ElemEq(c["M"], c["M2"], _ia(c)))]
        + _iso(c)
        + [c.j(ElemEq(c["G"], c["G2"], arrow(c["B"], c["A"])), xi=_one(r))]
    )
    concl = ElemEq(IaOut(r, c["M"], c["G"]), IaOut(r, c["M2"], c["G2"]), c["A"])
    return prem, c.j(concl)


@rule("iaout-0", "ia", A="term", M="term", G="term")
def _(c):
    return [c.j(mem(c["M"], c["A"]))], c.j(ElemEq(IaOut(ZERO, c["M"], c["G"]), c["M"], c["A"]))


@rule("iaout-1", "ia", A="term", B="term", M="term", G="term")
def _(c):
    prem = [c.j(mem(c["M"], c["B"])), c.j(mem(c["G"], arrow(c["B"], c["A"])))]
    return prem, c.j(ElemEq(IaOut(ONE, c["M"], c["G"]), App(c["G"], c["M"]), c["A"]))


@rule("iaout-beta", "ia", r="dim", A="term", B="term", F="term", G="term", M="term")
def _(c):
    r = c["r"]
    prem = [c.j(mem(c["M"], c["A"]))] + _iso(c)
    concl = ElemEq(IaOut(r, IaIn(r, c["M"], c["F"]), c["G"]), c["M"], c["A"])
    return prem, c.j(concl)


@rule("iain-eta", "ia", r="dim", A="term", B="term", F="term", G="term", M="term")
def _(c):
    r = c["r"]
    prem = [c.j(mem(c["M"], _ia(c)))] + _iso(c)
    concl = ElemEq(IaIn(r, IaOut(r, c["M"], c["G"]), c["F"]), c["M"], _ia(c))
    return prem, c.j(concl)


GROUPS = (
    "structural", "pi", "sigma", "id", "bool", "circle", "hcom", "restriction", "coe", "not",
    "sbool", "ia",
)


def rules_in(group: str) -> list:
    return [r for r in CATALOG.values() if r.group == group]
