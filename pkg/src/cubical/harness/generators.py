"""Term generators.

``GrammarGen`` draws arbitrary closed terms (free dimension names allowed)
for the determinacy and stability suites.  ``TypedGen`` only produces
well-typed terms: each choice is an application of an introduction,
elimination or Kan rule, and the chosen rule names form the sketch that
accompanies every term.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from ..opsem import notf
from ..substitution import dim_subst
from ..syntax import (
    BASE, BOOL, CIRCLE, FALSE, ONE, SBOOL, TRUE, ZERO, App, CElim, Coe, Const, DApp, DBind, DLam,
    DName, Fst, Hcom, Id, If, IaIn, IaOut, IaTy, Lam, Loop, NotEl, NotTy, Pair, Pi, Sigma, Snd,
    TBind, Term, Var, make_tube,
)

BOOL_FAMILIES = (
    "const", "var", "notf", "if", "hcom", "sbool", "coe-bool", "coe-not", "ia", "beta", "pi",
    "sigma", "id", "circle",
)

DEFAULT_WEIGHTS = {
    "const": 2.0, "var": 2.0, "notf": 2.0, "if": 1.5, "hcom": 1.5, "sbool": 1.0, "coe-bool": 1.0,
    "coe-not": 1.5, "ia": 1.5, "beta": 1.5, "pi": 1.0, "sigma": 1.0, "id": 1.0, "circle": 1.0,
}


@dataclass
class GenConfig:
    depth: int = 4
    seed: int = 0
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    # how many dimension names a term may bind on any path
    dim_budget: int = 2

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("weights must be nonnegative")
        if self.weights.get("const", 0) <= 0:
            raise ValueError("the constant family needs a positive weight")


NOT_ISO = Lam(TBind("a", notf(Var("a"))))


def ia_bool_line(x: str = "x") -> DBind:
    """``x.ia(x; bool, bool, not, not)``"""
    return DBind(x, IaTy(DName(x), BOOL, BOOL, NOT_ISO, NOT_ISO))


BOOL_TO_BOOL = Pi(BOOL, TBind("_", BOOL))
BOOL_X_BOOL = Sigma(BOOL, TBind("_", BOOL))


class TypedGen:
    """Derivation-directed generator of closed well-typed terms."""

    def __init__(self, cfg: GenConfig, rng: Optional[random.Random] = None):
        self.cfg = cfg
        self.rng = rng or random.Random(cfg.seed)
        self._fams = [f for f in BOOL_FAMILIES if cfg.weights.get(f, 0) > 0]
        self._wts = [cfg.weights[f] for f in self._fams]

    # -- helpers --------------------------------------------------------

    def _eps(self) -> Const:
        return self.rng.choice((ZERO, ONE))

    def _dim(self, dims) -> object:
        opts = [ZERO, ONE] + [DName(z) for z in dims]
        return self.rng.choice(opts)

    def _fresh(self, used, base) -> str:
        k = 0
        while f"{base}{k}" in used:
            k += 1
        return f"{base}{k}"

    def _fresh_var(self, vars_) -> str:
        return self._fresh(set(vars_), "v")

    def _fresh_dim(self, dims) -> str:
        return self._fresh(set(dims), "z")

    def variant(self, k: Term, dims, y: Optional[str] = None, ty: Term = BOOL) -> Term:
        """A term judgmentally equal to ``k`` at ``ty``, possibly mentioning ``y``."""
        rng = self.rng
        opts = ["same"]
        if isinstance(ty, type(BOOL)):
            opts += ["notnot", "if"]
        if y is not None:
            opts += ["dapp", "coe-y"]
        opts.append("coe")
        pick = rng.choice(opts)
        if pick == "notnot":
            return notf(notf(k))
        if pick == "if":
            return If(TBind("_", BOOL), TRUE, k, FALSE)
        z = self._fresh_dim(set(dims) | ({y} if y else set()))
        if pick == "dapp":
            return DApp(DLam(DBind(z, k)), DName(y))
        if pick == "coe-y":
            return Coe(DBind(z, ty), DName(y), self._dim(dims), k)
        if pick == "coe":
            return Coe(DBind(z, ty), self._dim(dims), self._dim(dims), k)
        return k

    def _box(self, k: Term, ty: Term, dims, n_ext: Optional[int] = None):
        """Extents, endpoints, cap and coherent tubes for an hcom around ``k``."""
        rng = self.rng
        n = n_ext or rng.choice((1, 1, 2))
        y = self._fresh(set(dims), "y")
        extents = tuple(self._dim(dims) for _ in range(n))
        r, r2 = self._dim(dims), self._dim(dims)
        cap = self.variant(k, dims, None, ty)
        tubes = tuple(
            make_tube(y, self.variant(k, dims, y, ty), self.variant(k, dims, y, ty)) for _ in range(n)
        )
        return extents, r, r2, cap, tubes

    # -- bool -----------------------------------------------------------

    def bool_term(self, depth: Optional[int] = None, vars_=(), dims=()) -> tuple:
        """``(term, sketch)`` with ``term : bool`` in context ``vars_ : bool``."""
        d = self.cfg.depth if depth is None else depth
        fam = "const" if d <= 1 else self.rng.choices(self._fams, self._wts)[0]
        if fam == "var" and not vars_:
            fam = "const"
        if fam in ("id", "circle") and len(dims) >= self.cfg.dim_budget:
            fam = "notf"
        return getattr(self, "_b_" + fam.replace("-", "_"))(d, tuple(vars_), tuple(dims))

    def _b_const(self, d, vars_, dims):
        if vars_ and self.rng.random() < 0.3:
            return Var(self.rng.choice(vars_)), ("var",)
        t = self.rng.choice((TRUE, FALSE))
        return t, ("true" if t is TRUE else "false",)

    def _b_var(self, d, vars_, dims):
        return Var(self.rng.choice(vars_)), ("var",)

    def _b_notf(self, d, vars_, dims):
        m, s = self.bool_term(d - 1, vars_, dims)
        return notf(m), ("notf", s)

    def _b_if(self, d, vars_, dims):
        (m, sm), (t, st), (f, sf) = (self.bool_term(d - 1, vars_, dims) for _ in range(3))
        return If(TBind("_", BOOL), m, t, f), ("if", sm, st, sf)

    def _b_hcom(self, d, vars_, dims):
        k, sk = self.bool_term(d - 1, vars_, dims)
        extents, r, r2, cap, tubes = self._box(k, BOOL, dims)
        return Hcom(extents, BOOL, r, r2, cap, tubes), ("hcom-bool", sk)

    def sbool_term(self, d, vars_, dims) -> tuple:
        rng = self.rng
        if d <= 1:
            t = rng.choice((TRUE, FALSE))
            return t, ("strue" if t is TRUE else "sfalse",)
        k, sk = self.sbool_term(d - 1, vars_, dims)
        pick = rng.choice(("hcom", "coe", "if"))
        if pick == "hcom":
            extents, r, r2, cap, tubes = self._box(k, SBOOL, dims)
            return Hcom(extents, SBOOL, r, r2, cap, tubes), ("hcom-sbool", sk)
        if pick == "coe":
            x = self._fresh_dim(dims)
            return Coe(DBind(x, SBOOL), self._dim(dims), self._dim(dims), k), ("coe-sbool", sk)
        t, st = self.sbool_term(d - 1, vars_, dims)
        f, sf = self.sbool_term(d - 1, vars_, dims)
        return If(TBind("_", SBOOL), k, t, f), ("sif", sk, st, sf)

    def _b_sbool(self, d, vars_, dims):
        s, ss = self.sbool_term(d - 1, vars_, dims)
        t, st = self.bool_term(d - 1, vars_, dims)
        f, sf = self.bool_term(d - 1, vars_, dims)
        return If(TBind("_", BOOL), s, t, f), ("sif", ss, st, sf)

    def _b_coe_bool(self, d, vars_, dims):
        m, s = self.bool_term(d - 1, vars_, dims)
        x = self._fresh_dim(dims)
        return Coe(DBind(x, BOOL), self._dim(dims), self._dim(dims), m), ("coe-bool", s)

    def _b_coe_not(self, d, vars_, dims):
        m, s = self.bool_term(d - 1, vars_, dims)
        x = self._fresh_dim(dims)
        e = self._eps()
        if self.rng.random() < 0.3:
            m, s = NotEl(e, m), ("notel", s)
        return Coe(DBind(x, NotTy(DName(x))), e, self._eps(), m), ("coe-not", s)

    def _b_ia(self, d, vars_, dims):
        m, s = self.bool_term(d - 1, vars_, dims)
        e, e2 = self._eps(), self._eps()
        pick = self.rng.choice(("coe", "roundtrip", "out"))
        if pick == "coe":
            x = self._fresh_dim(dims)
            return Coe(ia_bool_line(x), e, e2, m), ("coe-ia", s)
        if pick == "roundtrip":
            return IaOut(e, IaIn(e, m, NOT_ISO), NOT_ISO), ("iaout-iain", s)
        return IaOut(e, m, NOT_ISO), ("iaout", s)

    def _b_beta(self, d, vars_, dims):
        a = self._fresh_var(vars_)
        body, sb = self.bool_term(d - 1, vars_ + (a,), dims)
        arg, sa = self.bool_term(d - 1, vars_, dims)
        return App(Lam(TBind(a, body)), arg), ("pi-beta", sb, sa)

    def fun_term(self, d, vars_, dims) -> tuple:
        """An element of ``bool -> bool``."""
        a = self._fresh_var(vars_)
        body, sb = self.bool_term(d - 1, vars_ + (a,), dims)
        lam = Lam(TBind(a, body))
        pick = self.rng.choice(("lam", "coe", "hcom"))
        if pick == "coe":
            x = self._fresh_dim(dims)
            return Coe(DBind(x, BOOL_TO_BOOL), self._dim(dims), self._dim(dims), lam), ("coe-pi", sb)
        if pick == "hcom":
            extents, r, r2, cap, tubes = self._box(lam, BOOL_TO_BOOL, dims)
            return Hcom(extents, BOOL_TO_BOOL, r, r2, cap, tubes), ("hcom-pi", sb)
        return lam, ("lam", sb)

    def _b_pi(self, d, vars_, dims):
        f, sf = self.fun_term(d - 1, vars_, dims)
        arg, sa = self.bool_term(d - 1, vars_, dims)
        return App(f, arg), ("app", sf, sa)

    def pair_term(self, d, vars_, dims) -> tuple:
        (m, sm), (n, sn) = self.bool_term(d - 1, vars_, dims), self.bool_term(d - 1, vars_, dims)
        p = Pair(m, n)
        pick = self.rng.choice(("pair", "coe", "hcom"))
        if pick == "coe":
            x = self._fresh_dim(dims)
            return Coe(DBind(x, BOOL_X_BOOL), self._dim(dims), self._dim(dims), p), ("coe-sigma", sm, sn)
        if pick == "hcom":
            extents, r, r2, cap, tubes = self._box(p, BOOL_X_BOOL, dims)
            return Hcom(extents, BOOL_X_BOOL, r, r2, cap, tubes), ("hcom-sigma", sm, sn)
        return p, ("pair", sm, sn)

    def _b_sigma(self, d, vars_, dims):
        p, sp = self.pair_term(d - 1, vars_, dims)
        if self.rng.random() < 0.5:
            return Fst(p), ("fst", sp)
        return Snd(p), ("snd", sp)

    def path_term(self, d, vars_, dims) -> tuple:
        """``(path, ty, sketch)`` with ``path : ty``, an identification type over bool."""
        z = self._fresh_dim(dims)
        body, sb = self.bool_term(d - 1, vars_, dims + (z,))
        p0, p1 = dim_subst(body, ZERO, z), dim_subst(body, ONE, z)
        w = self._fresh(set(dims) | {z}, "w")
        ty = Id(DBind(w, BOOL), p0, p1)
        path = DLam(DBind(z, body))
        pick = self.rng.choice(("dlam", "coe", "hcom"))
        if pick == "coe":
            x = self._fresh_dim(dims)
            return Coe(DBind(x, ty), self._dim(dims), self._dim(dims), path), ty, ("coe-id", sb)
        if pick == "hcom":
            extents, r, r2, cap, tubes = self._box(path, ty, dims)
            return Hcom(extents, ty, r, r2, cap, tubes), ty, ("hcom-id", sb)
        return path, ty, ("dlam", sb)

    def _b_id(self, d, vars_, dims):
        p, _, sp = self.path_term(d - 1, vars_, dims)
        return DApp(p, self._dim(dims)), ("dapp", sp)

    # -- circle ---------------------------------------------------------

    def circle_term(self, depth: Optional[int] = None, vars_=(), dims=()) -> tuple:
        d = self.cfg.depth if depth is None else depth
        rng = self.rng
        if d <= 1:
            if dims and rng.random() < 0.4:
                return Loop(DName(rng.choice(dims))), ("loop",)
            if rng.random() < 0.5:
                return Loop(self._eps()), ("loop",)
            return BASE, ("base",)
        pick = rng.choice(("hcom", "coe", "dapp", "elim", "leaf"))
        if pick == "leaf":
            return self.circle_term(1, vars_, dims)
        if pick == "dapp" and len(dims) < self.cfg.dim_budget:
            z = self._fresh_dim(dims)
            k, sk = self.circle_term(d - 1, vars_, dims + (z,))
            return DApp(DLam(DBind(z, k)), self._dim(dims)), ("dapp", sk)
        k, sk = self.circle_term(d - 1, vars_, dims)
        if pick == "hcom":
            extents, r, r2, cap, tubes = self._box(k, CIRCLE, dims)
            return Hcom(extents, CIRCLE, r, r2, cap, tubes), ("hcom-s1", sk)
        if pick == "elim" and len(dims) < self.cfg.dim_budget:
            z = self._fresh_dim(dims)
            motive = TBind("_", CIRCLE)
            return CElim(motive, k, BASE, DBind(z, Loop(DName(z)))), ("celim", sk)
        x = self._fresh_dim(dims)
        return Coe(DBind(x, CIRCLE), self._dim(dims), self._dim(dims), k), ("coe-s1", sk)

    def _b_circle(self, d, vars_, dims):
        s, ss = self.circle_term(d - 1, vars_, dims)
        p, sp = self.bool_term(d - 1, vars_, dims)
        z = self._fresh_dim(dims)
        loop = self.variant(p, dims + (z,), z)
        return CElim(TBind("_", BOOL), s, p, DBind(z, loop)), ("celim", ss, sp)


def gen_closed_bool(cfg: GenConfig, count: Optional[int] = None):
    """Yield ``(term, sketch)`` pairs of closed terms of type bool."""
    g = TypedGen(cfg)
    k = 0
    while count is None or k < count:
        yield g.bool_term()
        k += 1


def gen_closed_circle(cfg: GenConfig, count: Optional[int] = None):
    g = TypedGen(cfg)
    k = 0
    while count is None or k < count:
        yield g.circle_term()
        k += 1


# ----------------------------------------------------------------------------
# Grammar-random terms


class GrammarGen:
    """Arbitrary closed terms: any former anywhere, free dimension names allowed."""

    FORMERS = (
        "var", "true", "false", "base", "bool", "sbool", "circle", "loop", "not-ty", "not-el",
        "lam", "app", "pair", "fst", "snd", "dlam", "dapp", "pi", "sigma", "id", "if", "circ-elim",
        "coe", "hcom", "ia", "ia-in", "ia-out",
    )
    LEAVES = ("true", "false", "base", "bool", "sbool", "circle", "loop", "not-ty")

    # principal argument position -> formers that make the eliminator fire
    HEADS = {
        "app": ("lam",), "fst": ("pair",), "snd": ("pair",), "dapp": ("dlam",),
        "if": ("true", "false", "hcom"), "circ-elim": ("base", "loop", "hcom"),
        "ia-out": ("ia-in",),
        "type": ("bool", "sbool", "circle", "pi", "sigma", "id", "not-ty", "ia"),
    }

    def __init__(self, seed: int = 0, depth: int = 4, free_dims=("i", "j"), bias: float = 0.5):
        self.rng = random.Random(seed)
        self.depth = depth
        self.free = tuple(free_dims)
        # chance that a principal argument is drawn from a matching former
        self.bias = bias

    def _principal(self, kind: str, d: int, vars_, dims) -> Term:
        if d > 1 and self.rng.random() < self.bias:
            return self.term(d - 1, vars_, dims, form=self.rng.choice(self.HEADS[kind]))
        return self.term(d - 1, vars_, dims)

    def dim(self, dims):
        opts = [ZERO, ONE] + [DName(x) for x in self.free + tuple(dims)]
        return self.rng.choice(opts)

    def term(self, depth: Optional[int] = None, vars_=(), dims=(), form: Optional[str] = None) -> Term:
        d = self.depth if depth is None else depth
        rng = self.rng
        if form is None and d <= 1:
            form = rng.choice(self.LEAVES + (("var",) * 3 if vars_ else ()))
        elif form is None:
            form = rng.choice(self.FORMERS)
            if form == "var" and not vars_:
                form = "true"
        sub = lambda v=vars_, ds=dims: self.term(d - 1, v, ds)  # noqa: E731
        if form == "var":
            return Var(rng.choice(vars_))
        if form in ("true", "false", "base", "bool", "sbool", "circle"):
            return {"true": TRUE, "false": FALSE, "base": BASE, "bool": BOOL, "sbool": SBOOL,
                    "circle": CIRCLE}[form]
        if form == "loop":
            return Loop(self.dim(dims))
        if form == "not-ty":
            return NotTy(self.dim(dims))
        if form == "not-el":
            return NotEl(self.dim(dims), sub())
        a = f"a{len(vars_)}"
        x = f"x{len(dims)}"
        if form == "lam":
            return Lam(TBind(a, sub(vars_ + (a,))))
        if form == "app":
            return App(self._principal("app", d, vars_, dims), sub())
        if form == "pair":
            return Pair(sub(), sub())
        if form == "fst":
            return Fst(self._principal("fst", d, vars_, dims))
        if form == "snd":
            return Snd(self._principal("snd", d, vars_, dims))
        if form == "dlam":
            return DLam(DBind(x, sub(vars_, dims + (x,))))
        if form == "dapp":
            return DApp(self._principal("dapp", d, vars_, dims), self.dim(dims))
        if form == "pi":
            return Pi(sub(), TBind(a, sub(vars_ + (a,))))
        if form == "sigma":
            return Sigma(sub(), TBind(a, sub(vars_ + (a,))))
        if form == "id":
            return Id(DBind(x, sub(vars_, dims + (x,))), sub(), sub())
        if form == "if":
            return If(TBind(a, sub(vars_ + (a,))), self._principal("if", d, vars_, dims), sub(), sub())
        if form == "circ-elim":
            scrut = self._principal("circ-elim", d, vars_, dims)
            return CElim(TBind(a, sub(vars_ + (a,))), scrut, sub(), DBind(x, sub(vars_, dims + (x,))))
        if form == "coe":
            line = DBind(x, self._principal("type", d, vars_, dims + (x,)))
            src = self.dim(dims)
            if isinstance(line.body, NotTy) and rng.random() < self.bias:
                return Coe(line, src, self.dim(dims), NotEl(src, sub()))
            return Coe(line, src, self.dim(dims), sub())
        if form == "hcom":
            n = rng.choice((1, 1, 2))
            y = f"y{len(dims)}"
            tubes = tuple(
                make_tube(y, sub(vars_, dims + (y,)), sub(vars_, dims + (y,))) for _ in range(n)
            )
            return Hcom(tuple(self.dim(dims) for _ in range(n)), self._principal("type", d, vars_, dims), self.dim(dims),
                        self.dim(dims), sub(), tubes)
        if form == "ia":
            return IaTy(self.dim(dims), sub(), sub(), sub(), sub())
        if form == "ia-in":
            return IaIn(self.dim(dims), sub(), sub())
        if form == "ia-out":
            return IaOut(self.dim(dims), self._principal("ia-out", d, vars_, dims), sub())
        raise AssertionError(form)


def grammar_terms(seed: int, count: int, depth: int = 4):
    g = GrammarGen(seed, depth)
    for _ in range(count):
        yield g.term()
