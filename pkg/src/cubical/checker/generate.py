"""Random rule instances and their mutations.

A valid instance of a rule is a one-step derivation whose premises are
assumptions carrying exactly the instantiated premise judgments.
"""

from __future__ import annotations

import random
from dataclasses import replace

from ..restriction import EqSet
from ..syntax import BASE, BOOL, CIRCLE, ONE, TRUE, ZERO, Const, DName, Fst, Loop, Var
from .judgment import CtxWF, ElemEq, TypeEq
from .rules import CATALOG, SideConditionError
from .validate import Assumption, Derivation, instantiate

PSI_NAMES = ("i", "j")
BOUND_DIMS = ("x", "y", "z", "w")
BOUND_VARS = ("a", "b", "c", "d")
TARGET_NAMES = ("k", "l")


class Sampler:
    def __init__(self, rng: random.Random, depth: int = 3):
        from ..harness.generators import GrammarGen

        self.rng = rng
        self.g = GrammarGen(depth=depth, free_dims=())
        self.g.rng = rng
        self.depth = depth

    def dim(self, dims):
        return self.rng.choice([ZERO, ONE] + [DName(x) for x in sorted(dims)])

    def term(self, vars_, dims):
        return self.g.term(self.rng.randint(1, self.depth), tuple(vars_), tuple(sorted(dims)))

    def body(self, vars_, dims):
        if self.rng.random() < 0.5:
            return TypeEq(self.term(vars_, dims), self.term(vars_, dims))
        return ElemEq(self.term(vars_, dims), self.term(vars_, dims), self.term(vars_, dims))


def sample_bindings(rule_name: str, rng: random.Random, depth: int = 3) -> dict:
    rule = CATALOG[rule_name]
    s = Sampler(rng, depth)
    psi = frozenset(x for x in PSI_NAMES if rng.random() < 0.5)
    gamma = (("g", BOOL),) if rng.random() < 0.5 else ()
    b = {"Psi": psi, "Gamma": gamma}
    dnames = iter(rng.sample(BOUND_DIMS, len(BOUND_DIMS)))
    vnames = iter(rng.sample(BOUND_VARS, len(BOUND_VARS)))
    for k, mv in rule.sig.items():
        if mv.sort == "dname":
            b[k] = next(dnames)
        elif mv.sort == "var":
            b[k] = next(vnames)
    gvars = [v for v, _ in gamma]
    n_ext = rng.choice((1, 2))
    for k, mv in rule.sig.items():
        vars_ = gvars + [b[s_] for s_ in mv.scope if rule.sig[s_].sort == "var"]
        dims = set(psi) | {b[s_] for s_ in mv.scope if rule.sig[s_].sort == "dname"}
        if mv.sort == "term":
            b[k] = s.term(vars_, dims)
        elif mv.sort == "dim":
            b[k] = s.dim(dims)
        elif mv.sort == "eps":
            b[k] = rng.choice((ZERO, ONE))
        elif mv.sort == "extents":
            b[k] = tuple(s.dim(dims) for _ in range(n_ext))
        elif mv.sort == "tubes":
            b[k] = tuple((s.term(vars_, dims), s.term(vars_, dims)) for _ in range(n_ext))
        elif mv.sort == "judg":
            b[k] = s.body(vars_, dims)
        elif mv.sort == "eqs":
            b[k] = EqSet.of(*((s.dim(dims), s.dim(dims)) for _ in range(rng.randint(0, 2))))
        elif mv.sort == "dims":
            b[k] = frozenset(x for x in TARGET_NAMES if rng.random() < 0.5)
        elif mv.sort == "index":
            b[k] = rng.randint(1, n_ext)
    if "psi" in rule.sig:
        b["psi"] = tuple((x, s.dim(b["target"])) for x in sorted(psi))
    if "index" in {mv.sort for mv in rule.sig.values()}:
        i = b["i"]
        exts = list(b["extents"])
        exts[i - 1] = Const(rng.choice((0, 1)))
        b["extents"] = tuple(exts)
    return b


def valid_instance(rule_name: str, rng: random.Random, depth: int = 3, tries: int = 200) -> Derivation:
    """A valid one-step derivation by ``rule_name`` with assumed premises."""
    last = None
    for _ in range(tries):
        b = sample_bindings(rule_name, rng, depth)
        try:
            prem, concl = instantiate(rule_name, b)
        except SideConditionError as e:
            last = e
            continue
        hyps = [Assumption(f"H{k + 1}", p) for k, p in enumerate(prem)]
        return Derivation(rule_name, b, concl, hyps)
    raise RuntimeError(f"no valid instance of {rule_name}: {last}")


def _perturb(body):
    if isinstance(body, TypeEq):
        return TypeEq(body.left, Fst(body.right))
    if isinstance(body, ElemEq):
        return ElemEq(body.left, Fst(body.right), body.ty)
    assert isinstance(body, CtxWF)
    return TypeEq(BOOL, BOOL)


def mutate_conclusion(d: Derivation) -> Derivation:
    """Same bindings and premises, different conclusion: a template mismatch."""
    return replace(d, conclusion=replace(d.conclusion, body=_perturb(d.conclusion.body)))


def mutate_premise(d: Derivation, k: int = 0) -> Derivation:
    """Perturb premise ``k``; ``None`` for rules without premises."""
    if k >= len(d.premises):
        return None
    p = d.premises[k]
    bad = Assumption(p.name, replace(p.conclusion, body=_perturb(p.conclusion.body)))
    prems = list(d.premises)
    prems[k] = bad
    return replace(d, premises=prems)


# ----------------------------------------------------------------------------
# Complete derivations and the shipped corpus


def derive(rule_name: str, bindings: dict, *subproofs) -> Derivation:
    """A node whose conclusion is computed from ``bindings``."""
    _, concl = instantiate(rule_name, bindings)
    return Derivation(rule_name, bindings, concl, list(subproofs))


def full_examples() -> dict:
    """Small derivations with no assumptions, by name."""
    bool_wf = derive("bool-wf", {})
    true_mem = ElemEq(TRUE, TRUE, BOOL)

    beta = derive(
        "pi-beta", {"a": "a", "A": BOOL, "B": BOOL, "M": Var("a"), "N": TRUE},
        derive("var", {"a": "a", "A": BOOL}, bool_wf),
        derive("true", {}),
        bool_wf,
        derive("weaken", {"J": TypeEq(BOOL, BOOL), "a": "a", "A": BOOL}, bool_wf, bool_wf),
    )

    loop1 = Loop(ONE)
    symmetric = derive(
        "eq-sym", {"M": loop1, "M2": BASE, "A": CIRCLE},
        derive("eq-sym", {"M": BASE, "M2": loop1, "A": CIRCLE}, derive("loop-endpoint", {"eps": ONE})),
    )

    at_x = frozenset({"x"})
    loop_x = derive("loop", {"r": DName("x"), "Psi": at_x})
    face = derive("dsubst", {"J": loop_x.conclusion.body, "psi": (("x", ZERO),),
                             "target": frozenset(), "Psi": at_x}, loop_x)

    def refl(psi):
        b = {"J": true_mem, "xi": EqSet(), "r": ZERO, "Psi": psi}
        return derive("restrict-refl", b, derive("true", {"Psi": psi}))

    # unsatisfiable tube and cap premises are discharged, not proved
    tube = derive(
        "hcom-tube",
        {"A": BOOL, "extents": (ZERO,), "r": ZERO, "r2": ONE, "M": TRUE, "y": "y",
         "tubes": ((TRUE, TRUE),), "i": 1},
        bool_wf, derive("true", {}), refl(frozenset({"y"})), refl(frozenset()),
    )
    return {"pi-beta-identity": beta, "loop-endpoint-symmetric": symmetric, "loop-face": face,
            "hcom-constant-tube": tube}


def build_corpus(root, seed: int = 0) -> dict:
    """Write ``valid/`` and ``mutated/`` derivation files under ``root``.

    Returns ``{relative path: expected reason code or None}``.
    """
    from pathlib import Path

    from .fileformat import dump

    root = Path(root)
    (root / "valid").mkdir(parents=True, exist_ok=True)
    (root / "mutated").mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    expect = {}
    for name, d in full_examples().items():
        dump(d, root / "valid" / f"full-{name}.json")
        expect[f"valid/full-{name}.json"] = None
    for name in sorted(CATALOG):
        d = valid_instance(name, rng)
        dump(d, root / "valid" / f"{name}.json")
        expect[f"valid/{name}.json"] = None
        dump(mutate_conclusion(d), root / "mutated" / f"{name}-conclusion.json")
        expect[f"mutated/{name}-conclusion.json"] = "TemplateMismatch"
        bad = mutate_premise(d)
        if bad is not None:
            dump(bad, root / "mutated" / f"{name}-premise.json")
            expect[f"mutated/{name}-premise.json"] = "PremiseMismatch"
    return expect
