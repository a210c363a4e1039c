"""Judgment forms, their alpha-comparison and dimension substitution."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Union

from ..restriction import EqSet
from ..substitution import TotalDimSubst, apply_total, dim_subst
from ..syntax import DName, Term, alpha_key, dim, free_dims, free_vars


@dataclass(frozen=True)
class TypeEq:
    left: Term
    right: Term


@dataclass(frozen=True)
class ElemEq:
    left: Term
    right: Term
    ty: Term


@dataclass(frozen=True)
class CtxWF:
    pass


Body = Union[TypeEq, ElemEq, CtxWF]


@dataclass(frozen=True)
class Judgment:
    """``Ψ | Ξ ; Γ ⊢ body``.  ``gamma`` is a tuple of ``(var, type)`` pairs."""

    psi: frozenset
    body: Body
    gamma: tuple = ()
    xi: EqSet = field(default_factory=EqSet)

    def __post_init__(self):
        object.__setattr__(self, "psi", frozenset(self.psi))
        object.__setattr__(self, "gamma", tuple(self.gamma))


def body_terms(body: Body) -> tuple:
    if isinstance(body, TypeEq):
        return (body.left, body.right)
    if isinstance(body, ElemEq):
        return (body.left, body.right, body.ty)
    return ()


def map_body(body: Body, f) -> Body:
    if isinstance(body, TypeEq):
        return TypeEq(f(body.left), f(body.right))
    if isinstance(body, ElemEq):
        return ElemEq(f(body.left), f(body.right), f(body.ty))
    return body


def judgment_key(j: Judgment):
    """Alpha-invariant key: context variables become positions."""
    venv: dict = {}
    gkey = []
    for k, (var, ty) in enumerate(j.gamma):
        gkey.append(alpha_key(ty, dict(venv)))
        venv[var] = ("ctx", k)
    bkey = (type(j.body).__name__,) + tuple(alpha_key(t, dict(venv)) for t in body_terms(j.body))
    return (tuple(sorted(j.psi)), j.xi.eqs, tuple(gkey), bkey)


def judgments_alpha_eq(j1: Judgment, j2: Judgment) -> bool:
    return judgment_key(j1) == judgment_key(j2)


def dsubst_judgment(j: Judgment, r, x: str, psi=None) -> Judgment:
    """``J[r/x]`` on every part; ``psi`` overrides the resulting context."""
    f = lambda t: dim_subst(t, r, x)  # noqa: E731
    d = dim(r)
    xi = EqSet.of(*((_sub1(a, x, d), _sub1(b, x, d)) for a, b in j.xi.eqs))
    gamma = tuple((v, f(t)) for v, t in j.gamma)
    new_psi = psi if psi is not None else (j.psi - {x}) | free_dims(d)
    return Judgment(new_psi, map_body(j.body, f), gamma, xi)


def _sub1(d, x, r):
    return r if isinstance(d, DName) and d.name == x else d


def apply_total_judgment(j: Judgment, psi: TotalDimSubst) -> Judgment:
    f = lambda t: apply_total(t, psi)  # noqa: E731
    xi = EqSet.of(*((psi(a), psi(b)) for a, b in j.xi.eqs))
    gamma = tuple((v, f(t)) for v, t in j.gamma)
    return Judgment(psi.target, map_body(j.body, f), gamma, xi)


def scope_errors(j: Judgment) -> list:
    """Names used outside the judgment's contexts, as messages."""
    errs = []
    seen: list = []
    for var, ty in j.gamma:
        if var in seen:
            errs.append(f"context variable {var} repeated")
        stray = free_vars(ty) - set(seen)
        if stray:
            errs.append(f"context type for {var} mentions {sorted(stray)}")
        dstray = free_dims(ty) - j.psi
        if dstray:
            errs.append(f"context type for {var} mentions dimensions {sorted(dstray)}")
        seen.append(var)
    for t in body_terms(j.body):
        stray = free_vars(t) - set(seen)
        if stray:
            errs.append(f"free variables {sorted(stray)} not in context")
        dstray = free_dims(t) - j.psi
        if dstray:
            errs.append(f"free dimensions {sorted(dstray)} not in context")
    xstray = j.xi.names - j.psi
    if xstray:
        errs.append(f"restriction mentions {sorted(xstray)} outside context")
    return errs


def with_body(j: Judgment, body: Body) -> Judgment:
    return replace(j, body=body)
