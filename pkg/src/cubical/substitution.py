"""Capture-avoiding dimension and term substitution, total dimension substitutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .syntax import (
    Const, DBind, Dim, DName, TBind, Term, Var, dim, field_values, free_dims, free_vars,
    fresh_name, fresh_var, rebuild,
)


class SubstError(ValueError):
    """Raised on context violations (names outside a substitution's source, mismatched contexts)."""


# ----------------------------------------------------------------------------
# Dimension substitution


def subst_dim_in_dim(d: Dim, env: Mapping[str, Dim]) -> Dim:
    if isinstance(d, DName):
        return env.get(d.name, d)
    return d


def dsubst_many(t, env: Mapping[str, Dim]):
    """Simultaneously replace free dimension names per ``env`` (names not in ``env`` are kept)."""
    if not env:
        return t
    return _dsub(t, env)


def _image_names(env: Mapping[str, Dim], keys) -> set:
    return {env[k].name for k in keys if isinstance(env[k], DName)}


def _dsub(v, env):
    if isinstance(v, Term):
        if not (v.fd & env.keys()):
            return v
        return rebuild(v, [_dsub(x, env) for x in field_values(v)])
    if isinstance(v, DName):
        return env.get(v.name, v)
    if isinstance(v, Const):
        return v
    if isinstance(v, DBind):
        live = (v.body.fd - {v.name}) & env.keys()
        if not live:
            return v
        sub = {k: env[k] for k in live}
        name, body = v.name, v.body
        image = _image_names(sub, live)
        if name in image:
            new = fresh_name(image | body.fd | sub.keys())
            sub[name] = DName(new)
            name = new
        return DBind(name, _dsub(body, sub))
    if isinstance(v, TBind):
        return TBind(v.var, _dsub(v.body, env))
    if isinstance(v, tuple):
        return tuple(_dsub(x, env) for x in v)
    return v


def dim_subst(t, r, x: str):
    """``t[r/x]``: capture-avoiding substitution of dimension ``r`` for name ``x``."""
    return _dsub(t, {x: dim(r)})


def rename_dim_binder(b: DBind, avoid: Iterable[str]) -> tuple:
    """Open ``b`` with a binder name outside ``avoid``; returns ``(name, body)``."""
    avoid = frozenset(avoid)
    if b.name not in avoid:
        return b.name, b.body
    new = fresh_name(avoid | b.body.fd)
    return new, dim_subst(b.body, DName(new), b.name)


def instantiate_dbind(b: DBind, r) -> Term:
    return dim_subst(b.body, r, b.name)


# ----------------------------------------------------------------------------
# Term substitution


def term_subst(t, n: Term, a: str):
    """``t[n/a]``: capture-avoiding for both binder sorts."""
    return _tsub(t, {a: n})


def term_subst_many(t, env: Mapping[str, Term]):
    if not env:
        return t
    return _tsub(t, dict(env))


def _tsub(v, env):
    if isinstance(v, Var):
        return env.get(v.name, v)
    if isinstance(v, Term):
        if not (v.fv & env.keys()):
            return v
        return rebuild(v, [_tsub(x, env) for x in field_values(v)])
    if isinstance(v, TBind):
        live = (v.body.fv - {v.var}) & env.keys()
        if not live:
            return v
        sub = {k: env[k] for k in live}
        var, body = v.var, v.body
        img_fv = set().union(*(sub[k].fv for k in live))
        if var in img_fv:
            new = fresh_var(img_fv | body.fv | sub.keys())
            sub[var] = Var(new)
            var = new
        return TBind(var, _tsub(body, sub))
    if isinstance(v, DBind):
        live = v.body.fv & env.keys()
        if not live:
            return v
        sub = {k: env[k] for k in live}
        img_fd = set().union(*(sub[k].fd for k in live))
        name, body = v.name, v.body
        if name in img_fd:
            new = fresh_name(img_fd | body.fd)
            body = dim_subst(body, DName(new), name)
            name = new
        return DBind(name, _tsub(body, sub))
    if isinstance(v, tuple):
        return tuple(_tsub(x, env) for x in v)
    return v


def rename_term_binder(b: TBind, avoid: Iterable[str]) -> tuple:
    avoid = frozenset(avoid)
    if b.var not in avoid:
        return b.var, b.body
    new = fresh_var(avoid | b.body.fv)
    return new, term_subst(b.body, Var(new), b.var)


def instantiate_tbind(b: TBind, n: Term) -> Term:
    return term_subst(b.body, n, b.var)


# ----------------------------------------------------------------------------
# Total dimension substitutions


@dataclass(frozen=True)
class TotalDimSubst:
    """A total map from the names of ``source`` to dimensions over ``target``.

    ``mapping`` is kept sorted by name so that equal substitutions print and
    hash identically.
    """

    source: frozenset
    target: frozenset
    mapping: tuple

    def __post_init__(self):
        object.__setattr__(self, "source", frozenset(self.source))
        object.__setattr__(self, "target", frozenset(self.target))
        items = self.mapping.items() if isinstance(self.mapping, Mapping) else self.mapping
        items = tuple(sorted(((k, dim(v)) for k, v in items), key=lambda kv: kv[0]))
        object.__setattr__(self, "mapping", items)
        keys = [k for k, _ in items]
        if len(set(keys)) != len(keys):
            raise SubstError("duplicate name in substitution")
        if set(keys) != self.source:
            missing = self.source - set(keys)
            extra = set(keys) - self.source
            raise SubstError(f"substitution not total on its source: missing {sorted(missing)}, extra {sorted(extra)}")
        for k, d in items:
            if isinstance(d, DName) and d.name not in self.target:
                raise SubstError(f"{k} maps to {d.name}, which is not in the target context")

    @property
    def as_dict(self) -> dict:
        return dict(self.mapping)

    def __call__(self, d: Dim) -> Dim:
        if isinstance(d, DName):
            if d.name not in self.source:
                raise SubstError(f"name {d.name} outside substitution source")
            return self.as_dict[d.name]
        return d

    @classmethod
    def identity(cls, ctx: Iterable[str]) -> "TotalDimSubst":
        ctx = frozenset(ctx)
        return cls(ctx, ctx, {x: DName(x) for x in ctx})


def apply_total(t, psi: TotalDimSubst):
    """Apply ``psi`` simultaneously to every free dimension name of ``t``."""
    stray = free_dims(t) - psi.source
    if stray:
        raise SubstError(f"free names {sorted(stray)} outside substitution source {sorted(psi.source)}")
    return _dsub(t, psi.as_dict)


def compose(psi1: TotalDimSubst, psi2: TotalDimSubst) -> TotalDimSubst:
    """First ``psi1``, then ``psi2``."""
    if psi1.target != psi2.source:
        raise SubstError(
            f"cannot compose: target {sorted(psi1.target)} differs from source {sorted(psi2.source)}"
        )
    m2 = psi2.as_dict
    return TotalDimSubst(
        psi1.source,
        psi2.target,
        {x: subst_dim_in_dim(d, m2) for x, d in psi1.mapping},
    )


__all__ = [
    "SubstError", "TotalDimSubst", "apply_total", "compose", "dim_subst", "dsubst_many",
    "term_subst", "term_subst_many", "rename_dim_binder", "rename_term_binder",
    "instantiate_dbind", "instantiate_tbind", "subst_dim_in_dim", "free_vars",
]
