"""Structural counterexample minimisation.

A subterm may be replaced by ``true``, ``false`` or ``base`` when it is sort
correct to do so, which we decide by evaluating the subterm: a subterm that
evaluates to a boolean has sort bool, one that evaluates to ``base`` or a
loop has sort S¹.  Each candidate is kept only if the predicate still fails.
"""

from __future__ import annotations

from typing import Callable

from ..opsem import evaluate
from ..syntax import BASE, FALSE, TRUE, DBind, Loop, TBind, Term, field_values, rebuild

_LEAVES = (TRUE, FALSE, BASE)


def _positions(t: Term, path=(), bound=frozenset()):
    """``(path, subterm, bound names)`` outermost first."""
    yield path, t, bound
    for k, v in enumerate(field_values(t)):
        yield from _field_positions(v, path + (k,), bound)


def _field_positions(v, path, bound):
    if isinstance(v, Term):
        yield from _positions(v, path, bound)
    elif isinstance(v, TBind):
        yield from _positions(v.body, path + ("body",), bound | {v.var})
    elif isinstance(v, DBind):
        yield from _positions(v.body, path + ("body",), bound | {v.name})
    elif isinstance(v, tuple):
        for k, w in enumerate(v):
            yield from _field_positions(w, path + (k,), bound)


def replace_at(t, path: tuple, new: Term):
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(t, TBind):
        return TBind(t.var, replace_at(t.body, rest, new))
    if isinstance(t, DBind):
        return DBind(t.name, replace_at(t.body, rest, new))
    if isinstance(t, tuple):
        items = list(t)
        items[head] = replace_at(items[head], rest, new)
        return tuple(items)
    vals = list(field_values(t))
    vals[head] = replace_at(vals[head], rest, new)
    return rebuild(t, vals)


def _candidates(sub: Term, fuel: int) -> list:
    tr = evaluate(sub, fuel, keep=False)
    if tr.outcome != "value":
        return []
    v = tr.final
    if v is TRUE:
        return [TRUE, FALSE]
    if v is FALSE:
        return [FALSE, TRUE]
    if v is BASE or isinstance(v, Loop):
        return [BASE]
    return []


def shrink(t: Term, fails: Callable[[Term], bool], fuel: int = 10_000, max_checks: int = 2_000) -> Term:
    """A smaller term on which ``fails`` still holds (``t`` itself if none is found)."""
    cur = t
    checks = 0
    progress = True
    while progress and checks < max_checks:
        progress = False
        for path, sub, bound in _positions(cur):
            if sub in _LEAVES or sub.fv or (sub.fd & bound):
                continue
            for cand in _candidates(sub, fuel):
                new = replace_at(cur, path, cand)
                if new == cur:
                    continue
                checks += 1
                if fails(new):
                    cur, progress = new, True
                    break
            if progress or checks >= max_checks:
                break
    return cur
