"""Dimension equation sets, satisfaction by total substitutions, and the
three-way classification used to discharge restricted judgments."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Union

from .substitution import SubstError, TotalDimSubst
from .syntax import ONE, ZERO, Const, DName, Dim, dim


class Unclassifiable(ValueError):
    """The equation set lies outside the family the classifier decides."""


def _dkey(d: Dim):
    return (0, d.value) if isinstance(d, Const) else (1, d.name)


def _equation(r, r2) -> tuple:
    a, b = dim(r), dim(r2)
    return (a, b) if _dkey(a) <= _dkey(b) else (b, a)


@dataclass(frozen=True)
class EqSet:
    """An unordered set of unordered equations ``r = r'``."""

    eqs: frozenset = frozenset()

    @classmethod
    def of(cls, *pairs) -> "EqSet":
        return cls(frozenset(_equation(a, b) for a, b in pairs))

    def add(self, r, r2) -> "EqSet":
        return EqSet(self.eqs | {_equation(r, r2)})

    def __iter__(self):
        return iter(sorted(self.eqs, key=lambda e: (_dkey(e[0]), _dkey(e[1]))))

    def __len__(self):
        return len(self.eqs)

    @property
    def names(self) -> frozenset:
        return frozenset(d.name for e in self.eqs for d in e if isinstance(d, DName))

    def rename(self, mapping: dict) -> "EqSet":
        def f(d):
            return DName(mapping.get(d.name, d.name)) if isinstance(d, DName) else d

        return EqSet.of(*((f(a), f(b)) for a, b in self.eqs))

    def __str__(self):
        def s(d):
            return str(d.value) if isinstance(d, Const) else d.name

        return "(" + ", ".join(f"{s(a)}={s(b)}" for a, b in self) + ")"


def satisfies(psi: TotalDimSubst, xi: EqSet) -> bool:
    stray = xi.names - psi.source
    if stray:
        raise SubstError(f"equation names {sorted(stray)} outside substitution source")
    return all(psi(a) == psi(b) for a, b in xi.eqs)


# ----------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class AllSatisfied:
    pass


@dataclass(frozen=True)
class NoneSatisfied:
    pass


@dataclass(frozen=True)
class ReduceBy:
    """Satisfying substitutions are exactly those factoring through ``assignments``.

    ``residual`` records that reflexive equations were dropped on the way.
    """

    assignments: tuple  # ((name, Const), ...) sorted by name, length 1 or 2
    residual: bool = False


RestrictionClass = Union[AllSatisfied, NoneSatisfied, ReduceBy]

MAX_ASSIGNMENTS = 2


def classify(xi: EqSet, psi: Optional[Iterable[str]] = None) -> RestrictionClass:
    """Decide whether ``xi`` holds always, never, or after fixing one or two names."""
    if psi is not None:
        stray = xi.names - frozenset(psi)
        if stray:
            raise SubstError(f"equation names {sorted(stray)} outside the context")
    residual = False
    forced: dict = {}
    inconsistent = False
    name_eqs = []
    for a, b in xi:
        if a == b:
            residual = True
            continue
        if isinstance(a, Const) and isinstance(b, Const):
            inconsistent = True
        elif isinstance(a, Const):
            if forced.setdefault(b.name, a) != a:
                inconsistent = True
        else:
            name_eqs.append((a, b))
    if inconsistent:
        return NoneSatisfied()
    if name_eqs:
        a, b = name_eqs[0]
        raise Unclassifiable(f"equation {a.name}={b.name} between distinct names")
    if not forced:
        return AllSatisfied()
    if len(forced) > MAX_ASSIGNMENTS:
        raise Unclassifiable(f"{len(forced)} names fixed at once")
    return ReduceBy(tuple(sorted(forced.items())), residual)


def reduction_subst(cls: ReduceBy) -> dict:
    return dict(cls.assignments)


def kan_family(names=("x", "y")) -> list:
    """Equation sets shaped like the Kan conditions: one or two equations ``eps = r``.

    Returned up to renaming of names, permutation and duplication.
    """
    dims = [ZERO, ONE] + [DName(n) for n in names]
    seen = {}
    for k in (1, 2):
        for lhs in product((ZERO, ONE), repeat=k):
            for rhs in product(dims, repeat=k):
                xi = EqSet.of(*zip(lhs, rhs))
                seen.setdefault(_canon(xi, names), xi)
    return [seen[k] for k in sorted(seen, key=repr)]


def _canon(xi: EqSet, names) -> tuple:
    from itertools import permutations

    keys = []
    for perm in permutations(names):
        ren = xi.rename(dict(zip(names, perm)))
        keys.append(tuple(sorted((repr(a), repr(b)) for a, b in ren.eqs)))
    return min(keys)
