"""Canonicity verdicts and observational equality at bool."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from ..opsem import DEFAULT_FUEL, Trace, evaluate
from ..substitution import TotalDimSubst, apply_total
from ..syntax import BASE, FALSE, TRUE, Term, free_dims

_CANON = {TRUE: "True", FALSE: "False", BASE: "Base"}


@dataclass(frozen=True)
class Canon:
    value: str  # True | False | Base

    def __post_init__(self):
        if self.value not in ("True", "False", "Base"):
            raise ValueError(f"not a canonical constructor: {self.value}")

    def __str__(self):
        return f"Canon({self.value})"


@dataclass(frozen=True)
class NonCanonical:
    value: Term

    def __str__(self):
        return f"NonCanonical({self.value})"


@dataclass(frozen=True)
class StuckOrFuel:
    trace: Trace

    def __str__(self):
        return f"StuckOrFuel({self.trace.lines()[-1]})"


CanonVerdict = Union[Canon, NonCanonical, StuckOrFuel]


def check_canonicity(t: Term, fuel: int = DEFAULT_FUEL, max_trace_len: int = 64) -> CanonVerdict:
    tr = evaluate(t, fuel, keep=False)
    if tr.outcome == "value":
        tag = _CANON.get(tr.final)
        return Canon(tag) if tag else NonCanonical(tr.final)
    # rerun keeping the tail of the trace for the report
    return StuckOrFuel(evaluate(t, fuel, max_len=max_trace_len))


class FuelExhausted(RuntimeError):
    def __init__(self, term: Term, fuel: int):
        self.term = term
        self.fuel = fuel
        super().__init__(f"evaluation ran out of fuel ({fuel} steps): {term}")


def endpoint_substs(psi) -> list:
    """All total substitutions sending the names of ``psi`` to 0 or 1."""
    names = sorted(psi)
    return [
        TotalDimSubst(frozenset(names), frozenset(), dict(zip(names, bits)))
        for bits in itertools.product((0, 1), repeat=len(names))
    ]


def _bool_value(t: Term, fuel: int):
    tr = evaluate(t, fuel, keep=False)
    if tr.outcome == "fuel":
        raise FuelExhausted(t, fuel)
    if tr.outcome == "value" and tr.final in (TRUE, FALSE):
        return tr.final
    return None


def obs_equal_bool(t1: Term, t2: Term, psi=None, fuel: int = DEFAULT_FUEL) -> bool:
    """Both terms evaluate to the same boolean under every endpoint substitution.

    ``psi`` defaults to the free names of the two terms.  Raises
    :class:`FuelExhausted` when either side runs out of fuel.
    """
    names = free_dims(t1) | free_dims(t2)
    if psi is None:
        psi = names
    elif not names <= set(psi):
        raise ValueError(f"free names {sorted(names - set(psi))} outside the context")
    for s in endpoint_substs(psi):
        v1 = _bool_value(apply_total(t1, s), fuel)
        v2 = _bool_value(apply_total(t2, s), fuel)
        if v1 is None or v1 is not v2:
            return False
    return True
