"""Brute-force restriction oracle: enumerate every substitution into a small target."""

from itertools import product

from cubical.restriction import AllSatisfied, NoneSatisfied, ReduceBy
from cubical.substitution import TotalDimSubst
from cubical.syntax import Const, DName

TARGET = ("u", "v")


def all_substs(names):
    names = sorted(names)
    images = [0, 1, *TARGET]
    for combo in product(images, repeat=len(names)):
        yield TotalDimSubst(names, TARGET, dict(zip(names, combo)))


def holds(psi, xi) -> bool:
    return all(psi(a) == psi(b) for a, b in xi.eqs)


def agrees(cls, xi, names) -> bool:
    for psi in all_substs(names):
        sat = holds(psi, xi)
        if isinstance(cls, AllSatisfied):
            want = True
        elif isinstance(cls, NoneSatisfied):
            want = False
        else:
            assert isinstance(cls, ReduceBy)
            want = all(psi(DName(n)) == c for n, c in cls.assignments)
            assert all(isinstance(c, Const) for _, c in cls.assignments)
        if sat != want:
            return False
    return True
