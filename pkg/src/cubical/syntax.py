"""Dimension terms, the term AST, free names and alpha-equivalence.

Binders are named.  Every operation that could observe a bound name
(equality, hashing for caches, printing of traces) goes through
:func:`alpha_key`, so two alpha-equivalent terms are never told apart.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

# Names starting with this character cannot be written in surface syntax.
RESERVED_PREFIX = "%"


class SyntaxInvariantError(ValueError):
    """A term was constructed in violation of the grammar."""


# ----------------------------------------------------------------------------
# Dimensions


class Dim:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Dim):
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise SyntaxInvariantError(f"dimension constant must be 0 or 1, got {self.value!r}")

    def __repr__(self):
        return str(self.value)


@dataclass(frozen=True)
class DName(Dim):
    name: str

    def __repr__(self):
        return self.name


ZERO = Const(0)
ONE = Const(1)


def dim(d: Union[Dim, int, str]) -> Dim:
    """Coerce ``0``, ``1`` or a name into a :class:`Dim`."""
    if isinstance(d, Dim):
        return d
    if isinstance(d, int):
        return Const(d)
    return DName(d)


def is_const(d: Dim) -> bool:
    return isinstance(d, Const)


def flip(d: Const) -> Const:
    return ONE if d.value == 0 else ZERO


def dim_names(dims: Iterable[Dim]) -> frozenset:
    return frozenset(d.name for d in dims if isinstance(d, DName))


# ----------------------------------------------------------------------------
# Terms


class Term:
    """Base class of all term formers.  Subclasses are frozen dataclasses."""

    __slots__ = ()

    @cached_property
    def fd(self) -> frozenset:
        return _free_dims_fields(self)

    @cached_property
    def fv(self) -> frozenset:
        return _free_vars_fields(self)

    @cached_property
    def size(self) -> int:
        return 1 + sum(_size(v) for v in field_values(self))

    def __str__(self):
        from .surface import show

        return show(self)


@dataclass(frozen=True)
class TBind:
    """A term binder ``a.body``."""

    var: str
    body: Term


@dataclass(frozen=True)
class DBind:
    """A dimension binder ``x.body``."""

    name: str
    body: Term


Tube = tuple  # (DBind, DBind): the 0- and 1-sides of one extent


def _term(cls):
    # non-slotted so that cached_property can store free-name sets
    return dataclass(frozen=True, repr=True)(cls)


@_term
class Var(Term):
    name: str


# types


@_term
class Pi(Term):
    dom: Term
    cod: TBind


@_term
class Sigma(Term):
    fst_ty: Term
    snd_ty: TBind


@_term
class Id(Term):
    line: DBind
    left: Term
    right: Term


@_term
class Bool(Term):
    pass


@_term
class SBool(Term):
    pass


@_term
class NotTy(Term):
    r: Dim


@_term
class Circle(Term):
    pass


# functions, pairs, paths


@_term
class Lam(Term):
    body: TBind


@_term
class App(Term):
    fn: Term
    arg: Term


@_term
class Pair(Term):
    fst: Term
    snd: Term


@_term
class Fst(Term):
    arg: Term


@_term
class Snd(Term):
    arg: Term


@_term
class DLam(Term):
    body: DBind


@_term
class DApp(Term):
    fn: Term
    r: Dim


# booleans and not


@_term
class TrueTm(Term):
    pass


@_term
class FalseTm(Term):
    pass


@_term
class If(Term):
    motive: TBind
    scrut: Term
    tcase: Term
    fcase: Term


@_term
class NotEl(Term):
    r: Dim
    arg: Term


# circle


@_term
class Base(Term):
    pass


@_term
class Loop(Term):
    r: Dim


@_term
class CElim(Term):
    motive: TBind
    scrut: Term
    base_case: Term
    loop_case: DBind


# Kan operations


@_term
class Coe(Term):
    line: DBind
    src: Dim
    dst: Dim
    arg: Term


@_term
class Hcom(Term):
    extents: tuple
    ty: Term
    src: Dim
    dst: Dim
    cap: Term
    tubes: tuple

    def __post_init__(self):
        if len(self.extents) < 1:
            raise SyntaxInvariantError("hcom needs at least one extent")
        if len(self.tubes) != len(self.extents):
            raise SyntaxInvariantError(
                f"hcom with {len(self.extents)} extents needs {len(self.extents)} tube pairs, "
                f"got {len(self.tubes)}"
            )
        for pair in self.tubes:
            if len(pair) != 2 or not all(isinstance(t, DBind) for t in pair):
                raise SyntaxInvariantError("each hcom tube is a pair of dimension binders")


# isomorphism-univalence


@_term
class IaTy(Term):
    r: Dim
    a_ty: Term
    b_ty: Term
    fwd: Term
    bwd: Term


@_term
class IaIn(Term):
    r: Dim
    arg: Term
    fwd: Term


@_term
class IaOut(Term):
    r: Dim
    arg: Term
    bwd: Term


BOOL = Bool()
SBOOL = SBool()
CIRCLE = Circle()
TRUE = TrueTm()
FALSE = FalseTm()
BASE = Base()

TERM_CLASSES = (
    Var, Pi, Sigma, Id, Bool, SBool, NotTy, Circle, Lam, App, Pair, Fst, Snd, DLam, DApp,
    TrueTm, FalseTm, If, NotEl, Base, Loop, CElim, Coe, Hcom, IaTy, IaIn, IaOut,
)

_FIELDS: dict = {}


def field_names(cls) -> tuple:
    names = _FIELDS.get(cls)
    if names is None:
        names = _FIELDS[cls] = tuple(f.name for f in dataclasses.fields(cls))
    return names


def field_values(t: Term) -> Iterator:
    for name in field_names(type(t)):
        yield getattr(t, name)


def rebuild(t: Term, values) -> Term:
    return type(t)(*values)


def make_tube(y: str, n0: Term, n1: Term) -> tuple:
    """Tube pair sharing the surface binder ``y``."""
    return (DBind(y, n0), DBind(y, n1))


# ----------------------------------------------------------------------------
# Free names


def _fd(v) -> frozenset:
    if isinstance(v, Term):
        return v.fd
    if isinstance(v, DName):
        return frozenset((v.name,))
    if isinstance(v, Const):
        return frozenset()
    if isinstance(v, DBind):
        return v.body.fd - {v.name}
    if isinstance(v, TBind):
        return v.body.fd
    if isinstance(v, tuple):
        out = frozenset()
        for x in v:
            out |= _fd(x)
        return out
    return frozenset()


def _free_dims_fields(t: Term) -> frozenset:
    out = frozenset()
    for v in field_values(t):
        out |= _fd(v)
    return out


def _fv(v) -> frozenset:
    if isinstance(v, Term):
        return v.fv
    if isinstance(v, TBind):
        return v.body.fv - {v.var}
    if isinstance(v, DBind):
        return v.body.fv
    if isinstance(v, tuple):
        out = frozenset()
        for x in v:
            out |= _fv(x)
        return out
    return frozenset()


def _free_vars_fields(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out = frozenset()
    for v in field_values(t):
        out |= _fv(v)
    return out


def _size(v) -> int:
    if isinstance(v, Term):
        return v.size
    if isinstance(v, (TBind, DBind)):
        return v.body.size
    if isinstance(v, tuple):
        return sum(_size(x) for x in v)
    return 0


def free_dims(t) -> frozenset:
    """Dimension names occurring free in ``t`` (a term, binder, dim or tuple)."""
    return _fd(t)


def free_vars(t) -> frozenset:
    return _fv(t)


# ----------------------------------------------------------------------------
# Fresh names


def _fresh(avoid) -> str:
    k = 0
    while True:
        cand = f"{RESERVED_PREFIX}{k}"
        if cand not in avoid:
            return cand
        k += 1


def fresh_name(avoid: Iterable[str]) -> str:
    """Smallest reserved dimension name not in ``avoid``.

    Pure and deterministic; user-written names never collide with the result.
    """
    return _fresh(frozenset(avoid))


def fresh_var(avoid: Iterable[str]) -> str:
    """Reserved term variable, same scheme as :func:`fresh_name`."""
    return _fresh(frozenset(avoid))


def is_reserved(name: str) -> bool:
    return name.startswith(RESERVED_PREFIX)


# ----------------------------------------------------------------------------
# Alpha-equivalence


def alpha_key(t, venv: dict | None = None, denv: dict | None = None):
    """A hashable key such that two terms have equal keys iff they are alpha-equivalent.

    Bound names become binder depths; free names stay literal.
    """
    return _key(t, venv or {}, denv or {}, 0)


def _dkey(d: Dim, denv):
    if isinstance(d, Const):
        return d.value
    lvl = denv.get(d.name)
    return ("b", lvl) if lvl is not None else ("f", d.name)


def _key(v, venv, denv, depth):
    if isinstance(v, Var):
        lvl = venv.get(v.name)
        return ("v", lvl) if lvl is not None else ("fv", v.name)
    if isinstance(v, Term):
        return (type(v).__name__,) + tuple(_key(x, venv, denv, depth) for x in field_values(v))
    if isinstance(v, Dim):
        return _dkey(v, denv)
    if isinstance(v, TBind):
        env = dict(venv)
        env[v.var] = depth
        return ("tb", _key(v.body, env, denv, depth + 1))
    if isinstance(v, DBind):
        env = dict(denv)
        env[v.name] = depth
        return ("db", _key(v.body, venv, env, depth + 1))
    if isinstance(v, tuple):
        return tuple(_key(x, venv, denv, depth) for x in v)
    raise TypeError(f"not syntax: {v!r}")


def alpha_eq(t1, t2) -> bool:
    """True iff ``t1`` and ``t2`` differ only in the names of bound variables."""
    if t1 is t2:
        return True
    return alpha_key(t1) == alpha_key(t2)


def subterms(t: Term) -> Iterator[Term]:
    """All subterms, including those under binders, outermost first."""
    stack = [t]
    while stack:
        cur = stack.pop()
        yield cur
        for v in reversed(tuple(_children(cur))):
            stack.append(v)


def _children(t: Term) -> Iterator[Term]:
    for v in field_values(t):
        yield from _terms_in(v)


def _terms_in(v) -> Iterator[Term]:
    if isinstance(v, Term):
        yield v
    elif isinstance(v, (TBind, DBind)):
        yield v.body
    elif isinstance(v, tuple):
        for x in v:
            yield from _terms_in(x)
