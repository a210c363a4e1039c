"""S-expression concrete syntax: tokenizer, parser, program loader, printer.

The grammar is documented in ``GRAMMAR.md`` at the repository root.
Sugar (``com``, ``notf``) is expanded while parsing, so the core never sees it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .substitution import dim_subst, term_subst, term_subst_many
from .syntax import (
    BASE, BOOL, CIRCLE, FALSE, ONE, SBOOL, TRUE, ZERO, App, Base, Bool, CElim, Circle, Coe,
    Const, DApp, DBind, DLam, DName, Dim, FalseTm, Fst, Hcom, Id, If, IaIn, IaOut, IaTy, Lam,
    Loop, NotEl, NotTy, Pair, Pi, SBool, Sigma, Snd, TBind, Term, TrueTm, Var, free_dims,
    is_reserved,
)

ATOMS = {"bool": BOOL, "sbool": SBOOL, "true": TRUE, "false": FALSE, "circle": CIRCLE, "base": BASE}
HEADS = {
    "lam", "app", "pair", "fst", "snd", "dlam", "dapp", "pi", "sigma", "id", "loop", "not-ty",
    "not-el", "if", "circ-elim", "coe", "hcom", "com", "notf", "ia", "ia-in", "ia-out",
    "exts", "tube", "def", "eval", "check", "assert-canon",
}
KEYWORDS = frozenset(ATOMS) | HEADS
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_'\-]*\Z")


class ParseError(ValueError):
    """A syntax error with a 1-based source position.  ``code`` names the error kind."""

    def __init__(self, msg: str, line: int = 0, col: int = 0, code: str = "SyntaxError"):
        self.msg, self.line, self.col, self.code = msg, line, col, code
        super().__init__(f"{line}:{col}: {code}: {msg}" if line else f"{code}: {msg}")


# ----------------------------------------------------------------------------
# Reader


@dataclass
class Atom:
    text: str
    line: int
    col: int


@dataclass
class SList:
    items: list
    line: int
    col: int


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def read_all(src: str) -> list:
    stack = [SList([], 1, 1)]
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        tok = m.group(0)
        if tok == "(":
            stack.append(SList([], line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].items.append(done)
        elif not tok[0].isspace() and tok[0] != ";":
            stack[-1].items.append(Atom(tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    if len(stack) != 1:
        open_ = stack[-1]
        raise ParseError("unclosed '('", open_.line, open_.col)
    return stack[0].items


# ----------------------------------------------------------------------------
# Parser


def _ident(node, what: str) -> str:
    if not isinstance(node, Atom):
        raise ParseError(f"expected {what}, got a list", node.line, node.col)
    name = node.text
    if name in KEYWORDS or name in ("0", "1") or not _IDENT.match(name):
        if is_reserved(name):
            raise ParseError(f"reserved name {name!r}", node.line, node.col, "ReservedName")
        raise ParseError(f"expected {what}, got {name!r}", node.line, node.col)
    return name


def _dim(node) -> Dim:
    if isinstance(node, Atom) and node.text in ("0", "1"):
        return ZERO if node.text == "0" else ONE
    return DName(_ident(node, "a dimension"))


_ARITY = {
    "lam": 2, "app": 2, "pair": 2, "fst": 1, "snd": 1, "dlam": 2, "dapp": 2, "pi": 3,
    "sigma": 3, "id": 4, "loop": 1, "not-ty": 1, "not-el": 2, "if": 5, "circ-elim": 6,
    "coe": 5, "notf": 1, "ia": 5, "ia-in": 3, "ia-out": 3,
}


def parse_term(node) -> Term:
    if isinstance(node, Atom):
        if node.text in ATOMS:
            return ATOMS[node.text]
        return Var(_ident(node, "a term"))
    if not node.items:
        raise ParseError("empty form", node.line, node.col)
    head = node.items[0]
    if not isinstance(head, Atom):
        raise ParseError("form head must be a keyword", node.line, node.col)
    h = head.text
    args = node.items[1:]
    if h in _ARITY and len(args) != _ARITY[h]:
        raise ParseError(
            f"{h} takes {_ARITY[h]} arguments, got {len(args)}", node.line, node.col, "ArityError"
        )
    p = parse_term
    if h == "lam":
        return Lam(TBind(_ident(args[0], "a variable"), p(args[1])))
    if h == "app":
        return App(p(args[0]), p(args[1]))
    if h == "pair":
        return Pair(p(args[0]), p(args[1]))
    if h == "fst":
        return Fst(p(args[0]))
    if h == "snd":
        return Snd(p(args[0]))
    if h == "dlam":
        return DLam(DBind(_ident(args[0], "a dimension name"), p(args[1])))
    if h == "dapp":
        return DApp(p(args[0]), _dim(args[1]))
    if h == "pi":
        return Pi(p(args[1]), TBind(_ident(args[0], "a variable"), p(args[2])))
    if h == "sigma":
        return Sigma(p(args[1]), TBind(_ident(args[0], "a variable"), p(args[2])))
    if h == "id":
        return Id(DBind(_ident(args[0], "a dimension name"), p(args[1])), p(args[2]), p(args[3]))
    if h == "loop":
        return Loop(_dim(args[0]))
    if h == "not-ty":
        return NotTy(_dim(args[0]))
    if h == "not-el":
        return NotEl(_dim(args[0]), p(args[1]))
    if h == "if":
        return If(TBind(_ident(args[0], "a variable"), p(args[1])), p(args[2]), p(args[3]), p(args[4]))
    if h == "circ-elim":
        motive = TBind(_ident(args[0], "a variable"), p(args[1]))
        return CElim(motive, p(args[2]), p(args[3]), DBind(_ident(args[4], "a dimension name"), p(args[5])))
    if h == "coe":
        line = DBind(_ident(args[0], "a dimension name"), p(args[1]))
        return Coe(line, _dim(args[2]), _dim(args[3]), p(args[4]))
    if h == "notf":
        from .opsem import notf

        return notf(p(args[0]))
    if h == "ia":
        return IaTy(_dim(args[0]), p(args[1]), p(args[2]), p(args[3]), p(args[4]))
    if h == "ia-in":
        return IaIn(_dim(args[0]), p(args[1]), p(args[2]))
    if h == "ia-out":
        return IaOut(_dim(args[0]), p(args[1]), p(args[2]))
    if h == "hcom":
        if len(args) < 5:
            raise ParseError("hcom needs A (exts ..) r r' M and tubes", node.line, node.col, "ArityError")
        ty = p(args[0])
        extents, tubes = _box(node, args[1], args[4:])
        return Hcom(extents, ty, _dim(args[2]), _dim(args[3]), p(args[4]), tubes)
    if h == "com":
        if len(args) < 6:
            raise ParseError("com needs x A (exts ..) r r' M and tubes", node.line, node.col, "ArityError")
        from .opsem import elaborate_com

        line = DBind(_ident(args[0], "a dimension name"), p(args[1]))
        extents, tubes = _box(node, args[2], args[5:])
        return elaborate_com(extents, line, _dim(args[3]), _dim(args[4]), p(args[5]), tubes)
    raise ParseError(f"unknown form {h!r}", head.line, head.col, "UnknownForm")


def _box(node, exts_node, rest) -> tuple:
    """Parse ``(exts r..)`` and the tube list following the cap (``rest[0]`` is the cap)."""
    if not (isinstance(exts_node, SList) and exts_node.items and isinstance(exts_node.items[0], Atom)
            and exts_node.items[0].text == "exts"):
        where = exts_node
        raise ParseError("expected (exts r ..)", where.line, where.col)
    extents = tuple(_dim(d) for d in exts_node.items[1:])
    if not extents:
        raise ParseError("extent list is empty", exts_node.line, exts_node.col, "EmptyExtents")
    tube_nodes = rest[1:]
    if len(tube_nodes) != len(extents):
        raise ParseError(
            f"{len(extents)} extents need {len(extents)} tubes, got {len(tube_nodes)}",
            node.line, node.col, "ArityError",
        )
    tubes = []
    for tn in tube_nodes:
        if not (isinstance(tn, SList) and len(tn.items) == 4 and isinstance(tn.items[0], Atom)
                and tn.items[0].text == "tube"):
            raise ParseError("expected (tube y N0 N1)", tn.line, tn.col)
        y = _ident(tn.items[1], "a dimension name")
        tubes.append((DBind(y, parse_term(tn.items[2])), DBind(y, parse_term(tn.items[3]))))
    return extents, tuple(tubes)


def parse(src: str) -> Term:
    """Parse a single term."""
    nodes = read_all(src)
    if len(nodes) != 1:
        raise ParseError(f"expected exactly one term, found {len(nodes)}")
    return parse_term(nodes[0])


@dataclass(frozen=True)
class Directive:
    kind: str  # eval | check | assert-canon
    term: Term
    expected: Optional[Term]
    line: int


@dataclass
class SurfaceProgram:
    definitions: list = field(default_factory=list)  # (name, term) with earlier defs expanded
    directives: list = field(default_factory=list)


def parse_program(src: str) -> SurfaceProgram:
    prog = SurfaceProgram()
    env: dict = {}
    for node in read_all(src):
        if not (isinstance(node, SList) and node.items and isinstance(node.items[0], Atom)):
            raise ParseError("top level accepts only (def ..), (eval ..), (check ..), (assert-canon ..)",
                             node.line, node.col)
        h = node.items[0].text
        args = node.items[1:]
        want = {"def": 2, "eval": 1, "check": 1, "assert-canon": 2}.get(h)
        if want is None:
            raise ParseError(f"unknown top-level form {h!r}", node.line, node.col, "UnknownForm")
        if len(args) != want:
            raise ParseError(f"{h} takes {want} arguments", node.line, node.col, "ArityError")
        if h == "def":
            name = _ident(args[0], "a definition name")
            if name in env:
                raise ParseError(f"duplicate definition {name!r}", node.line, node.col, "DuplicateDefinition")
            body = term_subst_many(parse_term(args[1]), env)
            env[name] = body
            prog.definitions.append((name, body))
            continue
        term = term_subst_many(parse_term(args[0]), env)
        expected = term_subst_many(parse_term(args[1]), env) if h == "assert-canon" else None
        prog.directives.append(Directive(h, term, expected, node.line))
    return prog


# ----------------------------------------------------------------------------
# Printer


def _readable(avoid, base: str) -> str:
    if base not in avoid and not is_reserved(base) and base not in KEYWORDS:
        return base
    k = 0
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def _open_d(b: DBind, base="x") -> tuple:
    if not is_reserved(b.name):
        return b.name, b.body
    new = _readable(b.body.fd, base)
    return new, dim_subst(b.body, DName(new), b.name)


def _open_t(b: TBind, base="v") -> tuple:
    if not is_reserved(b.var):
        return b.var, b.body
    new = _readable(b.body.fv, base)
    return new, term_subst(b.body, Var(new), b.var)


def _shared_tube(t0: DBind, t1: DBind) -> tuple:
    y0, n0 = _open_d(t0, "y")
    y1, n1 = _open_d(t1, "y")
    if y0 == y1:
        return y0, n0, n1
    if y0 not in (n1.fd - {y1}):
        return y0, n0, dim_subst(n1, DName(y0), y1)
    if y1 not in (n0.fd - {y0}):
        return y1, dim_subst(n0, DName(y1), y0), n1
    y = _readable(n0.fd | n1.fd, "y")
    return y, dim_subst(n0, DName(y), y0), dim_subst(n1, DName(y), y1)


def show_dim(d: Dim) -> str:
    return str(d.value) if isinstance(d, Const) else d.name


def _is_notf(t: Term) -> bool:
    return (
        isinstance(t, If) and isinstance(t.motive.body, Bool) and isinstance(t.tcase, FalseTm)
        and isinstance(t.fcase, TrueTm)
    )


def show(t: Term) -> str:
    """Print ``t``; ``parse(show(t))`` is alpha-equivalent to ``t``."""
    out: list = []
    _emit(t, out)
    return "".join(out)


def _emit(t: Term, out: list) -> None:
    w = out.append
    e = lambda s: _emit(s, out)  # noqa: E731
    sd = show_dim
    if isinstance(t, Var):
        w(t.name)
    elif isinstance(t, (Bool, SBool, TrueTm, FalseTm, Circle, Base)):
        w({Bool: "bool", SBool: "sbool", TrueTm: "true", FalseTm: "false", Circle: "circle",
           Base: "base"}[type(t)])
    elif isinstance(t, Lam):
        a, body = _open_t(t.body, "a")
        w(f"(lam {a} "); e(body); w(")")
    elif isinstance(t, App):
        w("(app "); e(t.fn); w(" "); e(t.arg); w(")")
    elif isinstance(t, Pair):
        w("(pair "); e(t.fst); w(" "); e(t.snd); w(")")
    elif isinstance(t, Fst):
        w("(fst "); e(t.arg); w(")")
    elif isinstance(t, Snd):
        w("(snd "); e(t.arg); w(")")
    elif isinstance(t, DLam):
        x, body = _open_d(t.body)
        w(f"(dlam {x} "); e(body); w(")")
    elif isinstance(t, DApp):
        w("(dapp "); e(t.fn); w(f" {sd(t.r)})")
    elif isinstance(t, (Pi, Sigma)):
        a, body = _open_t(t.cod if isinstance(t, Pi) else t.snd_ty, "a")
        head = "pi" if isinstance(t, Pi) else "sigma"
        w(f"({head} {a} "); e(t.dom if isinstance(t, Pi) else t.fst_ty); w(" "); e(body); w(")")
    elif isinstance(t, Id):
        x, body = _open_d(t.line)
        w(f"(id {x} "); e(body); w(" "); e(t.left); w(" "); e(t.right); w(")")
    elif isinstance(t, Loop):
        w(f"(loop {sd(t.r)})")
    elif isinstance(t, NotTy):
        w(f"(not-ty {sd(t.r)})")
    elif isinstance(t, NotEl):
        w(f"(not-el {sd(t.r)} "); e(t.arg); w(")")
    elif isinstance(t, If):
        if _is_notf(t):
            w("(notf "); e(t.scrut); w(")")
            return
        a, mot = _open_t(t.motive, "a")
        w(f"(if {a} "); e(mot); w(" "); e(t.scrut); w(" "); e(t.tcase); w(" "); e(t.fcase); w(")")
    elif isinstance(t, CElim):
        a, mot = _open_t(t.motive, "a")
        x, loop = _open_d(t.loop_case)
        w(f"(circ-elim {a} "); e(mot); w(" "); e(t.scrut); w(" "); e(t.base_case)
        w(f" {x} "); e(loop); w(")")
    elif isinstance(t, Coe):
        x, ty = _open_d(t.line)
        w(f"(coe {x} "); e(ty); w(f" {sd(t.src)} {sd(t.dst)} "); e(t.arg); w(")")
    elif isinstance(t, Hcom):
        w("(hcom "); e(t.ty)
        w(" (exts " + " ".join(sd(r) for r in t.extents) + ")")
        w(f" {sd(t.src)} {sd(t.dst)} "); e(t.cap)
        for t0, t1 in t.tubes:
            y, n0, n1 = _shared_tube(t0, t1)
            w(f" (tube {y} "); e(n0); w(" "); e(n1); w(")")
        w(")")
    elif isinstance(t, IaTy):
        w(f"(ia {sd(t.r)} "); e(t.a_ty); w(" "); e(t.b_ty); w(" "); e(t.fwd); w(" "); e(t.bwd); w(")")
    elif isinstance(t, IaIn):
        w(f"(ia-in {sd(t.r)} "); e(t.arg); w(" "); e(t.fwd); w(")")
    elif isinstance(t, IaOut):
        w(f"(ia-out {sd(t.r)} "); e(t.arg); w(" "); e(t.bwd); w(")")
    else:
        raise TypeError(f"cannot print {t!r}")


def parse_dim(src: str) -> Dim:
    nodes = read_all(src)
    if len(nodes) != 1:
        raise ParseError("expected one dimension")
    return _dim(nodes[0])
