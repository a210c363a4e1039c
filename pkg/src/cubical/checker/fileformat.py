"""Derivation files: JSON trees whose syntax-valued fields are s-expression strings.

Version 1 layout::

    {"format": 1, "derivation": NODE}
    NODE = {"rule": ID, "bindings": {NAME: STRING}, "conclusion": STRING, "premises": [NODE]}
         | {"assume": NAME, "conclusion": STRING}
"""

from __future__ import annotations

import json

from ..restriction import EqSet
from ..surface import (
    Atom, ParseError, SList, _dim, _ident, parse_term, read_all, show, show_dim,
)
from ..syntax import Const
from .judgment import CtxWF, ElemEq, Judgment, TypeEq
from .rules import AMBIENT, CATALOG
from .validate import Assumption, Derivation

FORMAT_VERSION = 1


class DerivationFormatError(ValueError):
    pass


def _one(src: str):
    nodes = read_all(src)
    if len(nodes) != 1:
        raise ParseError(f"expected one form, found {len(nodes)}")
    return nodes[0]


def _form(node, head: str) -> list:
    if not (isinstance(node, SList) and node.items and isinstance(node.items[0], Atom)
            and node.items[0].text == head):
        line, col = node.line, node.col
        raise ParseError(f"expected ({head} ..)", line, col)
    return node.items[1:]


def _pairs(items, what) -> list:
    out = []
    for it in items:
        if not (isinstance(it, SList) and len(it.items) == 2):
            raise ParseError(f"expected a ({what}) pair", it.line, it.col)
        out.append(it.items)
    return out


# ----------------------------------------------------------------------------
# Reading


def _dims(node) -> frozenset:
    return frozenset(_ident(n, "a dimension name") for n in _form(node, "dims"))


def _eqs(node) -> EqSet:
    eqs = []
    for it in _form(node, "eqs"):
        parts = _form(it, "=")
        if len(parts) != 2:
            raise ParseError("expected (= r r')", it.line, it.col)
        eqs.append((_dim(parts[0]), _dim(parts[1])))
    return EqSet.of(*eqs)


def _ctx(node) -> tuple:
    return tuple((_ident(a, "a variable"), parse_term(t)) for a, t in _pairs(_form(node, "ctx"), "a A"))


def _body(node):
    if isinstance(node, SList) and node.items and isinstance(node.items[0], Atom):
        h = node.items[0].text
        args = node.items[1:]
        if h == "teq" and len(args) == 2:
            return TypeEq(parse_term(args[0]), parse_term(args[1]))
        if h == "eq" and len(args) == 3:
            return ElemEq(parse_term(args[0]), parse_term(args[1]), parse_term(args[2]))
        if h == "ctx-wf" and not args:
            return CtxWF()
    raise ParseError("expected (teq A B), (eq M N A) or (ctx-wf)", node.line, node.col)


def read_judgment(src: str) -> Judgment:
    parts = _form(_one(src), "judg")
    if len(parts) != 4:
        raise ParseError("expected (judg (dims ..) (eqs ..) (ctx ..) BODY)")
    return Judgment(_dims(parts[0]), _body(parts[3]), _ctx(parts[2]), _eqs(parts[1]))


def read_value(sort: str, src: str):
    node = _one(src)
    if sort == "term":
        return parse_term(node)
    if sort == "dim":
        return _dim(node)
    if sort == "eps":
        d = _dim(node)
        if not isinstance(d, Const):
            raise ParseError("expected 0 or 1", node.line, node.col)
        return d
    if sort in ("dname", "var"):
        return _ident(node, "a name")
    if sort == "extents":
        items = _form(node, "exts")
        if not items:
            raise ParseError("extent list is empty", node.line, node.col, "EmptyExtents")
        return tuple(_dim(n) for n in items)
    if sort == "tubes":
        return tuple((parse_term(a), parse_term(b)) for a, b in _pairs(_form(node, "tubes"), "N0 N1"))
    if sort == "gamma":
        return _ctx(node)
    if sort == "dims":
        return _dims(node)
    if sort == "judg":
        return _body(node)
    if sort == "eqs":
        return _eqs(node)
    if sort == "subst":
        return tuple((_ident(x, "a dimension name"), _dim(r)) for x, r in _pairs(_form(node, "subst"), "x r"))
    if sort == "index":
        if isinstance(node, Atom) and node.text.isdigit():
            return int(node.text)
        raise ParseError("expected a positive index", node.line, node.col)
    raise ValueError(f"unknown sort {sort}")


def _sort_of(rule: str, name: str) -> str:
    if name in AMBIENT:
        return AMBIENT[name]
    r = CATALOG.get(rule)
    if r is None or name not in r.sig:
        # unknown names are still parsed as terms so the validator can report them
        return "term"
    return r.sig[name].sort


def node_from_json(obj) -> object:
    if not isinstance(obj, dict) or "conclusion" not in obj:
        raise DerivationFormatError("each node needs a conclusion")
    concl = read_judgment(obj["conclusion"])
    if "assume" in obj:
        return Assumption(str(obj["assume"]), concl)
    if "rule" not in obj:
        raise DerivationFormatError("a node needs either rule or assume")
    rule = str(obj["rule"])
    bindings = {k: read_value(_sort_of(rule, k), v) for k, v in obj.get("bindings", {}).items()}
    premises = [node_from_json(p) for p in obj.get("premises", [])]
    return Derivation(rule, bindings, concl, premises)


def loads(text: str):
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_VERSION:
        raise DerivationFormatError(f"expected format {FORMAT_VERSION}")
    return node_from_json(doc["derivation"])


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ----------------------------------------------------------------------------
# Writing


def show_body(body) -> str:
    if isinstance(body, TypeEq):
        return f"(teq {show(body.left)} {show(body.right)})"
    if isinstance(body, ElemEq):
        return f"(eq {show(body.left)} {show(body.right)} {show(body.ty)})"
    return "(ctx-wf)"


def _show_eqs(xi: EqSet) -> str:
    return "(eqs" + "".join(f" (= {show_dim(a)} {show_dim(b)})" for a, b in xi) + ")"


def _show_ctx(gamma) -> str:
    return "(ctx" + "".join(f" ({a} {show(t)})" for a, t in gamma) + ")"


def _show_dims(psi) -> str:
    return "(dims" + "".join(f" {x}" for x in sorted(psi)) + ")"


def show_judgment(j: Judgment) -> str:
    return f"(judg {_show_dims(j.psi)} {_show_eqs(j.xi)} {_show_ctx(j.gamma)} {show_body(j.body)})"


def show_value(sort: str, v) -> str:
    if sort == "term":
        return show(v)
    if sort in ("dim", "eps"):
        return show_dim(v)
    if sort in ("dname", "var"):
        return v
    if sort == "extents":
        return "(exts" + "".join(f" {show_dim(d)}" for d in v) + ")"
    if sort == "tubes":
        return "(tubes" + "".join(f" ({show(a)} {show(b)})" for a, b in v) + ")"
    if sort == "gamma":
        return _show_ctx(v)
    if sort == "dims":
        return _show_dims(v)
    if sort == "judg":
        return show_body(v)
    if sort == "eqs":
        return _show_eqs(v)
    if sort == "subst":
        return "(subst" + "".join(f" ({x} {show_dim(r)})" for x, r in v) + ")"
    if sort == "index":
        return str(v)
    raise ValueError(f"unknown sort {sort}")


def node_to_json(node) -> dict:
    if isinstance(node, Assumption):
        return {"assume": node.name, "conclusion": show_judgment(node.conclusion)}
    return {
        "rule": node.rule,
        "bindings": {k: show_value(_sort_of(node.rule, k), v) for k, v in node.bindings.items()},
        "conclusion": show_judgment(node.conclusion),
        "premises": [node_to_json(p) for p in node.premises],
    }


def dumps(node) -> str:
    return json.dumps({"format": FORMAT_VERSION, "derivation": node_to_json(node)}, indent=2,
                      ensure_ascii=False)


def dump(node, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(node) + "\n")
