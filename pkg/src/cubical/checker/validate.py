"""Derivation trees, template instantiation and validation reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..restriction import (
    AllSatisfied, EqSet, NoneSatisfied, ReduceBy, Unclassifiable, classify,
)
from ..syntax import Const, DName, Dim, Term
from .judgment import ElemEq, Judgment, TypeEq, judgments_alpha_eq, scope_errors
from .rules import AMBIENT, CATALOG, Inst, SideConditionError

# reason codes
UNKNOWN_RULE = "UnknownRule"
MISSING_BINDING = "MissingBinding"
UNEXPECTED_BINDING = "UnexpectedBinding"
SORT_MISMATCH = "SortMismatch"
SIDE_CONDITION = "SideCondition"
ILL_SCOPED = "IllScoped"
TEMPLATE_MISMATCH = "TemplateMismatch"
RESTRICTION_MISMATCH = "RestrictionMismatch"
ARITY_MISMATCH = "ArityMismatch"
PREMISE_MISMATCH = "PremiseMismatch"


class InstantiationError(ValueError):
    def __init__(self, code: str, msg: str):
        self.code = code
        super().__init__(msg)


@dataclass
class Derivation:
    rule: str
    bindings: dict
    conclusion: Judgment
    premises: list = field(default_factory=list)


@dataclass
class Assumption:
    name: str
    conclusion: Judgment


Node = Union[Derivation, Assumption]


def _is_name(v) -> bool:
    return isinstance(v, str) and bool(v)


def sort_ok(sort: str, v) -> bool:
    if sort == "term":
        return isinstance(v, Term)
    if sort == "dim":
        return isinstance(v, Dim)
    if sort == "eps":
        return isinstance(v, Const)
    if sort in ("dname", "var"):
        return _is_name(v)
    if sort == "extents":
        return isinstance(v, tuple) and len(v) >= 1 and all(isinstance(d, Dim) for d in v)
    if sort == "tubes":
        return isinstance(v, tuple) and all(
            isinstance(p, tuple) and len(p) == 2 and all(isinstance(t, Term) for t in p) for p in v
        )
    if sort == "gamma":
        return isinstance(v, tuple) and all(
            isinstance(p, tuple) and len(p) == 2 and _is_name(p[0]) and isinstance(p[1], Term)
            for p in v
        )
    if sort == "dims":
        return isinstance(v, (frozenset, set)) and all(_is_name(x) for x in v)
    if sort == "judg":
        return isinstance(v, (TypeEq, ElemEq))
    if sort == "eqs":
        return isinstance(v, EqSet)
    if sort == "subst":
        return isinstance(v, tuple) and all(
            isinstance(p, tuple) and len(p) == 2 and _is_name(p[0]) and isinstance(p[1], Dim)
            for p in v
        )
    if sort == "index":
        return isinstance(v, int) and not isinstance(v, bool)
    return False


def check_bindings(rule_name: str, bindings: dict) -> None:
    rule = CATALOG.get(rule_name)
    if rule is None:
        raise InstantiationError(UNKNOWN_RULE, f"no rule named {rule_name!r}")
    for k in bindings:
        if k not in rule.sig and k not in AMBIENT:
            raise InstantiationError(UNEXPECTED_BINDING, f"{rule_name} has no metavariable {k}")
    for k, mv in rule.sig.items():
        if k not in bindings:
            raise InstantiationError(MISSING_BINDING, f"{rule_name} needs a binding for {k}")
        if not sort_ok(mv.sort, bindings[k]):
            raise InstantiationError(SORT_MISMATCH, f"{k} must be a {mv.sort}")
    for k, sort in AMBIENT.items():
        if k in bindings and not sort_ok(sort, bindings[k]):
            raise InstantiationError(SORT_MISMATCH, f"{k} must be a {sort}")


def instantiate(rule_name: str, bindings: dict) -> tuple:
    """Expected ``(premises, conclusion)`` of ``rule_name`` under ``bindings``.

    Raises :class:`InstantiationError` for unknown rules and bad bindings and
    :class:`SideConditionError` when a side condition fails.
    """
    check_bindings(rule_name, bindings)
    prem, concl = CATALOG[rule_name].build(Inst(bindings))
    return list(prem), concl


def _vacuous(j: Judgment) -> bool:
    try:
        return isinstance(classify(j.xi), NoneSatisfied)
    except Unclassifiable:
        return False


def discharge(premises: list) -> list:
    """Drop premises whose restriction no substitution satisfies."""
    return [p for p in premises if not _vacuous(p)]


# ----------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class Failure:
    path: tuple  # premise indices from the root
    rule: str
    code: str
    detail: str

    def __str__(self):
        where = "root" if not self.path else "root." + ".".join(map(str, self.path))
        return f"{where} [{self.rule}] {self.code}: {self.detail}"


@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)
    nodes: int = 0

    @property
    def valid(self) -> bool:
        return not self.failures

    @property
    def codes(self) -> list:
        return [f.code for f in self.failures]

    def summary(self) -> str:
        if self.failures:
            lines = [f"invalid: {len(self.failures)} failing node(s) of {self.nodes}"]
            lines += [f"  {f}" for f in self.failures]
            return "\n".join(lines)
        if self.assumptions:
            return f"valid relative to assumptions {', '.join(self.assumptions)} ({self.nodes} nodes)"
        return f"valid ({self.nodes} nodes)"

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "nodes": self.nodes,
            "assumptions": list(self.assumptions),
            "failures": [
                {"path": list(f.path), "rule": f.rule, "code": f.code, "detail": f.detail}
                for f in self.failures
            ],
        }


def validate(d: Node) -> ValidationReport:
    report = ValidationReport()
    stack = [(d, ())]
    while stack:
        node, path = stack.pop()
        report.nodes += 1
        if isinstance(node, Assumption):
            report.assumptions.append(node.name)
            continue
        _check_node(node, path, report)
        for k in range(len(node.premises) - 1, -1, -1):
            stack.append((node.premises[k], path + (k,)))
    return report


def _check_restriction(rule, node: Derivation, prems: list) -> str:
    """Empty string when the node's restriction agrees with ``classify``."""
    xi = node.conclusion.xi
    try:
        got = classify(xi)
    except Unclassifiable as e:
        if rule.restriction == "same":
            return ""
        return f"restriction {xi} is unclassifiable: {e}"
    kind = rule.restriction
    if kind == "all" and not isinstance(got, AllSatisfied):
        return f"expected an always-satisfied restriction, {xi} classifies as {got}"
    if kind == "none" and not isinstance(got, NoneSatisfied):
        return f"expected an unsatisfiable restriction, {xi} classifies as {got}"
    if kind == "reduce":
        b = node.bindings
        want = [(b["x"], b["eps"])]
        if "y" in b:
            want.append((b["y"], b["eps2"]))
        if not (isinstance(got, ReduceBy) and list(got.assignments) == sorted(want)):
            return f"{xi} classifies as {got}, not a reduction by {sorted(want)}"
    if kind == "same":
        try:
            before = classify(prems[0].xi)
        except Unclassifiable:
            return f"premise restriction is unclassifiable but {xi} is not"
        if type(before) is not type(got) or (
            isinstance(got, ReduceBy) and got.assignments != before.assignments
        ):
            return f"adding a reflexive equation changed the class from {before} to {got}"
    return ""


def _check_node(node: Derivation, path: tuple, report: ValidationReport) -> None:
    def fail(code, detail):
        report.failures.append(Failure(path, node.rule, code, detail))

    try:
        expected, concl = instantiate(node.rule, node.bindings)
    except InstantiationError as e:
        fail(e.code, str(e))
        return
    except SideConditionError as e:
        fail(SIDE_CONDITION, str(e))
        return
    errs = scope_errors(node.conclusion)
    for p in expected:
        errs += scope_errors(p)
    if errs:
        fail(ILL_SCOPED, "; ".join(dict.fromkeys(errs)))
        return
    if not judgments_alpha_eq(concl, node.conclusion):
        fail(TEMPLATE_MISMATCH, "conclusion differs from the instantiated rule")
        return
    rule = CATALOG[node.rule]
    if rule.restriction:
        msg = _check_restriction(rule, node, expected)
        if msg:
            fail(RESTRICTION_MISMATCH, msg)
            return
    actual = [p.conclusion for p in node.premises]
    if len(actual) == len(expected):
        target = expected
    else:
        target = discharge(expected)
        if len(actual) != len(target):
            fail(ARITY_MISMATCH, f"expected {len(expected)} premises ({len(target)} after "
                                 f"discharging unsatisfiable restrictions), got {len(actual)}")
            return
    for k, (want, got) in enumerate(zip(target, actual)):
        if not judgments_alpha_eq(want, got):
            fail(PREMISE_MISMATCH, f"premise {k + 1} differs from the instantiated rule")
