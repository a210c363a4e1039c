"""Proof-checking of derivation trees against the rule catalog."""

from .fileformat import DerivationFormatError, dump, dumps, load, loads, read_judgment, show_judgment
from .judgment import CtxWF, ElemEq, Judgment, TypeEq, judgments_alpha_eq
from .rules import CATALOG, SideConditionError, rules_in
from .validate import (
    ARITY_MISMATCH, ILL_SCOPED, MISSING_BINDING, PREMISE_MISMATCH, RESTRICTION_MISMATCH,
    SIDE_CONDITION, SORT_MISMATCH, TEMPLATE_MISMATCH, UNEXPECTED_BINDING, UNKNOWN_RULE,
    Assumption, Derivation, Failure, InstantiationError, ValidationReport, check_bindings,
    discharge, instantiate, validate,
)

REASON_CODES = (
    UNKNOWN_RULE, MISSING_BINDING, UNEXPECTED_BINDING, SORT_MISMATCH, SIDE_CONDITION, ILL_SCOPED,
    TEMPLATE_MISMATCH, RESTRICTION_MISMATCH, ARITY_MISMATCH, PREMISE_MISMATCH,
)
