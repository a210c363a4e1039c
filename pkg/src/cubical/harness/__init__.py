"""Desk-scale checks of the metatheory: generators, canonicity, suites."""

from .canonicity import (
    Canon, CanonVerdict, FuelExhausted, NonCanonical, StuckOrFuel, check_canonicity,
    endpoint_substs, obs_equal_bool,
)
from .generators import GenConfig, GrammarGen, TypedGen, gen_closed_bool, gen_closed_circle, grammar_terms
from .shrink import shrink
from .suites import DEFAULT_COUNTS, SUITES, SuiteConfig, SuiteReport, merge, run_suite
