"""Fix-pattern registry: one (descriptor, matcher, generator, phase) row per
pattern, in canonical catalog order. The row index is the scheduler's
catalog-order tie-break.

Matching runs in three phases per suspicious statement: phase 0 walks every
node of the statement subtree in preorder for expression-granularity
patterns, phase 1 offers the statement itself to statement-granularity
patterns, and phase 2 offers the enclosing method declaration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .base import PatternContext, PatternMatch
from .descriptors import (
    BY_ID, CATALOG, FAMILIES, PatternDescriptor, action_counts,
    expand_pattern_ids, granularity_counts, spread_counts,
)
from . import guards, mutators, structural

EXPRESSION_PHASE = 0
STATEMENT_PHASE = 1
METHOD_PHASE = 2


@dataclass(frozen=True)
class CatalogEntry:
    descriptor: PatternDescriptor
    matcher: Callable
    generator: Callable
    phase: int


def _entry(pattern_id: str, matcher, generator, phase) -> CatalogEntry:
    return CatalogEntry(BY_ID[pattern_id], matcher, generator, phase)


REGISTRY: tuple[CatalogEntry, ...] = (
    _entry("FP1", guards.match_fp1, guards.gen_fp1, STATEMENT_PHASE),
    _entry("FP2.1", guards.match_fp2_1, guards.gen_fp2_1, STATEMENT_PHASE),
    _entry("FP2.2", guards.match_fp2_2, guards.gen_fp2_2, STATEMENT_PHASE),
    _entry("FP2.3", guards.match_fp2_3, guards.gen_fp2_3, STATEMENT_PHASE),
    _entry("FP2.4", guards.match_fp2_4, guards.gen_fp2_4, STATEMENT_PHASE),
    _entry("FP2.5", guards.match_fp2_5, guards.gen_fp2_5, STATEMENT_PHASE),
    _entry("FP3", guards.match_fp3, guards.gen_fp3, STATEMENT_PHASE),
    _entry("FP4.1", guards.match_fp4_1, guards.gen_fp4_1, STATEMENT_PHASE),
    _entry("FP4.2", guards.match_fp4_2, guards.gen_fp4_2, STATEMENT_PHASE),
    _entry("FP4.3", guards.match_fp4_3, guards.gen_fp4_3, STATEMENT_PHASE),
    _entry("FP4.4", guards.match_fp4_4, guards.gen_fp4_4, STATEMENT_PHASE),
    _entry("FP5", mutators.match_fp5, mutators.gen_fp5, EXPRESSION_PHASE),
    _entry("FP6.1", mutators.match_fp6_1, mutators.gen_fp6_1, EXPRESSION_PHASE),
    _entry("FP6.2", mutators.match_fp6_2, mutators.gen_fp6_2, EXPRESSION_PHASE),
    _entry("FP6.3", mutators.match_fp6_3, mutators.gen_fp6_3, EXPRESSION_PHASE),
    _entry("FP7.1", mutators.match_fp7_1, mutators.gen_fp7_1, EXPRESSION_PHASE),
    _entry("FP7.2", mutators.match_fp7_2, mutators.gen_fp7_2, EXPRESSION_PHASE),
    _entry("FP8.1", mutators.match_fp8_1, mutators.gen_fp8_1, EXPRESSION_PHASE),
    _entry("FP8.2", mutators.match_fp8_2, mutators.gen_fp8_2, EXPRESSION_PHASE),
    _entry("FP8.3", mutators.match_fp8_3, mutators.gen_fp8_3, EXPRESSION_PHASE),
    _entry("FP9.1", mutators.match_fp9_1, mutators.gen_fp9_1, EXPRESSION_PHASE),
    _entry("FP9.2", mutators.match_fp9_2, mutators.gen_fp9_2, EXPRESSION_PHASE),
    _entry("FP10.1", mutators.match_fp10_1, mutators.gen_fp10_1, EXPRESSION_PHASE),
    _entry("FP10.2", mutators.match_fp10_2, mutators.gen_fp10_2, EXPRESSION_PHASE),
    _entry("FP10.3", mutators.match_fp10_3, mutators.gen_fp10_3, EXPRESSION_PHASE),
    _entry("FP10.4", mutators.match_fp10_4, mutators.gen_fp10_4, EXPRESSION_PHASE),
    _entry("FP11.1", mutators.match_fp11_1, mutators.gen_fp11_1, EXPRESSION_PHASE),
    _entry("FP11.2", mutators.match_fp11_2, mutators.gen_fp11_2, EXPRESSION_PHASE),
    _entry("FP11.3", mutators.match_fp11_3, mutators.gen_fp11_3, EXPRESSION_PHASE),
    _entry("FP12", mutators.match_fp12, mutators.gen_fp12, EXPRESSION_PHASE),
    _entry("FP13.1", mutators.match_fp13_1, mutators.gen_fp13_1, EXPRESSION_PHASE),
    _entry("FP13.2", mutators.match_fp13_2, mutators.gen_fp13_2, EXPRESSION_PHASE),
    _entry("FP14", structural.match_fp14, structural.gen_fp14, STATEMENT_PHASE),
    _entry("FP15.1", structural.match_fp15_1, structural.gen_fp15_1, STATEMENT_PHASE),
    _entry("FP15.2", structural.match_fp15_2, structural.gen_fp15_2, METHOD_PHASE),
)

assert tuple(e.descriptor for e in REGISTRY) == CATALOG

CATALOG_INDEX = {e.descriptor.pattern_id: i for i, e in enumerate(REGISTRY)}

__all__ = [
    "BY_ID", "CATALOG", "CATALOG_INDEX", "CatalogEntry", "EXPRESSION_PHASE",
    "FAMILIES", "METHOD_PHASE", "PatternContext", "PatternDescriptor",
    "PatternMatch", "REGISTRY", "STATEMENT_PHASE", "action_counts",
    "expand_pattern_ids", "granularity_counts", "spread_counts",
]
