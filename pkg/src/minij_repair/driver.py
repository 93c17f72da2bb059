"""The repair loop: localize, match, schedule, validate, classify.

Candidates are produced per suspicious statement and ordered by one total
order: (statement rank, match phase, node traversal order, action priority
Update > Insert > Delete > Move, catalog order, donor distance with
donor-free templates first, emission order). Every emitted candidate's
patched program has already passed a print -> parse -> type-check gate, so
validation only ever runs well-typed programs; gate rejections are counted
and logged at debug level but never surface as candidates.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .donors import collect_donors
from .edits import EditError, Patch, apply_edits, normalize_equal
from .lang.interp import DEFAULT_TEST_TIMEOUT, StmtId, run_tests
from .lang.lexer import MiniJSyntaxError
from .lang.parser import parse
from .lang.printer import pretty_print
from .lang.typecheck import MiniJTypeError, Program, type_check
from .localize import SuspiciousList, build_spectrum, perfect_localization, rank
from .patterns import (
    CATALOG_INDEX, EXPRESSION_PHASE, METHOD_PHASE, PatternContext, REGISTRY,
    STATEMENT_PHASE,
)

log = logging.getLogger(__name__)

ACTION_PRIORITY = {"update": 0, "insert": 1, "delete": 2, "move": 3}

PLAUSIBLE = "plausible"
PARTIAL = "partial"
BROKEN = "broken"

FULLY_FIXED = "fully-fixed"
PARTIALLY_FIXED = "partially-fixed"
UNFIXED = "unfixed"


class RepairError(Exception):
    pass


@dataclass
class RepairConfig:
    mode: str = "ochiai"                 # "ochiai" | "perfect"
    exhaustive: bool = False
    budget_s: float | None = 60.0        # None = unlimited
    max_suspicious: int = 50
    patterns: frozenset[str] | None = None
    test_timeout: float = DEFAULT_TEST_TIMEOUT
    distance_metric: str = "path"
    candidate_cap: int = 20              # per (pattern, location)


@dataclass
class CandidatePatch:
    patch: Patch
    location: StmtId
    suspiciousness: float
    pattern_id: str
    action: str
    donor_distance: int | None
    sequence_no: int = -1
    # scheduling internals
    stmt_rank: int = 0
    phase: int = 0
    node_order: int = 0
    catalog_index: int = 0
    emit_index: int = 0
    patched_program: Program | None = field(default=None, repr=False)
    patched_texts: dict[str, str] | None = field(default=None, repr=False)


def scheduling_key(c: CandidatePatch) -> tuple:
    donor_key = (0, 0) if c.donor_distance is None else (1, c.donor_distance)
    return (c.stmt_rank, c.phase, c.node_order,
            ACTION_PRIORITY[c.action], c.catalog_index, donor_key,
            c.emit_index)


@dataclass
class RepairOutcome:
    bug_id: str | None
    status: str
    plausible_patch: CandidatePatch | None
    plausible_patches: list[CandidatePatch]
    partial_patches: list[CandidatePatch]
    correct: bool
    candidates_generated: int
    candidates_validated: int
    gate_rejections: int
    buggy_ranks: list[int | None]
    validation_log: list[tuple[int, str, str]]  # (sequence_no, pattern, verdict)
    wall_time_s: float


def match_statement(program: Program, stmt_id: StmtId,
                    enabled: frozenset[str] | None = None):
    """Yield (entry, match, node_order, phase) in the documented traversal
    order: every subtree node for expression-granularity patterns first,
    then the statement itself, then the enclosing method."""
    stmt = program.statement_at(stmt_id)
    ctx = PatternContext(program, stmt_id[0], stmt)

    def on(entry) -> bool:
        return enabled is None or entry.descriptor.pattern_id in enabled

    for node_order, node in enumerate(stmt.walk()):
        for entry in REGISTRY:
            if entry.phase == EXPRESSION_PHASE and on(entry):
                for m in entry.matcher(node, ctx):
                    yield entry, m, node_order, EXPRESSION_PHASE
    for entry in REGISTRY:
        if entry.phase == STATEMENT_PHASE and on(entry):
            for m in entry.matcher(stmt, ctx):
                yield entry, m, 0, STATEMENT_PHASE
    method = ctx.enclosing_method(stmt)
    if method is not None:
        for entry in REGISTRY:
            if entry.phase == METHOD_PHASE and on(entry):
                for m in entry.matcher(method, ctx):
                    yield entry, m, 0, METHOD_PHASE


def _patched_program(program: Program, path: str, patch: Patch):
    """Apply a patch and re-front-end the whole program from text. Returns
    (program, texts) or (None, None) when the result does not type-check."""
    src = program.file(path)
    try:
        new_ast = apply_edits(src.ast, patch.edits)
        text = pretty_print(new_ast)
    except EditError as exc:
        log.debug("edit application failed for %s: %s", patch.pattern_id, exc)
        return None, None
    texts = {f.path: (text if f.path == path else f.text)
             for f in program.files}
    try:
        files = [parse(t, p) for p, t in texts.items()]
        checked = type_check(files)
    except (MiniJSyntaxError, MiniJTypeError) as exc:
        log.debug("gate rejected %s candidate: %s", patch.pattern_id, exc)
        return None, None
    return checked, texts


def generate_for_statement(program: Program, stmt_id: StmtId, stmt_rank: int,
                           score: float, config: RepairConfig,
                           seq_start: int) -> tuple[list[CandidatePatch], int, int]:
    """All gate-passing candidates for one suspicious statement, in
    scheduling order, numbered from seq_start. Returns (candidates,
    next sequence number, gate rejection count)."""
    stmt = program.statement_at(stmt_id)
    ctx = PatternContext(program, stmt_id[0], stmt)
    donors = collect_donors(program, stmt, config.distance_metric)

    raw: list[CandidatePatch] = []
    for entry, match, node_order, phase in match_statement(
            program, stmt_id, config.patterns):
        d = entry.descriptor
        for patch in entry.generator(match, donors, ctx):
            raw.append(CandidatePatch(
                patch=patch, location=stmt_id, suspiciousness=score,
                pattern_id=d.pattern_id, action=d.action,
                donor_distance=patch.donor_distance, stmt_rank=stmt_rank,
                phase=phase, node_order=node_order,
                catalog_index=CATALOG_INDEX[d.pattern_id],
                emit_index=len(raw)))
    raw.sort(key=scheduling_key)

    kept: list[CandidatePatch] = []
    per_pattern: dict[str, int] = {}
    rejections = 0
    seen_texts: set[tuple[str, str]] = set()
    seq = seq_start
    for cand in raw:
        if per_pattern.get(cand.pattern_id, 0) >= config.candidate_cap:
            continue
        checked, texts = _patched_program(program, stmt_id[0], cand.patch)
        if checked is None:
            rejections += 1
            continue
        key = (cand.pattern_id, texts[stmt_id[0]])
        if key in seen_texts:
            continue  # same text reachable through several donors
        seen_texts.add(key)
        per_pattern[cand.pattern_id] = per_pattern.get(cand.pattern_id, 0) + 1
        cand.patched_program = checked
        cand.patched_texts = texts
        cand.sequence_no = seq
        seq += 1
        kept.append(cand)
    return kept, seq, rejections


def validate(candidate: CandidatePatch, baseline_failing: set[str],
             suite_path: str, config: RepairConfig) -> str:
    """Classify one candidate against the suite: plausible when everything
    passes, partial on a strict improvement, broken otherwise."""
    if candidate.patched_program is None:
        return BROKEN  # non-compiling candidates never improve anything
    traces = run_tests(candidate.patched_program, suite_path,
                       config.test_timeout)
    now_failing = {t.test_name for t in traces if t.failing}
    if not now_failing:
        return PLAUSIBLE
    if now_failing < baseline_failing:
        return PARTIAL
    return BROKEN


def _matches_ground_truth(candidate: CandidatePatch,
                          ground_truth: dict[str, str] | None) -> bool:
    """Semantic-equivalence check against the developer fix: every patched
    file must normalize-equal the ground-truth text for the same path."""
    if ground_truth is None or candidate.patched_program is None:
        return False
    # normalization consults inferred types, so the reference program must be
    # type-checked just like the candidate; untouched files fill the gaps
    texts = dict(candidate.patched_texts)
    texts.update(ground_truth)
    try:
        reference = type_check([parse(t, p) for p, t in sorted(texts.items())])
    except (MiniJSyntaxError, MiniJTypeError):
        return False
    for f in candidate.patched_program.files:
        if f.path not in ground_truth:
            continue  # suite and untouched files are not part of the fix
        if not normalize_equal(f.ast, reference.file(f.path).ast):
            return False
    return True


def run_repair(program: Program, suite_path: str, config: RepairConfig,
               buggy_statements: list[StmtId] | None = None,
               ground_truth: dict[str, str] | None = None,
               bug_id: str | None = None) -> RepairOutcome:
    """Repair one bug: rank statements, then walk candidates in scheduling
    order until a plausible patch is found (or everything/budget is spent)."""
    t0 = time.monotonic()
    deadline = None if config.budget_s is None else t0 + config.budget_s

    baseline = run_tests(program, suite_path, config.test_timeout)
    baseline_failing = {t.test_name for t in baseline if t.failing}
    if not baseline_failing:
        raise RepairError("nothing to repair: all tests pass on the input")

    if config.mode == "perfect":
        if buggy_statements is None:
            raise RepairError("perfect localization needs the buggy statements")
        suspicious = perfect_localization(buggy_statements)
    else:
        spectrum = build_spectrum(baseline)
        suspicious = rank(spectrum)
    suspicious = suspicious.capped(config.max_suspicious)

    ranks = []
    if buggy_statements is not None:
        ranks = [suspicious.rank_of(sid) for sid in sorted(set(buggy_statements))]

    def out_of_time() -> bool:
        return deadline is not None and time.monotonic() >= deadline

    seq = 0
    generated = validated = rejections = 0
    plausibles: list[CandidatePatch] = []
    partials: list[CandidatePatch] = []
    partial_locations: set[StmtId] = set()
    vlog: list[tuple[int, str, str]] = []
    done = False

    for stmt_rank, (stmt_id, score) in enumerate(suspicious):
        if done or out_of_time():
            break
        candidates, seq, rej = generate_for_statement(
            program, stmt_id, stmt_rank, score, config, seq)
        generated += len(candidates)
        rejections += rej
        for cand in candidates:
            if out_of_time():
                done = True
                break
            verdict = validate(cand, baseline_failing, suite_path, config)
            validated += 1
            vlog.append((cand.sequence_no, cand.pattern_id, verdict))
            if verdict == PLAUSIBLE:
                plausibles.append(cand)
                if not config.exhaustive:
                    done = True
                    break
            elif verdict == PARTIAL:
                # partial patches for an already-covered statement are dropped
                if cand.location not in partial_locations:
                    partial_locations.add(cand.location)
                    partials.append(cand)

    if plausibles:
        status = FULLY_FIXED
        first = plausibles[0]
        correct = _matches_ground_truth(first, ground_truth)
    elif partials:
        status = PARTIALLY_FIXED
        first = None
        correct = any(_matches_ground_truth(p, ground_truth) for p in partials)
    else:
        status = UNFIXED
        first = None
        correct = False

    return RepairOutcome(
        bug_id=bug_id, status=status, plausible_patch=first,
        plausible_patches=plausibles, partial_patches=partials,
        correct=correct, candidates_generated=generated,
        candidates_validated=validated, gate_rejections=rejections,
        buggy_ranks=ranks, validation_log=vlog,
        wall_time_s=time.monotonic() - t0)
