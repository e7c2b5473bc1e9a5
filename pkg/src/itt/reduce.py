"""Small-step reduction: single steps, weak-head and strong drivers, step
tracing, and online cycle detection.

Reduction rules (gated by the active RuleSet):

    App(Lam(_, b), a)       |> subst(b, 0, a)                        Beta
    Global(n) with a body   |> body                                  Delta
    Cast(A, B, e, x)        |> x   when A and B are convertible      CastFire
    EqRec(T, P, a, b, x, e) |> x   when a and b are convertible      EqRecFire
    J(A, B, x)              |> x   when A and B are convertible      JFire

CastFire and EqRecFire never look at the shape of the proof argument; only
the endpoints are compared.  Delta is need-driven: a global unfolds when its
weak-head form is demanded (it heads the spine being reduced) or during
strong normalization, so traces keep named forms as long as possible.

Divergence is not observed as a timeout but *detected*: each reduction spine
keeps a key-index map of the terms it has visited and reports the first
repeat (confirmed by alpha-equality) as a cycle with its period.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Callable, Iterable

from . import convert as _convert
from .env import Context, GlobalEnv, ctx_extend
from .rules import Fuel, FuelExhausted, RuleSet
from .syntax import (
    PROP,
    App, Cast, EqRec, Global, J, Lam, Pi, SortT, Term, Eq, Refl, Var,
    alpha_eq, build_apps, canonical_key, pretty, subst, unwind_apps,
)

NORMAL_FORM = "NormalForm"
FUEL_EXHAUSTED = "FuelExhausted"
CYCLE_DETECTED = "CycleDetected"


@dataclass(frozen=True)
class StepKind:
    tag: str  # Beta | Delta | CastFire | EqRecFire | JFire
    name: str | None = None  # unfolded global, for Delta

    def __str__(self) -> str:
        return f"{self.tag}({self.name})" if self.name is not None else self.tag


BETA = StepKind("Beta")
CAST_FIRE = StepKind("CastFire")
EQREC_FIRE = StepKind("EqRecFire")
J_FIRE = StepKind("JFire")


def delta(name: str) -> StepKind:
    return StepKind("Delta", name)


@dataclass(frozen=True)
class TraceStep:
    kind: StepKind
    term: Term
    key: str


@dataclass(frozen=True)
class CycleReport:
    first_index: int
    period: int
    witness: Term


@dataclass
class Trace:
    initial: Term
    steps: list[TraceStep]
    strategy: str  # "whnf" | "nf"
    status: str = NORMAL_FORM
    cycle: CycleReport | None = None

    def snapshots(self) -> list[Term]:
        """Initial term followed by the result of each step."""
        return [self.initial, *(s.term for s in self.steps)]

    @property
    def final(self) -> Term:
        return self.steps[-1].term if self.steps else self.initial

    def status_line(self) -> str:
        if self.status == CYCLE_DETECTED and self.cycle is not None:
            return (f"STATUS CycleDetected first={self.cycle.first_index} "
                    f"period={self.cycle.period}")
        return f"STATUS {self.status}"


class CycleDetector:
    """Key-index map over one reduction spine.

    A repeated canonical key is only reported once alpha-equality confirms
    it; a colliding key with non-alpha-equal terms is recorded and ignored.
    """

    def __init__(self) -> None:
        self._seen: dict[str, list[tuple[int, Term]]] = {}

    def observe(self, index: int, term: Term, key: str | None = None) -> CycleReport | None:
        key = canonical_key(term) if key is None else key
        bucket = self._seen.setdefault(key, [])
        for first, old in bucket:
            if alpha_eq(old, term):
                return CycleReport(first, index - first, old)
        bucket.append((index, term))
        return None


class _CycleFound(Exception):
    def __init__(self, report: CycleReport) -> None:
        self.report = report


def head_step(env: GlobalEnv, ctx: Context, t: Term, rules: RuleSet,
              budget: Fuel, unfold_heads: bool = True) -> tuple[Term, StepKind] | None:
    """One step at the head of the application spine, or None if head-stable.

    ``unfold_heads=False`` suppresses Delta so that conversion can unfold
    incrementally on its own terms.
    """
    head, args = unwind_apps(t)
    match head:
        case Lam(_, body) if args and rules.beta:
            budget.spend()
            return build_apps(subst(body, 0, args[0]), args[1:]), BETA
        case Cast(src, dst, _, val) if rules.cast_rule:
            if _convert.convert(env, ctx, src, dst, common_type=SortT(PROP),
                                rules=rules, budget=budget):
                budget.spend()
                return build_apps(val, args), CAST_FIRE
        case EqRec(ty, _, lhs, rhs, base, _) if rules.eqrec_rule:
            if _convert.convert(env, ctx, lhs, rhs, common_type=ty,
                                rules=rules, budget=budget):
                budget.spend()
                return build_apps(base, args), EQREC_FIRE
        case J(src, dst, val) if rules.j_rule:
            if _convert.convert(env, ctx, src, dst, rules=rules, budget=budget):
                budget.spend()
                return build_apps(val, args), J_FIRE
        case Global(name) if rules.delta and unfold_heads:
            entry = env.lookup(name)
            if entry is not None and entry.body is not None:
                budget.spend()
                return build_apps(entry.body, args), delta(name)
    return None


def whnf_term(env: GlobalEnv, ctx: Context, t: Term, rules: RuleSet,
              budget: Fuel, unfold_heads: bool = True) -> Term:
    """Weak-head form without tracing (used by checking and conversion)."""
    while (r := head_step(env, ctx, t, rules, budget, unfold_heads)) is not None:
        t = r[0]
    return t


# Subterm positions in left-to-right surface order; the second element names
# the field whose binder the child sits under (None if not under a binder).
_CHILDREN: dict[type, tuple[tuple[str, bool], ...]] = {
    Var: (), SortT: (), Global: (),
    Pi: (("domain", False), ("codomain", True)),
    Lam: (("domain", False), ("body", True)),
    App: (("fn", False), ("arg", False)),
    Eq: (("ty", False), ("lhs", False), ("rhs", False)),
    Refl: (("ty", False), ("val", False)),
    EqRec: (("ty", False), ("motive", False), ("lhs", False), ("rhs", False),
            ("base", False), ("proof", False)),
    Cast: (("src", False), ("dst", False), ("proof", False), ("val", False)),
    J: (("src", False), ("dst", False), ("val", False)),
}


def step(env: GlobalEnv, ctx: Context, t: Term, rules: RuleSet,
         budget: Fuel | None = None) -> tuple[Term, StepKind] | None:
    """Contract the leftmost-outermost redex, or None if ``t`` is in normal
    form with respect to the enabled rules."""
    if budget is None:
        budget = rules.new_budget()
    r = head_step(env, ctx, t, rules, budget)
    if r is not None:
        return r
    for attr, under_binder in _CHILDREN[type(t)]:
        child = getattr(t, attr)
        child_ctx = ctx_extend(ctx, t.domain) if under_binder else ctx  # type: ignore[attr-defined]
        sub = step(env, child_ctx, child, rules, budget)
        if sub is not None:
            new_child, kind = sub
            return dataclasses.replace(t, **{attr: new_child}), kind
    return None


def whnf(env: GlobalEnv, ctx: Context, t: Term, rules: RuleSet,
         budget: Fuel | None = None) -> Trace:
    """Head reduction only: never under binders, never into arguments except
    as conversion side conditions demand."""
    if budget is None:
        budget = rules.new_budget()
    steps: list[TraceStep] = []
    trace = Trace(t, steps, "whnf")
    detector = CycleDetector()
    detector.observe(0, t)
    cur = t
    try:
        while (r := head_step(env, ctx, cur, rules, budget)) is not None:
            cur, kind = r
            key = canonical_key(cur)
            steps.append(TraceStep(kind, cur, key))
            report = detector.observe(len(steps), cur, key)
            if report is not None:
                trace.status = CYCLE_DETECTED
                trace.cycle = report
                return trace
    except FuelExhausted:
        trace.status = FUEL_EXHAUSTED
    return trace


def normalize(env: GlobalEnv, ctx: Context, t: Term, rules: RuleSet,
              budget: Fuel | None = None) -> Trace:
    """Strong normalization: head-reduce, then recurse under binders and into
    arguments.  Every recorded snapshot is the whole term, so consecutive
    snapshots are related by exactly one step.

    Cycle detection restarts per reduction spine: a repeat on one spine is
    already a divergence proof, while repeats across spines are not cycles.
    """
    if budget is None:
        budget = rules.new_budget()
    steps: list[TraceStep] = []
    trace = Trace(t, steps, "nf")

    def spine(sub: Term, rebuild: Callable[[Term], Term], sctx: Context) -> Term:
        detector = CycleDetector()
        detector.observe(len(steps), rebuild(sub))
        while (r := head_step(env, sctx, sub, rules, budget)) is not None:
            sub, kind = r
            whole = rebuild(sub)
            key = canonical_key(whole)
            steps.append(TraceStep(kind, whole, key))
            report = detector.observe(len(steps), whole, key)
            if report is not None:
                raise _CycleFound(report)
        return sub

    def rec(sub: Term, rebuild: Callable[[Term], Term], sctx: Context) -> Term:
        cur = spine(sub, rebuild, sctx)
        for attr, under_binder in _CHILDREN[type(cur)]:
            child_ctx = ctx_extend(sctx, cur.domain) if under_binder else sctx  # type: ignore[attr-defined]

            def rb(c: Term, cur: Term = cur, attr: str = attr) -> Term:
                return rebuild(dataclasses.replace(cur, **{attr: c}))

            new_child = rec(getattr(cur, attr), rb, child_ctx)
            cur = dataclasses.replace(cur, **{attr: new_child})
        return cur

    try:
        rec(t, lambda x: x, ctx)
    except _CycleFound as found:
        trace.status = CYCLE_DETECTED
        trace.cycle = found.report
    except FuelExhausted:
        trace.status = FUEL_EXHAUSTED
    return trace


def reduce_with(env: GlobalEnv, ctx: Context, t: Term, rules: RuleSet,
                strategy: str, budget: Fuel | None = None) -> Trace:
    if strategy == "whnf":
        return whnf(env, ctx, t, rules, budget)
    if strategy == "nf":
        return normalize(env, ctx, t, rules, budget)
    raise ValueError(f"unknown strategy {strategy!r}")


# --- trace serialization and replay ----------------------------------------

def trace_to_text(trace: Trace) -> str:
    """One step per line: ``<index> <StepKind> <pretty term>``, then STATUS."""
    lines = [f"{i} {s.kind} {pretty(s.term)}"
             for i, s in enumerate(trace.steps, start=1)]
    lines.append(trace.status_line())
    return "\n".join(lines)


def trace_to_json_lines(trace: Trace) -> list[str]:
    lines = [json.dumps({"index": i, "kind": str(s.kind),
                         "term": pretty(s.term), "key": s.key})
             for i, s in enumerate(trace.steps, start=1)]
    lines.append(trace.status_line())
    return lines


def parse_trace_json(lines: Iterable[str]) -> tuple[list[dict], str]:
    """Split serialized JSON trace lines into step records and the status line."""
    records: list[dict] = []
    status = ""
    for line in lines:
        line = line.strip()
        if not line:
            continue
        if line.startswith("STATUS"):
            status = line
            continue
        records.append(json.loads(line))
    return records, status


def replay_trace(env: GlobalEnv, ctx: Context, trace: Trace,
                 rules: RuleSet) -> bool:
    """Re-run the recorded strategy and confirm it reproduces every snapshot,
    key and kind, plus the final status."""
    fresh = reduce_with(env, ctx, trace.initial, rules, trace.strategy)
    if fresh.status != trace.status or len(fresh.steps) != len(trace.steps):
        return False
    for a, b in zip(fresh.steps, trace.steps):
        if a.kind != b.kind or not alpha_eq(a.term, b.term) or a.key != b.key:
            return False
    if trace.cycle is not None:
        if fresh.cycle != trace.cycle:
            return False
    return True
