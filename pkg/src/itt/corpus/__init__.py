"""Embedded, self-checking library of example programs.

The ``.itt`` files under ``examples/`` are the single source of truth; cases
are built by parsing them, never duplicated in code.  ``expected/`` holds
recorded reduction outcomes per rule set (regenerate them with
``scripts/record_expected.py``; cycle periods are regression values counted
in this engine's own step units, where every Beta, Delta and rule firing is
one step).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..convert import convert
from ..parser import Program, PragmaReduce, parse_program, parse_term
from ..rules import DEFAULT_RULES, RuleSet
from ..typecheck import elaborate

CASE_NAMES = (
    "counterexample1",
    "counterexample2",
    "counterexample2-propext",
    "girard-j",
    "sanity-church",
    "sanity-casts",
)

# Reduction strategy each case is documented under: the first counterexample
# only loops once reduction goes under its binder (or with the hypothesis
# assumed), the second already has no weak-head normal form.
_STRATEGY = {
    "counterexample1": "nf",
    "counterexample2": "whnf",
    "counterexample2-propext": "whnf",
    "girard-j": "nf",
    "sanity-church": "nf",
    "sanity-casts": "nf",
}

_REQUIRED_FLAGS: dict[str, dict[str, bool]] = {
    "girard-j": {"j_rule": True},
}

# Expected #check results, one per pragma, compared up to conversion.
_EXPECTED_CHECKS = {
    "counterexample1": ("Neg (forall (A : Prop), forall (B : Prop), Eq Prop A B)",),
    "counterexample2": ("Top",),
    "counterexample2-propext": ("Top",),
    "girard-j": ("Top", "Bot"),
    "sanity-church": ("Nat",),
    "sanity-casts": ("Top", "Prop"),
}


def ruleset_label(rules: RuleSet) -> str:
    def onoff(b: bool) -> str:
        return "on" if b else "off"

    return (f"cast:{onoff(rules.cast_rule)},eqrec:{onoff(rules.eqrec_rule)},"
            f"j:{onoff(rules.j_rule)},irrel:{onoff(rules.proof_irrelevance)}")


@dataclass(frozen=True)
class ExampleCase:
    name: str
    source: str
    strategy: str
    rules: RuleSet
    program: Program
    expected_checks: tuple[str, ...]
    # (strategy, ruleset label, reduce-pragma ordinal) -> (status, period|None)
    expected_reduce: dict[tuple[str, str, int], tuple[str, int | None]]

    def reduce_pragma_count(self) -> int:
        return sum(isinstance(d, PragmaReduce) for d in self.program.declarations)


def _read_data(subdir: str, filename: str) -> str:
    return (resources.files(__package__) / subdir / filename).read_text(encoding="utf-8")


def _parse_expected(text: str) -> dict[tuple[str, str, int], tuple[str, int | None]]:
    table: dict[tuple[str, str, int], tuple[str, int | None]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        strategy, label, ordinal, status, period = line.split()
        table[(strategy, label, int(ordinal))] = (
            status, None if period == "-" else int(period))
    return table


def load_example(name: str) -> ExampleCase:
    if name not in CASE_NAMES:
        raise ValueError(f"unknown example {name!r}; known: {', '.join(CASE_NAMES)}")
    source = _read_data("examples", f"{name}.itt")
    expected = _parse_expected(_read_data("expected", f"{name}.txt"))
    rules = DEFAULT_RULES.updated(**_REQUIRED_FLAGS.get(name, {}))
    return ExampleCase(
        name=name,
        source=source,
        strategy=_STRATEGY[name],
        rules=rules,
        program=parse_program(source),
        expected_checks=_EXPECTED_CHECKS[name],
        expected_reduce=expected,
    )


@dataclass
class CaseReport:
    name: str
    ruleset: str
    entries: list[tuple[str, bool | None]]  # (description, ok / None=skipped)

    @property
    def passed(self) -> bool:
        return all(ok is not False for _, ok in self.entries)

    @property
    def checked(self) -> int:
        return sum(ok is not None for _, ok in self.entries)


def run_case(case: ExampleCase, overrides: dict[str, bool] | None = None,
             fuel: int | None = None) -> CaseReport:
    """Elaborate the case and compare every pragma against its expectation.

    ``overrides`` are rule-flag overrides on top of the case's required rule
    set; reduce expectations missing for the resulting rule set are skipped.
    """
    changes: dict[str, object] = dict(_REQUIRED_FLAGS.get(case.name, {}))
    if overrides:
        changes.update(overrides)
    if fuel is not None:
        changes["fuel"] = fuel
    rules = DEFAULT_RULES.updated(**changes)
    label = ruleset_label(rules)
    env, results = elaborate(case.program, rules, reduce_strategy=case.strategy)

    entries: list[tuple[str, bool | None]] = []
    checks = [r for r in results if r.kind == "check"]
    reduces = [r for r in results if r.kind == "reduce"]

    for i, res in enumerate(checks):
        expected_src = case.expected_checks[i]
        expected = parse_term(expected_src, scope=env.names())
        ok = convert(env, (), res.type_, expected, rules=rules)
        entries.append((f"check #{i + 1}: {expected_src}", ok))

    for j, res in enumerate(reduces, start=1):
        want = case.expected_reduce.get((case.strategy, label, j))
        if want is None:
            entries.append((f"reduce #{j}: no expectation for {label}", None))
            continue
        status, period = want
        trace = res.trace
        ok = trace.status == status
        if ok and period is not None:
            ok = trace.cycle is not None and trace.cycle.period == period
        got = trace.status_line().removeprefix("STATUS ")
        entries.append((f"reduce #{j}: expected {status}"
                        f"{'' if period is None else f' period {period}'},"
                        f" got {got}", ok))
    return CaseReport(case.name, label, entries)


def run_all(overrides: dict[str, bool] | None = None,
            names: tuple[str, ...] | None = None,
            fuel: int | None = None) -> list[CaseReport]:
    return [run_case(load_example(n), overrides, fuel)
            for n in (names or CASE_NAMES)]
