#!/usr/bin/env python3
"""Regenerate the recorded reduction outcomes under src/itt/corpus/expected/.

For every case, each #reduce pragma runs under the case's documented strategy
and a small family of rule sets (the case's own, cast off, cast+Eq_rec off,
irrelevance off).  Statuses and cycle periods are recorded as regression
values; periods count this engine's own steps (one per Beta/Delta/firing).

Run from the repository root:  python3 scripts/record_expected.py [--dry-run]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from itt import CASE_NAMES, elaborate, load_example, ruleset_label

VARIANTS = (
    {},
    {"cast_rule": False},
    {"cast_rule": False, "eqrec_rule": False},
    {"proof_irrelevance": False},
)

HEADER = ("# strategy ruleset pragma status period\n"
          "# regenerate with: python scripts/record_expected.py\n")


def record_case(name: str) -> str:
    case = load_example(name)
    lines = [HEADER.rstrip("\n")]
    for overrides in VARIANTS:
        rules = case.rules.updated(**overrides)
        env, results = elaborate(case.program, rules,
                                 reduce_strategy=case.strategy)
        label = ruleset_label(rules)
        ordinal = 0
        for res in results:
            if res.kind != "reduce":
                continue
            ordinal += 1
            trace = res.trace
            period = trace.cycle.period if trace.cycle is not None else None
            lines.append(f"{case.strategy} {label} {ordinal} {trace.status} "
                         f"{'-' if period is None else period}")
    return "\n".join(lines) + "\n"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dry-run", action="store_true",
                        help="print the tables instead of writing them")
    args = parser.parse_args()
    out_dir = Path(__file__).resolve().parents[1] / "src/itt/corpus/expected"
    for name in CASE_NAMES:
        table = record_case(name)
        if args.dry_run:
            print(f"--- {name}.txt")
            print(table, end="")
        else:
            (out_dir / f"{name}.txt").write_text(table, encoding="utf-8")
            print(f"wrote {out_dir / f'{name}.txt'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
