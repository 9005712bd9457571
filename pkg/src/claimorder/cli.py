"""Command-line front end.

Verbs: ``example`` reproduces a bundled scenario and writes its curves and
report, ``check`` runs a hypothesis checklist on a scenario file, ``curve``
prints survival curves as CSV, ``sample`` prints seeded Monte Carlo draws.

Exit codes: 0 success/confirmed, 3 conclusion refuted or unexpected
outcome, 4 hypotheses failed, 2 output I/O failure, 64 usage error,
65 malformed scenario, 66 missing input file.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from .builtin_examples import EXAMPLE_TEXT, EXPECTED_OUTCOME
from .claims import Relation, sample_max_many, survival_max
from .scenario_io import ParsedScenario, ScenarioParseError, parse_scenario_text
from .theorems import Scenario, TheoremId, format_verdict, verify_theorem

EX_OK = 0
EX_IO = 2
EX_REFUTED = 3
EX_HYPOTHESES_FAILED = 4
EX_USAGE = 64
EX_PARSE = 65
EX_NO_INPUT = 66


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _emit(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return EX_OK
    try:
        Path(out).write_text(text)
    except OSError as exc:
        return _fail(EX_IO, f"cannot write {out}: {exc}")
    return EX_OK


def _apply_grid(scenario: Scenario, args) -> Scenario:
    grid = scenario.grid
    updates = {}
    if args.points is not None:
        updates["points"] = args.points
    if args.qlo is not None:
        updates["qlo"] = args.qlo
    if args.qhi is not None:
        updates["qhi"] = args.qhi
    if updates:
        scenario = dataclasses.replace(scenario, grid=dataclasses.replace(grid, **updates))
    return scenario


def _load(path: str) -> ParsedScenario | int:
    p = Path(path)
    if not p.is_file():
        return _fail(EX_NO_INPUT, f"no such scenario file: {path}")
    try:
        text = p.read_text()
    except OSError as exc:
        return _fail(EX_NO_INPUT, f"cannot read {path}: {exc}")
    try:
        return parse_scenario_text(text)
    except ScenarioParseError as exc:
        return _fail(EX_PARSE, f"{path}: {exc}")


def _curves_csv(scenario: Scenario, header: tuple[str, str, str], starred_first: bool) -> str:
    grid = scenario.build_grid()
    sa = np.atleast_1d(survival_max(scenario.portfolio_a, grid))
    sb = np.atleast_1d(survival_max(scenario.portfolio_b, grid))
    first, second = (sa, sb) if starred_first else (sb, sa)
    lines = [",".join(header)]
    for x, u, v in zip(grid, first, second):
        lines.append(f"{_fmt(x)},{_fmt(u)},{_fmt(v)}")
    return "\n".join(lines) + "\n"


def _outcome_word(relation: Relation) -> str:
    if relation is Relation.B_DOMINATES:
        return "dominance"
    if relation is Relation.CROSSING:
        return "crossing"
    return relation.value


def cmd_example(args) -> int:
    if args.n not in EXAMPLE_TEXT:
        return _fail(EX_USAGE, f"example number must be 1..{len(EXAMPLE_TEXT)}, got {args.n}")
    parsed = parse_scenario_text(EXAMPLE_TEXT[args.n])
    scenario = _apply_grid(parsed.scenario, args)
    verdict = verify_theorem(parsed.theorem, scenario)
    outcome = _outcome_word(verdict.verdict.relation)
    expected = EXPECTED_OUTCOME[args.n]

    report = format_verdict(verdict)
    report += f"expected_outcome: {expected}\n"
    report += f"outcome_match: {'yes' if outcome == expected else 'NO'}\n"
    csv = _curves_csv(scenario, ("x", "survival_Y", "survival_Ystar"), starred_first=False)

    out_dir = Path(args.out or ".")
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"example{args.n}_curves.csv").write_text(csv)
        (out_dir / f"example{args.n}_report.txt").write_text(report)
    except OSError as exc:
        return _fail(EX_IO, f"cannot write outputs under {out_dir}: {exc}")
    print(report, end="")
    return EX_OK if outcome == expected else EX_REFUTED


def cmd_check(args) -> int:
    loaded = _load(args.scenario)
    if isinstance(loaded, int):
        return loaded
    theorem = TheoremId(args.theorem) if args.theorem else loaded.theorem
    if theorem is None:
        return _fail(EX_USAGE, "no theorem id: pass --theorem or set 'theorem =' in the file")
    scenario = _apply_grid(loaded.scenario, args)
    try:
        verdict = verify_theorem(theorem, scenario)
    except ValueError as exc:
        return _fail(EX_PARSE, f"scenario does not fit {theorem.value}: {exc}")
    report = format_verdict(verdict)
    if args.out is not None:
        code = _emit(report, args.out)
        if code != EX_OK:
            return code
    print(report, end="")
    if not verdict.hypotheses.all_passed:
        return EX_HYPOTHESES_FAILED
    return EX_OK if verdict.conclusion_confirmed else EX_REFUTED


def cmd_curve(args) -> int:
    loaded = _load(args.scenario)
    if isinstance(loaded, int):
        return loaded
    scenario = _apply_grid(loaded.scenario, args)
    return _emit(_curves_csv(scenario, ("x", "survival_A", "survival_B"), starred_first=True), args.out)


def cmd_sample(args) -> int:
    if args.count < 1:
        return _fail(EX_USAGE, f"count must be at least 1, got {args.count}")
    loaded = _load(args.scenario)
    if isinstance(loaded, int):
        return loaded
    scenario = loaded.scenario
    rng = np.random.default_rng(args.seed)
    ya = sample_max_many(scenario.portfolio_a, args.count, rng)
    yb = sample_max_many(scenario.portfolio_b, args.count, rng)
    lines = ["draw_index,y_max_A,y_max_B"]
    for k in range(args.count):
        lines.append(f"{k + 1},{_fmt(ya[k])},{_fmt(yb[k])}")
    return _emit("\n".join(lines) + "\n", args.out)


def _add_grid_flags(p: argparse.ArgumentParser):
    p.add_argument("--points", type=int, default=None, help="grid point count (default 2001)")
    p.add_argument("--qlo", type=float, default=None, help="lower mixture quantile (default 1e-4)")
    p.add_argument("--qhi", type=float, default=None, help="upper mixture quantile (default 0.9999)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="claimorder",
        description="Largest-claim comparisons for copula-dependent risk portfolios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="run a bundled scenario and write curves + report")
    p.add_argument("n", type=int, help="scenario number, 1..7")
    p.add_argument("--out", default=None, help="output directory (default current)")
    _add_grid_flags(p)
    p.set_defaults(fn=cmd_example)

    p = sub.add_parser("check", help="verify hypotheses and conclusion for a scenario file")
    p.add_argument("scenario", help="path to a scenario file")
    p.add_argument("--theorem", choices=[t.value for t in TheoremId], default=None)
    p.add_argument("--out", default=None, help="also write the report to this file")
    _add_grid_flags(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("curve", help="print survival curves of both portfolios as CSV")
    p.add_argument("scenario", help="path to a scenario file")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    _add_grid_flags(p)
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("sample", help="print seeded Monte Carlo draws of both largest claims")
    p.add_argument("scenario", help="path to a scenario file")
    p.add_argument("--count", type=int, default=1000, help="number of draws (default 1000)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(fn=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EX_OK
        return EX_USAGE
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
