"""Command line front end: run scenarios, sweep, demo, verify reports.

Exit codes: 0 the requested work completed (whatever the verdict), 1 bad
input or an internal failure, 2 a verification that did not hold up.
"""

from __future__ import annotations

import argparse
import json
import sys

from .decisions import (
    DecisionError,
    StateSet,
    analyze,
    broadcaster_exists,
    cloner_exists,
    jointly_distinguishable,
)
from .demos import (
    COMPRESSION_DEMO,
    compression_demo_doc,
    demo_description,
    demo_names,
    demo_scenario_doc,
)
from .rationals import rat_str
from .reports import (
    ReportError,
    canonical_bytes,
    decision_doc,
    load_report,
    verify_report,
    write_report,
)
from .scenario import Scenario, ScenarioError, parse_scenario, load_scenario
from .sweeps import FAMILIES, sweep_doc, sweep_scenario


def _fmt_vec(v) -> str:
    return "(" + ", ".join(rat_str(x) for x in v) + ")"


def _print_witness(doc: dict) -> None:
    kind = doc.get("kind")
    if kind == "measurement":
        print("witness measurement:")
        for label, eff in zip(doc["labels"], doc["effects"]):
            print(f"  outcome {label}: ({', '.join(eff)})")
    elif kind == "channel":
        matrix = doc["matrix"]
        print(f"witness channel ({len(matrix)}x{len(matrix[0])} matrix):")
        for row in matrix:
            print("  [" + ", ".join(row) + "]")
    elif kind == "simplex_cover":
        print("covering simplex generators:")
        for g in doc["generators"]:
            print(f"  ({', '.join(g)})")
        print("distinguishing measurement (lifted to the full space):")
        for label, eff in zip(doc["labels"], doc["effects"]):
            print(f"  outcome {label}: ({', '.join(eff)})")


def _print_decision(doc: dict) -> None:
    print(f"verdict: {doc['verdict']}")
    if "witness" in doc:
        _print_witness(doc["witness"])
    if "certificate" in doc:
        cert = doc["certificate"]
        n = len(cert["ineq_multipliers"]) + len(cert["eq_multipliers"])
        print(f"infeasibility certificate: {n} Farkas multipliers over the solved system")
    for name, ok in doc.get("cross_checks", []):
        print(f"cross-check {'ok' if ok else 'FAILED'}: {name}")
    work = " ".join(f"{name}={count}" for name, count in doc.get("timing", []))
    if work:
        print(f"work: {work}")


def _print_sweep(doc: dict) -> None:
    summary = doc["summary"]
    print(f"sweep: {doc['scenario']['trials']} trials "
          f"of {doc['scenario']['size']} states")
    names = sorted({k.rsplit("_", 1)[0] for k in summary})
    for name in names:
        agreed = summary.get(f"{name}_agreed", 0)
        checked = summary.get(f"{name}_checked", 0)
        print(f"  {name}: {agreed}/{checked} agree")
    if doc["disagreements"]:
        print(f"DISAGREEMENTS: {len(doc['disagreements'])} (dumped in the report)")
    else:
        print("no disagreements")


def _execute(scenario: Scenario) -> dict:
    if scenario.task == "sweep":
        return sweep_doc(scenario)
    ss = StateSet(scenario.space, scenario.states)
    if scenario.task == "distinguish":
        report = jointly_distinguishable(ss)
    elif scenario.task == "clone":
        report = cloner_exists(ss, scenario.composite)
    elif scenario.task == "broadcast":
        report = broadcaster_exists(ss, scenario.composite)
    else:
        report = analyze(ss, scenario.composite)
    return decision_doc(scenario, report)


def _emit(doc: dict, args) -> int:
    if doc.get("task") == "sweep":
        _print_sweep(doc)
    elif "demo" in doc:
        for key in ("iterations", "max_deviation", "tolerance", "within_tolerance"):
            print(f"{key}: {doc[key]}")
    else:
        _print_decision(doc)
    if args.report:
        write_report(args.report, doc)
        print(f"report written: {args.report}")
    if getattr(args, "verify", False):
        ok, checks = verify_report(json.loads(canonical_bytes(doc)))
        for name, good in checks:
            print(f"verify {'ok' if good else 'FAILED'}: {name}")
        if not ok:
            return 2
    return 0


def _parse_composite_flag(value):
    if value is None or value in ("min", "max"):
        return value
    if value.startswith("custom:"):
        path = value[len("custom:"):]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as exc:
            raise ScenarioError(f"cannot read composite file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ScenarioError(
                f"{path} is not valid JSON: line {exc.lineno}: {exc.msg}"
            ) from exc
    raise ScenarioError(
        f"--composite expects min, max or custom:<path>; got {value!r}"
    )


def _cmd_run(args) -> int:
    override = _parse_composite_flag(args.composite)
    scenario = load_scenario(args.scenario, override)
    doc = _execute(scenario)
    print(f"task: {scenario.task} on {scenario.space.name} "
          f"({len(scenario.states)} states), composite {scenario.composite.variant}")
    return _emit(doc, args)


def _cmd_sweep(args) -> int:
    scenario = sweep_scenario(args.space, args.size, args.trials, args.seed)
    doc = sweep_doc(scenario)
    return _emit(doc, args)


def _cmd_demo(args) -> int:
    if not args.name:
        print("builtin demos:")
        for name in demo_names():
            print(f"  {name}")
            print(f"      {demo_description(name)}")
        return 0
    if args.name == COMPRESSION_DEMO:
        print(demo_description(args.name))
        doc = compression_demo_doc(float(args.tolerance) if args.tolerance else 1e-9)
        return _emit(doc, args)
    try:
        scenario_doc = demo_scenario_doc(args.name)
    except KeyError:
        print(f"unknown demo {args.name!r}; run `gptcast demo` for the list",
              file=sys.stderr)
        return 1
    print(demo_description(args.name))
    scenario = parse_scenario(scenario_doc)
    doc = _execute(scenario)
    return _emit(doc, args)


def _cmd_verify(args) -> int:
    doc = load_report(args.report_path)
    ok, checks = verify_report(doc)
    for name, good in checks:
        print(f"verify {'ok' if good else 'FAILED'}: {name}")
    print("report verifies" if ok else "REPORT DOES NOT VERIFY")
    return 0 if ok else 2


def _tolerance_value(text: str) -> str:
    # accepted as a rational string like "1/1000000000"; converted to float
    # only inside the iterative cross-check
    from .scenario import parse_rational

    parse_rational(text, "--tolerance")
    num, _, den = text.partition("/")
    return str(int(num) / int(den or "1"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gptcast",
        description="Exact distinguishability, cloning and broadcasting decisions "
        "for convex operational theories.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    run = sub.add_parser("run", help="decide a scenario file")
    run.add_argument("scenario", help="path to a JSON scenario")
    run.add_argument("--composite", help="min, max, or custom:<path to H-rep JSON>")
    run.add_argument("--report", help="write the machine-readable report here")
    run.add_argument("--verify", action="store_true",
                     help="re-verify the produced report before exiting")
    run.set_defaults(func=_cmd_run)

    sweep = sub.add_parser("sweep", help="randomized agreement sweep")
    sweep.add_argument("--space", required=True,
                       help=f"space family: {', '.join(sorted(FAMILIES))}")
    sweep.add_argument("--size", type=int, default=2, help="states per trial")
    sweep.add_argument("--trials", type=int, default=20)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--report", help="write the machine-readable report here")
    sweep.add_argument("--verify", action="store_true",
                       help="re-verify the produced report before exiting")
    sweep.set_defaults(func=_cmd_sweep)

    demo = sub.add_parser("demo", help="list or run builtin demos")
    demo.add_argument("name", nargs="?", help="demo name (omit to list)")
    demo.add_argument("--report", help="write the machine-readable report here")
    demo.add_argument("--tolerance", type=_tolerance_value,
                      help="iterative cross-check tolerance, as a rational like 1/1000000000")
    demo.add_argument("--verify", action="store_true",
                      help="re-verify the produced report before exiting")
    demo.set_defaults(func=_cmd_demo)

    verify = sub.add_parser("verify", help="re-check every proof in a report")
    verify.add_argument("report_path", help="path to a report JSON")
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ReportError, DecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
