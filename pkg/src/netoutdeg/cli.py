"""Command-line front end.

Subcommands: ``winners`` and ``scores`` evaluate a rule on a ballot file;
``network`` exports a profile's network as CSV or DOT (optionally with a
rendered figure); ``axioms`` fuzzes a rule for axiom violations and verifies
constructive outstar faithfulness; ``algebra`` runs the exact dimension,
cycle-span and regularity checks.

Exit codes: 0 success, 1 ballot parse error, 2 rule domain violation,
3 axiom violations found.  All JSON output is byte-deterministic for fixed
inputs, flags and seed; the fallback seed comes from NETOUTDEG_SEED.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, List, Optional

from . import algebra, axioms
from .ballots import ProfileParseError, parse_profile
from .networks import net_outdegree
from .profiles import Profile, network_of_profile
from .rationals import format_rational
from .relations import DomainTooLargeError, default_alternatives
from .rules import DomainViolationError, resolve_rule

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DOMAIN = 2
EXIT_VIOLATIONS = 3


def _emit_json(payload, stream) -> None:
    stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_profile(path: str) -> Profile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_profile(fh.read())


def _default_seed() -> int:
    raw = os.environ.get("NETOUTDEG_SEED")
    return int(raw) if raw else 0


def _score_strings(scores) -> Dict[str, str]:
    return {x: format_rational(v) for x, v in scores.items()}


# ---------------------------------------------------------------------------
# winners / scores
# ---------------------------------------------------------------------------

def _cmd_evaluate(args, out, err) -> int:
    try:
        profile = _load_profile(args.profile)
    except ProfileParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    try:
        rule = resolve_rule(args.rule)
        winners, scores = rule.evaluate(profile)
    except DomainViolationError as exc:
        print(f"domain violation: {exc}", file=err)
        return EXIT_DOMAIN
    payload = {
        "rule": rule.rule_id,
        "winners": sorted(winners),
        "scores": _score_strings(scores),
    }
    if args.figure:
        from .plotting import render_score_figure

        render_score_figure(scores, rule.rule_id, args.figure)
    if args.format == "json":
        _emit_json(payload, out)
    elif args.command == "winners":
        print(" ".join(payload["winners"]), file=out)
    else:
        for x in sorted(scores):
            print(f"{x}\t{format_rational(scores[x])}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# network export
# ---------------------------------------------------------------------------

def _network_csv(network) -> str:
    lines = ["from,to,capacity"]
    for x, y, c in network.items():
        lines.append(f"{x},{y},{format_rational(c)}")
    return "\n".join(lines) + "\n"


def _network_dot(network) -> str:
    lines = ["digraph profile_network {"]
    for x in network.alternatives:
        lines.append(f'  "{x}";')
    for x, y, c in network.items():
        if c != 0:
            lines.append(f'  "{x}" -> "{y}" [label="{format_rational(c)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_network(args, out, err) -> int:
    try:
        profile = _load_profile(args.profile)
    except ProfileParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    network = network_of_profile(profile)
    text = _network_csv(network) if args.emit == "csv" else _network_dot(network)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.figure:
        from .plotting import render_network_figure

        render_network_figure(network, args.figure)
    return EXIT_OK


# ---------------------------------------------------------------------------
# axiom fuzzing
# ---------------------------------------------------------------------------

def _cmd_axioms(args, out, err) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    alternatives = default_alternatives(args.m)
    checks = None
    if args.check:
        checks = [c.strip() for c in args.check.split(",") if c.strip()]
        for c in checks:
            if c not in axioms.AXIOMS:
                print(f"unknown axiom {c!r}; known: {', '.join(axioms.AXIOMS)}", file=err)
                return EXIT_DOMAIN
    try:
        rule = resolve_rule(args.rule)
    except KeyError as exc:
        print(str(exc), file=err)
        return EXIT_DOMAIN

    fuzz_checks = None if checks is None else [c for c in checks if c != "on_faithfulness"]
    run_fuzz = fuzz_checks is None or fuzz_checks
    reports = []
    if run_fuzz:
        try:
            reports = axioms.fuzz_axioms(
                rule, args.domain, alternatives,
                trials=args.trials, seed=seed, max_voters=args.max_voters,
                checks=fuzz_checks,
            )
        except (ValueError, DomainTooLargeError) as exc:
            print(str(exc), file=err)
            return EXIT_DOMAIN

    faith: Optional[Dict[str, object]] = None
    if checks is None or "on_faithfulness" in checks:
        faith = _on_faithfulness_section(rule, args.domain, alternatives)
        if faith and faith["status"] == "violated":
            reports.extend(faith.pop("reports"))
        elif faith:
            faith.pop("reports", None)

    payload: Dict[str, object] = {
        "rule": rule.rule_id,
        "domain": args.domain,
        "m": args.m,
        "seed": seed,
        "trials": args.trials,
        "max_voters": args.max_voters,
        "violations": axioms.reports_to_json(reports),
        "result": "violated" if reports else "no-counterexample-found",
    }
    if faith is not None:
        payload["on_faithfulness"] = faith
    _emit_json(payload, out)
    return EXIT_VIOLATIONS if reports else EXIT_OK


def _on_faithfulness_section(rule, domain: str, alternatives) -> Optional[Dict[str, object]]:
    from .relations import parse_domain_tag

    spec = parse_domain_tag(domain)
    m = alternatives.m
    if spec.kind == "linear":
        tags = ["linear"]
    elif spec.kind == "dichotomous" and spec.param is not None:
        tags = [f"di:{t}" for t in spec.param if 1 <= t <= m - 1]
    elif spec.kind == "top" and spec.param is not None:
        tags = [f"top:{s}" for s in spec.param if 1 <= s <= m - 1]
    else:
        return None
    if not tags:
        return None
    reports = []
    for tag in tags:
        outcome = axioms.verify_on_faithfulness(rule, alternatives, tag)
        if outcome.status == "violation":
            reports.append(outcome.report)
    return {
        "status": "violated" if reports else "verified-constructively",
        "constructions": tags,
        "reports": reports,
    }


# ---------------------------------------------------------------------------
# algebra checks
# ---------------------------------------------------------------------------

def _cmd_algebra(args, out, err) -> int:
    m = args.m
    check = args.check
    try:
        if check == "rank":
            report = algebra.delta_rank_kernel(m)
            payload = {
                "check": "rank",
                "m": m,
                "computed": {"rank": report.rank, "kernel_dim": report.kernel_dim},
                "expected": {"rank": m - 1, "kernel_dim": (m - 1) ** 2},
                "pass": report.rank == m - 1 and report.kernel_dim == (m - 1) ** 2,
            }
        elif check == "ps-span":
            ok = algebra.verify_ps_cycle_span(m)
            payload = {"check": "ps-span", "m": m, "computed": ok, "expected": True, "pass": ok}
        elif check.startswith("regular:"):
            domain = check.split(":", 1)[1]
            report = algebra.verify_regularity(domain, m)
            expected = _expected_regularity(domain)
            payload = {
                "check": f"regular:{domain}",
                "m": m,
                "report": report,
                "expected": expected,
                "pass": (
                    report["regular"] == expected["regular"]
                    and (expected.get("span") is None
                         or report["span"]["computed"] == expected["span"])
                ),
            }
        else:
            print(f"unknown check {check!r}; use rank, ps-span or regular:<domain>", file=err)
            return EXIT_DOMAIN
    except (DomainTooLargeError, ValueError) as exc:
        print(str(exc), file=err)
        return EXIT_DOMAIN
    _emit_json(payload, out)
    return EXIT_OK


def _expected_regularity(domain: str) -> Dict[str, object]:
    from .relations import parse_domain_tag

    spec = parse_domain_tag(domain)
    if spec.kind == "cycles":
        return {"regular": False, "span": None}
    if spec.kind == "dichotomous":
        return {"regular": True, "span": "reversal_symmetric"}
    if spec.kind == "top" and spec.param is not None and all(s <= 1 for s in spec.param):
        return {"regular": True, "span": "reversal_symmetric"}
    return {"regular": True, "span": "pseudo_symmetric"}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netoutdeg",
        description="Exact net-outdegree voting toolkit: winners, network export, axiom fuzzing, algebra checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("winners", "scores"):
        p = sub.add_parser(name, help=f"compute {name} of a rule on a ballot file")
        p.add_argument("profile", help="ballot file path")
        p.add_argument("--rule", default="o",
                       help="o, borda, partial-borda, averaged-borda, av, plu, aplu, copeland, mutant:*")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--figure", default=None, help="also render a score chart to this file")
        p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("network", help="export the profile's capacity network")
    p.add_argument("profile", help="ballot file path")
    p.add_argument("--emit", choices=("csv", "dot"), default="csv")
    p.add_argument("-o", "--output", default=None, help="write here instead of stdout")
    p.add_argument("--figure", default=None, help="also render the digraph to this file")
    p.set_defaults(func=_cmd_network)

    p = sub.add_parser("axioms", help="fuzz a rule for axiom violations")
    p.add_argument("--rule", default="o")
    p.add_argument("--domain", default="order",
                   help="ballot family: linear, order, partial, dichotomous, di:<t>, top, top:<s>, cycles")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None, help="default: NETOUTDEG_SEED or 0")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--max-voters", type=int, default=4)
    p.add_argument("--check", default=None, help="comma-separated axiom subset")
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("algebra", help="exact dimension / span / regularity checks")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--check", required=True, help="rank, ps-span, or regular:<domain>")
    p.set_defaults(func=_cmd_algebra)

    return parser


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout, err or sys.stderr)


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
