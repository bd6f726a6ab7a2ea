"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .batch import COLUMNS, SEARCH_PARAMETERS, parse_family_tokens, run_batch
from .hypergraph import read_hypergraph, to_json, to_uhg
from .nullity import (
    DEFAULT_BUDGET,
    DEFAULT_EXHAUSTIVE_PRIME,
    DEFAULT_GENERIC_PRIME,
    BudgetExceeded,
    generic_nullity,
    max_nullity_exhaustive,
)
from .propagation import RULES, closure
from .search import minimum_set, probe_cartesian_equality, z0
from .verify import CASES, run_case, select_cases

DEFAULT_SEED = 2024
PARAM_NAMES = {"z0": "Z0", "infect": "I", "zpd": "Zpd", "pd": "pd"}


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _fmt(vs) -> str:
    return "{" + ",".join(map(str, sorted(vs))) + "}"


def _parse_vertices(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--initial expects comma-separated integers, got {raw!r}") from None


# ----------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    tokens = [args.family, *args.params]
    if args.family == "random" and not any(t.startswith("seed=") for t in args.params):
        tokens.append(f"seed={args.seed}")
    H = parse_family_tokens(tokens)
    comments = [" ".join(tokens)]
    if args.format == "json" or (args.output and args.output.endswith(".json")):
        out = json.dumps(to_json(H)) + "\n"
    else:
        out = to_uhg(H, comments)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_closure(args) -> int:
    H = read_hypergraph(args.file)
    initial = _parse_vertices(args.initial)
    derived, trace = closure(H, args.rule, initial)
    payload = {
        "rule": args.rule,
        "initial": sorted(set(initial)),
        "derived": sorted(derived),
        "complete": len(derived) == H.n,
    }
    if args.trace:
        payload["trace"] = trace.lines()
    lines = [f"derived: {_fmt(derived)}"]
    if args.trace:
        lines = trace.lines() + lines
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_param(args) -> int:
    H = read_hypergraph(args.file)
    result = minimum_set(H, PARAM_NAMES[args.parameter], workers=args.threads)
    text = f"{result.parameter} = {result.value}"
    if args.witness:
        text += f"\nwitness: {_fmt(result.witness)}\nsubsets examined: {result.subsets_examined}"
    _emit(args, result.to_json(), text)
    return 0


def cmd_nullity(args) -> int:
    H = read_hypergraph(args.file)
    if args.mode == "generic":
        p = args.field or DEFAULT_GENERIC_PRIME
        value = generic_nullity(H, p, args.trials, args.seed)
        payload = {"mode": "generic", "field": p, "value": value, "trials": args.trials, "seed": args.seed}
        _emit(args, payload, f"generic nullity over GF({p}) = {value} ({args.trials} trials, seed {args.seed})")
        return 0
    p = args.field or DEFAULT_EXHAUSTIVE_PRIME
    try:
        best = max_nullity_exhaustive(H, p, args.budget)
    except BudgetExceeded as exc:
        lower = generic_nullity(H, DEFAULT_GENERIC_PRIME, args.trials, args.seed)
        upper = z0(H)
        payload = {
            "mode": "exhaustive", "field": p, "value": None, "budget_exceeded": True,
            "assignments_needed": exc.needed, "budget": exc.budget,
            "generic_nullity": lower, "generic_field": DEFAULT_GENERIC_PRIME,
            "Z0_upper_bound": upper, "seed": args.seed,
        }
        text = (f"budget exceeded: {exc.needed} assignments needed, budget {exc.budget}\n"
                f"generic nullity over GF({DEFAULT_GENERIC_PRIME}) = {lower} (seed {args.seed}); "
                f"M <= Z0 = {upper}")
        _emit(args, payload, text)
        return 0
    payload = {
        "mode": "exhaustive",
        "field": p,
        "value": best.value,
        "witness_weights": [{"edge": list(e), "weight": w} for e, w in zip(H.edges, best.witness.weights)],
        "kernel_basis": [list(v) for v in best.kernel.vectors],
    }
    text = [f"M over GF({p}) = {best.value}"]
    text += [f"weight {_fmt(e)} = {w}" for e, w in zip(H.edges, best.witness.weights)]
    text += ["kernel: " + " ".join(map(str, v)) for v in best.kernel.vectors]
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_verify(args) -> int:
    if args.list:
        for name, (statement, _) in CASES.items():
            print(f"{name}: {statement}")
        return 0
    try:
        names = select_cases(args.case)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    results = []
    for name in names:
        r = run_case(name, seed=args.seed, budget=args.budget)
        results.append(r)
        if not args.json:
            status = "PASS" if r.ok else "FAIL"
            print(f"{status} {name} ({r.checked} checks, {r.seconds:.2f}s): {r.statement}", flush=True)
            for f in r.failures[: args.show]:
                print(f"    {f['detail']}")
                if f["hypergraph"]:
                    print("    " + f["hypergraph"].strip().replace("\n", "\n    "))
    ok = all(r.ok for r in results)
    if args.json:
        print(json.dumps({"seed": args.seed, "ok": ok, "cases": [r.to_json() for r in results]}, indent=2))
    else:
        print(f"seed {args.seed}: {sum(r.ok for r in results)}/{len(results)} cases passed")
    return 0 if ok else 1


def cmd_batch(args) -> int:
    path = Path(args.spec)
    text = sys.stdin.read() if args.spec == "-" else path.read_text()
    params = SEARCH_PARAMETERS
    if args.params:
        params = tuple(p.strip() for p in args.params.split(",") if p.strip())
        bad = [p for p in params if p not in SEARCH_PARAMETERS]
        if bad:
            raise UsageError(f"unknown parameter(s) {', '.join(bad)}; columns are {', '.join(COLUMNS)}")
    csv_text = run_batch(text, base=path.parent if args.spec != "-" else None, threads=args.threads,
                         params=params, budget=args.budget, seed=args.seed, trials=args.trials)
    print(f"# seed {args.seed}", file=sys.stderr)
    if args.output:
        Path(args.output).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_probe(args) -> int:
    report = probe_cartesian_equality(args.d, args.size_bound, args.trials, args.seed)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        c = report.counts
        print(f"seed {args.seed}: {c['pairs']} pairs, {c['equal']} equal, "
              f"{len(report.strict)} strict, {len(report.violations)} violations")
        print(f"factor Z0 = 0: {c['factor_zero']}, factor Z0 = 1: {c['factor_one']}, other: {c['other']}")
        for rec in report.strict:
            print(f"strict: {json.dumps(rec)}")
        for rec in report.violations:
            print(f"violation: {json.dumps(rec)}")
    return 0 if report.ok else 1


# ------------------------------------------------------------------ parser


def _positive(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw}")
    return value


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--threads", type=_positive, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS,
                        help=f"exhaustive nullity budget (default {DEFAULT_BUDGET})")

    parser = argparse.ArgumentParser(prog="hyperzf", parents=[common],
                                     description="Zero forcing and maximum nullity of uniform hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a family member")
    p.add_argument("family", help="complete, star, interval, special_interval, circular_arc, "
                                  "special_circular_arc, tight_circular_arc or random")
    p.add_argument("params", nargs="*", help="key=value parameters, e.g. p=3 d=3 or n=7 d=3 L=1,2,4,5")
    p.add_argument("--format", choices=("uhg", "json"), default="uhg")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("closure", parents=[common], help="derived set of an initial set")
    p.add_argument("file")
    p.add_argument("--rule", choices=RULES, default="zf")
    p.add_argument("--initial", default="", help="comma-separated vertices, e.g. 1,5")
    p.add_argument("--trace", action="store_true", help="print one step per line")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("param", parents=[common], help="exact Z0, I, Zpd or pd")
    p.add_argument("parameter", choices=tuple(PARAM_NAMES))
    p.add_argument("file")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_param)

    p = sub.add_parser("nullity", parents=[common], help="generic or exhaustive nullity over GF(p)")
    p.add_argument("file")
    p.add_argument("--mode", choices=("generic", "exhaustive"), default="exhaustive")
    p.add_argument("--field", type=int, help="prime modulus")
    p.add_argument("--trials", type=_positive, default=5)
    p.set_defaults(func=cmd_nullity)

    p = sub.add_parser("verify", parents=[common], help="re-derive the stated values and bounds")
    p.add_argument("case", nargs="?", help="comma-separated case names or prefixes ending in *")
    p.add_argument("--list", action="store_true", help="list the cases")
    p.add_argument("--show", type=int, default=3, help="failures printed per case")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", parents=[common], help="CSV of parameters for listed instances")
    p.add_argument("spec", help="spec file, or - for stdin")
    p.add_argument("--params", help="subset of Z0,I,Zpd,pd to compute")
    p.add_argument("--trials", type=_positive, default=5)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("probe-cartesian", parents=[common], help="compare Z0 of products with the product of Z0")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--size-bound", type=int, default=6)
    p.add_argument("--trials", type=_positive, default=100)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("seed", DEFAULT_SEED), ("threads", 1), ("budget", DEFAULT_BUDGET)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        # input errors (SpecError, HypergraphError, FieldError) are ValueErrors
        print(f"hyperzf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
