"""Command-line front end.

Exit codes: 0 success; 2 detected inconsistency (`enforce`), consistency
violation (`consistency`), or inequality (`equiv`); 3 failed axiom
check; 1 usage, I/O, or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import check_axioms, classify, direct_product, make_builtin
from .enforce import enforce_k_hyperarc, parse_strategy
from .errors import AlgebraError, FormatError, ParseError
from .formats import (
    gen_random_problem,
    load_algebra,
    read_algebra,
    read_problem,
    read_problem_raw,
    write_algebra,
    write_problem,
)
from .model import is_k_hyperarc_consistent
from .oracle import brute_force_solve, check_equivalent

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DETECTED = 2
EXIT_AXIOM = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drlcsp",
        description="Soft constraint solving over finite divisible residuated lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_algebra = sub.add_parser("algebra", help="build, check, or classify algebras")
    alg_sub = p_algebra.add_subparsers(dest="algebra_command", required=True)

    p_make = alg_sub.add_parser("make", help="construct a builtin algebra")
    p_make.add_argument("--kind", required=True,
                        choices=["boolean", "godel", "lukasiewicz", "weighted", "heyting", "product"])
    p_make.add_argument("--n", type=int, help="chain length or cost bound")
    p_make.add_argument("--cap", type=int, help="carrier cap override for products")
    p_make.add_argument("--lattice", help="JSON file with the order table for heyting")
    p_make.add_argument("--left", help="left factor algebra file for product")
    p_make.add_argument("--right", help="right factor algebra file for product")
    p_make.add_argument("-o", "--output", required=True)

    p_check = alg_sub.add_parser("check", help="run one exhaustive law profile")
    p_check.add_argument("file")
    p_check.add_argument("--profile", default="drl", choices=["drl", "derived", "cis-reduct"])
    p_check.add_argument("--json", action="store_true")

    p_classify = alg_sub.add_parser("classify", help="evaluate the subvariety equations")
    p_classify.add_argument("file")
    p_classify.add_argument("--json", action="store_true")

    p_enforce = sub.add_parser("enforce", help="enforce k-hyperarc consistency")
    p_enforce.add_argument("--problem", required=True)
    p_enforce.add_argument("--k", type=int, required=True)
    p_enforce.add_argument("--strategy", default="maximal-lex",
                           help="maximal-lex, maximal-seeded:SEED, or join")
    p_enforce.add_argument("--counters", action="store_true")
    p_enforce.add_argument("-o", "--output", required=True)
    p_enforce.add_argument("--json", action="store_true")

    p_solve = sub.add_parser("solve", help="brute-force optimal solutions")
    p_solve.add_argument("--problem", required=True)
    p_solve.add_argument("--json", action="store_true")

    p_cons = sub.add_parser("consistency", help="check k-hyperarc consistency")
    p_cons.add_argument("--problem", required=True)
    p_cons.add_argument("--k", type=int, required=True)
    p_cons.add_argument("--json", action="store_true")

    p_equiv = sub.add_parser("equiv", help="compare two problems on every assignment")
    p_equiv.add_argument("--a", required=True)
    p_equiv.add_argument("--b", required=True)
    p_equiv.add_argument("--json", action="store_true")

    p_gen = sub.add_parser("gen", help="generate a seeded random problem")
    p_gen.add_argument("--algebra", required=True)
    p_gen.add_argument("--vars", type=int, required=True)
    p_gen.add_argument("--dom", type=int, required=True)
    p_gen.add_argument("--constraints", type=int, required=True)
    p_gen.add_argument("--max-arity", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("-o", "--output", required=True)

    return parser


def _load_lattice_file(path: str):
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    if isinstance(obj, dict):
        obj = obj.get("leq")
    if not isinstance(obj, list):
        raise ParseError(f"{path} must hold an order table (or an object with 'leq')")
    return obj


def _cmd_algebra_make(args) -> int:
    if args.kind == "product":
        if not args.left or not args.right:
            raise ParseError("product needs --left and --right")
        made = direct_product(read_algebra(args.left), read_algebra(args.right), cap=args.cap)
    elif args.kind == "heyting":
        if not args.lattice:
            raise ParseError("heyting needs --lattice")
        made = make_builtin("heyting", leq=_load_lattice_file(args.lattice))
    elif args.kind == "boolean":
        made = make_builtin("boolean")
    else:
        if args.n is None:
            raise ParseError(f"{args.kind} needs --n")
        made = make_builtin(args.kind, n=args.n)
    write_algebra(made, args.output)
    print(f"wrote {made.name} (size {made.size}) to {args.output}")
    return EXIT_OK


def _cmd_algebra_check(args) -> int:
    # Load without the built-in validation so the report can show failures.
    algebra = load_algebra(Path(args.file).read_text(), validate=False)
    report = check_axioms(algebra, args.profile)
    if args.json:
        payload = {
            "profile": report.profile,
            "ok": report.ok,
            "checks": [
                {"axiom": c.axiom, "passed": c.passed,
                 "counterexample": list(c.counterexample) if c.counterexample else None}
                for c in report.checks
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for c in report.checks:
            if c.passed:
                print(f"ok   {c.axiom}")
            else:
                print(f"FAIL {c.axiom} at {c.counterexample}")
    return EXIT_OK if report.ok else EXIT_AXIOM


def _cmd_algebra_classify(args) -> int:
    flags = classify(read_algebra(args.file))
    if args.json:
        print(json.dumps({
            "prelinear": flags.prelinear,
            "idempotent": flags.idempotent,
            "involutive": flags.involutive,
            "chain": flags.chain,
            "variety": flags.variety_name,
        }, sort_keys=True))
    else:
        print(f"variety={flags.variety_name} prelinear={flags.prelinear} "
              f"idempotent={flags.idempotent} involutive={flags.involutive} chain={flags.chain}")
    return EXIT_OK


def _cmd_enforce(args) -> int:
    strategy = parse_strategy(args.strategy)
    problem = read_problem(args.problem)
    if problem is None:
        if args.json:
            print(json.dumps({"inconsistent": True, "stage": "normalize"}, sort_keys=True))
        else:
            print("inconsistent (a domain emptied during normalization)")
        return EXIT_DETECTED
    outcome = enforce_k_hyperarc(problem, args.k, strategy)
    if args.counters:
        c = outcome.counters
        print(f"main_loop_iterations={c.main_loop_iterations} "
              f"project_calls={c.project_calls} "
              f"inner_tuple_iterations={c.inner_tuple_iterations}")
    if outcome.inconsistent:
        if args.json:
            print(json.dumps({"inconsistent": True, "stage": "enforce"}, sort_keys=True))
        else:
            print("inconsistent")
        return EXIT_DETECTED
    write_problem(outcome.problem, args.output)
    if args.json:
        print(json.dumps({"inconsistent": False, "output": args.output}, sort_keys=True))
    else:
        print(f"wrote consistent problem to {args.output}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    problem = read_problem_raw(args.problem)
    result = brute_force_solve(problem)
    if args.json:
        print(json.dumps({
            "optimal_values": result.optimal_values,
            "solutions": [list(t) for t in result.solutions],
            "inconsistent": result.inconsistent,
        }, sort_keys=True))
    else:
        print(f"optimal values: {result.optimal_values}")
        if result.inconsistent:
            print("inconsistent (only bottom is achievable)")
        for t in result.solutions:
            print(f"  {t}")
    return EXIT_OK


def _cmd_consistency(args) -> int:
    problem = read_problem(args.problem)
    if problem is None:
        if args.json:
            print(json.dumps({"ok": False, "stage": "normalize"}, sort_keys=True))
        else:
            print("inconsistent (a domain emptied during normalization)")
        return EXIT_DETECTED
    violation = is_k_hyperarc_consistent(problem, args.k)
    if violation is None:
        print(json.dumps({"ok": True}, sort_keys=True) if args.json else "ok")
        return EXIT_OK
    if args.json:
        print(json.dumps({
            "ok": False,
            "scope": list(violation.scope),
            "variable": violation.variable,
            "value": violation.value,
        }, sort_keys=True))
    else:
        print(f"violation scope={violation.scope} variable={violation.variable} "
              f"value={violation.value}")
    return EXIT_DETECTED


def _cmd_equiv(args) -> int:
    a = read_problem_raw(args.a)
    b = read_problem_raw(args.b)
    counterexample = check_equivalent(a, b)
    if counterexample is None:
        print(json.dumps({"equal": True}, sort_keys=True) if args.json else "equal")
        return EXIT_OK
    if args.json:
        print(json.dumps({
            "equal": False,
            "assignment": list(counterexample.assignment),
            "value_a": counterexample.value_a,
            "value_b": counterexample.value_b,
        }, sort_keys=True))
    else:
        print(f"different at {counterexample.assignment}: "
              f"{counterexample.value_a} vs {counterexample.value_b}")
    return EXIT_DETECTED


def _cmd_gen(args) -> int:
    algebra = read_algebra(args.algebra)
    problem = gen_random_problem(
        algebra, args.vars, args.dom, args.constraints, args.max_arity, args.seed
    )
    write_problem(problem, args.output)
    print(f"wrote {args.constraints} constraints over {args.vars} variables to {args.output}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse --help exits 0, usage errors exit 2
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        if args.command == "algebra":
            if args.algebra_command == "make":
                return _cmd_algebra_make(args)
            if args.algebra_command == "check":
                return _cmd_algebra_check(args)
            return _cmd_algebra_classify(args)
        if args.command == "enforce":
            return _cmd_enforce(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "consistency":
            return _cmd_consistency(args)
        if args.command == "equiv":
            return _cmd_equiv(args)
        return _cmd_gen(args)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
