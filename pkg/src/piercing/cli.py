"""Command line: ``piercing generate | solve | verify | sweep``.

Exit codes: 0 success, 1 usage or I/O error, 2 the input violates an
algorithm's premise, 3 an exact search ran past its budget, 4 a guarantee
failed (the instance is written next to the output for inspection),
5 ``verify`` found uncovered boxes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import BudgetExceeded, DimensionMismatch, HypothesisViolation, InvariantViolation
from .aspect import points_from_json, weak_epsilon_net
from .exact import DEFAULT_BUDGET, Cover, exact_nu, uncovered_boxes
from .generate import KINDS, GenSpec, generate
from .geometry import BoxFamily, as_scalar
from .harness import ALGORITHMS, SweepSpec, dumps_summary, family_aspect, run_algorithm, summarize, sweep, to_csv, within_bound

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_BUDGET, EXIT_INVARIANT, EXIT_UNCOVERED = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _scalar(text: str):
    try:
        return as_scalar(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact number: {text!r}") from exc


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="piercing", description="Piercing sets for families of axis-parallel boxes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a seeded random instance")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--dim", type=_positive, default=2)
    g.add_argument("--n", type=_nonneg, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--r", type=_scalar)
    g.add_argument("--coord-range", type=_positive, default=1000)
    g.add_argument("--max-attempts", type=_positive, default=10_000)
    g.add_argument("--out", type=Path)

    s = sub.add_parser("solve", help="pierce an instance and record the run")
    s.add_argument("instance", type=Path)
    s.add_argument("--algo", choices=ALGORITHMS, required=True)
    s.add_argument("--r", type=_scalar, help="aspect bound for the aspect algorithm (default: the family's own)")
    s.add_argument("--eps", type=_scalar, help="heaviness threshold when the input is a point set (weak ε-net)")
    s.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    s.add_argument("--out", type=Path, help="cover file (default: stdout)")

    v = sub.add_parser("verify", help="check that a cover pierces every box")
    v.add_argument("instance", type=Path)
    v.add_argument("cover", type=Path)

    w = sub.add_parser("sweep", help="run algorithms over seeded instances and report")
    w.add_argument("--kind", choices=KINDS, required=True)
    w.add_argument("--dim", type=_positive, default=2)
    w.add_argument("--n", type=_nonneg, required=True)
    w.add_argument("--seed", type=int, default=0, help="first seed; repetition i uses seed + i")
    w.add_argument("--reps", type=_positive, default=10)
    w.add_argument("--r", type=_scalar)
    w.add_argument("--algo", action="append", choices=ALGORITHMS,
                   help="repeat for several algorithms (default: karolyi)")
    w.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    w.add_argument("--no-oracles", action="store_true", help="skip exact τ and τ*")
    w.add_argument("--timing", action="store_true", help="add a wall_time column")
    w.add_argument("--jobs", type=_positive, default=1)
    w.add_argument("--out", type=Path, help="CSV report (default: stdout)")
    w.add_argument("--summary", type=Path, help="summary JSON (default: next to --out, or stderr)")
    return p


def _read_family(path: Path) -> BoxFamily:
    return BoxFamily.from_json(json.loads(path.read_text(), parse_float=Fraction))


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _dump_violation(f: BoxFamily, algo: str, anchor: Path | None, exc: Exception) -> Path:
    body = json.dumps({**f.to_json(), "algo": algo, "violation": str(exc)}, indent=1)
    tag = hashlib.sha1(f.dumps().encode()).hexdigest()[:10]
    base = anchor.parent if anchor is not None else Path.cwd()
    path = base / f"violation-{algo}-{tag}.json"
    path.write_text(body + "\n")
    return path


def cmd_generate(args) -> int:
    spec = GenSpec(args.kind, args.dim, args.n, args.seed, coord_range=args.coord_range,
                   r=args.r, max_attempts=args.max_attempts)
    f = generate(spec)
    _emit(json.dumps({**f.to_json(), "spec": spec.to_json()}) + "\n", args.out)
    return EXIT_OK


def cmd_net(args, data: dict) -> int:
    if args.eps is None:
        raise UsageError("a point-set input needs --eps")
    if args.algo != "aspect":
        raise UsageError("weak ε-nets are built with --algo aspect")
    points = points_from_json(data)
    r = args.r if args.r is not None else 1
    net = weak_epsilon_net(points, args.eps, r)
    record = {"algo": "weak-net", "points": len(points), "eps": str(args.eps), "r": str(r),
              "heavy_rectangles": len(net.family), "nu": net.nu, "size": len(net.cover)}
    _emit(json.dumps(net.cover.to_json()) + "\n", args.out)
    print(json.dumps(record), file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def cmd_solve(args) -> int:
    data = json.loads(args.instance.read_text(), parse_float=Fraction)
    if "points" in data and "boxes" not in data:
        return cmd_net(args, data)
    f = BoxFamily.from_json(data)
    try:
        cover = run_algorithm(args.algo, f, args.r, args.budget)
    except InvariantViolation as exc:
        path = _dump_violation(f, args.algo, args.out or args.instance, exc)
        print(f"invariant violated: {exc}; instance written to {path}", file=sys.stderr)
        return EXIT_INVARIANT
    record = {"algo": args.algo, "n": len(f), "d": f.dim, "size": len(cover), "valid": True}
    try:
        nu = exact_nu(f, args.budget)[0]
    except BudgetExceeded:
        nu = None
    if nu is not None:
        r = args.r if args.r is not None else family_aspect(f)
        record["nu"] = nu
        record["within_bound"] = within_bound(args.algo, len(cover), nu, f.dim, r)
        if not record["within_bound"]:
            path = _dump_violation(f, args.algo, args.out or args.instance, AssertionError("bound exceeded"))
            print(f"cover of {len(cover)} points breaks the {args.algo} bound; instance written to {path}",
                  file=sys.stderr)
            return EXIT_INVARIANT
    _emit(json.dumps(cover.to_json()) + "\n", args.out)
    print(json.dumps(record), file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _read_family(args.instance)
    cover = Cover.from_json(json.loads(args.cover.read_text()))
    missing = uncovered_boxes(f, cover)
    print(json.dumps({"ok": not missing, "uncovered": missing}))
    return EXIT_OK if not missing else EXIT_UNCOVERED


def cmd_sweep(args) -> int:
    algos = tuple(args.algo or ("karolyi",))
    spec = SweepSpec(args.kind, args.dim, args.n, args.seed, args.reps, args.r, algos, args.budget,
                     not args.no_oracles, args.timing)
    GenSpec(args.kind, args.dim, args.n, args.seed, r=args.r)  # reject bad flags before any work
    rows = sweep(spec, jobs=args.jobs)
    _emit(to_csv(rows, algos, args.timing), args.out)
    summary = dumps_summary(summarize(rows, algos, args.kind))
    if args.summary is not None:
        args.summary.write_text(summary)
    elif args.out is not None:
        args.out.with_suffix(".summary.json").write_text(summary)
    else:
        sys.stderr.write(summary)
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "verify": cmd_verify, "sweep": cmd_sweep}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"piercing: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionMismatch as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except HypothesisViolation as exc:
        witness = f" (witness {exc.witness})" if exc.witness is not None else ""
        print(f"hypothesis violated: {exc}{witness}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"piercing: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
