"""Command-line front end.

Exit codes: 0 ok, 1 usage or parse error, 2 inadmissible input,
3 verification failure, 4 internal construction failure.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor

from . import cube
from .audit import compare, enumerate_instances, run_trial, trial_fault_count, trial_seed
from .engine import ham_path_laceable
from .errors import ConstructionFailed, Inadmissible, SameParity
from .faults import FaultSet, InstanceParseError, check_conditions, fault_bound, format_instance, parse_instance
from .oracle import BudgetExhausted, InstanceSpec, SearchBudget, Unsatisfiable, exhaustive_ham_path, random_instance
from .paths import format_path, parse_path, verify_hamiltonian_path

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INADMISSIBLE = 2
EXIT_VERIFY = 3
EXIT_CONSTRUCTION = 4

DEFAULT_FORCE_NODES = 2_000_000


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"hyperlace: {msg}", file=sys.stderr)


def _record(**fields) -> str:
    return " ".join(f"{k}={v}" for k, v in fields.items())


def parse_range(text: str) -> list[int]:
    """'7' or '7..9' (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if not out or out[0] < 1:
        raise argparse.ArgumentTypeError(f"empty or invalid range {text!r}")
    return out


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _endpoints_from_comment(text: str, n: int) -> tuple[int, int] | None:
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# endpoints "):
            a, b = line.split()[2:4]
            return cube.parse_vertex(n, a), cube.parse_vertex(n, b)
    return None


# -- commands -----------------------------------------------------------------

def cmd_solve(args) -> int:
    text = _read(args.instance)
    F = parse_instance(text)
    n = F.n
    if args.x is not None and args.y is not None:
        x, y = cube.parse_vertex(n, args.x), cube.parse_vertex(n, args.y)
    elif args.x is None and args.y is None:
        ends = _endpoints_from_comment(text, n)
        if ends is None:
            raise UsageError("give endpoints X Y or an '# endpoints X Y' line in the instance")
        x, y = ends
    else:
        raise UsageError("give both endpoints or neither")
    try:
        path, trace = ham_path_laceable(n, F, x, y)
    except SameParity as exc:
        _err(f"endpoints have the same parity: {exc}")
        return EXIT_INADMISSIBLE
    except Inadmissible as exc:
        if args.force:
            return _forced(args, n, F, x, y)
        _err(f"inadmissible instance: {exc}")
        _print_report(check_conditions(n, F))
        return EXIT_INADMISSIBLE
    except ConstructionFailed as exc:
        _err(str(exc))
        if exc.trace is not None:
            print(exc.trace.render(), file=sys.stderr)
        return EXIT_CONSTRUCTION
    if args.machine:
        print(_record(status="ok", n=n, x=cube.format_vertex(n, x), y=cube.format_vertex(n, y),
                      length=len(path), path=",".join(cube.format_vertex(n, v) for v in path)))
    else:
        sys.stdout.write(format_path(n, path))
    if args.trace:
        print(trace.render(), file=sys.stderr)
    return EXIT_OK


def _print_report(report) -> None:
    print(_record(n=report.n, faults=report.fault_count, bound=report.bound, min_degree=report.min_degree,
                  degree2=report.degree2_count, admissible=str(report.admissible).lower()), file=sys.stderr)


def _forced(args, n: int, F: FaultSet, x: int, y: int) -> int:
    budget = SearchBudget(node_limit=args.budget_nodes or DEFAULT_FORCE_NODES, exhaustive=False)
    print("# heuristic search on an inadmissible instance (no guarantee)", file=sys.stderr)
    try:
        res = exhaustive_ham_path(n, F, x, y, budget)
    except BudgetExhausted as exc:
        _err(f"no guarantee: {exc}")
        return EXIT_INADMISSIBLE
    if not res.found:
        _err("no guarantee: search space exhausted, no Hamiltonian path exists")
        return EXIT_INADMISSIBLE
    if args.machine:
        print(_record(status="heuristic", n=n, length=len(res.path),
                      path=",".join(cube.format_vertex(n, v) for v in res.path)))
    else:
        sys.stdout.write(format_path(n, res.path))
    return EXIT_OK


def cmd_verify(args) -> int:
    F = parse_instance(_read(args.instance))
    n = F.n
    try:
        path = parse_path(n, _read(args.path))
    except ValueError as exc:
        raise UsageError(f"{args.path}: {exc}") from None
    x = cube.parse_vertex(n, args.x) if args.x else path[0]
    y = cube.parse_vertex(n, args.y) if args.y else path[-1]
    rep = verify_hamiltonian_path(n, F, x, y, path)
    if args.machine:
        print(_record(status="ok" if rep.ok else "fail", problems=len(rep.problems)))
    for p in rep.problems:
        print(p)
    if rep.ok and not args.machine:
        print("ok")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _trial(job):
    n, count, seed, admissible = job
    return run_trial(n, count, seed, admissible)


def _run_all(jobs, workers: int):
    # results come back in job order, so output does not depend on scheduling
    if workers <= 1:
        return [_trial(j) for j in jobs]
    with ProcessPoolExecutor(workers) as pool:
        return list(pool.map(_trial, jobs, chunksize=8))


def _pct(values, q):
    if not values:
        return 0.0
    values = sorted(values)
    return values[min(len(values) - 1, int(q * len(values)))]


def cmd_fuzz(args) -> int:
    failures = 0
    if not args.machine:
        print(f"{'n':>3} {'trials':>7} {'ok':>7} {'inadm':>6} {'failed':>6} {'p50 ms':>8} {'p99 ms':>8}")
    for n in args.n:
        jobs = []
        for t in range(args.trials):
            s = trial_seed(args.seed, n, t)
            count = trial_fault_count(n, t, s, args.faults)
            if not args.admissible_only:
                count = min(count + random.Random(s).randint(0, 2), n << (n - 1))
            jobs.append((n, count, s, args.admissible_only))
        results = _run_all(jobs, args.jobs)
        ok = [r for r in results if r.status == "ok"]
        inadm = [r for r in results if r.status == "inadmissible"]
        bad = [r for r in results if r.status == "failed"]
        failures += len(bad)
        times = [r.seconds * 1000 for r in ok]
        p50, p99 = _pct(times, 0.5), _pct(times, 0.99)
        if args.machine:
            print(_record(n=n, trials=len(results), ok=len(ok), inadmissible=len(inadm), failed=len(bad),
                          p50_ms=f"{p50:.2f}", p99_ms=f"{p99:.2f}"))
        else:
            print(f"{n:>3} {len(results):>7} {len(ok):>7} {len(inadm):>6} {len(bad):>6} {p50:>8.2f} {p99:>8.2f}")
        for r in bad:
            print(_record(failure=r.n, seed=r.seed, faults=r.fault_count, repro=repr(r.repro()),
                          detail=repr(r.detail)))
    return EXIT_CONSTRUCTION if failures else EXIT_OK


def cmd_oracle(args) -> int:
    n = args.n
    if n > 6:
        raise UsageError("the exhaustive oracle is limited to n <= 6")
    bound = fault_bound(n)
    if args.faults is None:
        instances = enumerate_instances(n, bound, reduce=not args.all_endpoints)
        label = f"enumeration |F|<={bound}"
    elif args.trials:
        def sampled():
            for t in range(args.trials):
                yield random_instance(InstanceSpec(n, args.faults, seed=trial_seed(args.seed, n, t)))
        instances = sampled()
        label = f"sample |F|={args.faults}"
    else:
        instances = (inst for inst in enumerate_instances(n, args.faults, reduce=not args.all_endpoints)
                     if len(inst[0]) == args.faults)
        label = f"enumeration |F|={args.faults}"
    total = disagreements = 0
    for F, x, y in instances:
        total += 1
        a = compare(n, F, x, y)
        if not a.agrees:
            disagreements += 1
            print(_record(disagreement=repr(a.problem), n=n, x=cube.format_vertex(n, x),
                          y=cube.format_vertex(n, y)))
            print(format_instance(F), end="")
    if args.machine:
        print(_record(n=n, mode=repr(label), instances=total, disagreements=disagreements))
    else:
        print(f"n={n} {label}: {total} instances, {disagreements} disagreements")
    return EXIT_CONSTRUCTION if disagreements else EXIT_OK


def cmd_bench(args) -> int:
    if not args.machine:
        print(f"{'n':>3} {'trials':>7} {'median ms':>10} {'p99 ms':>10} {'max ms':>10}")
    status = EXIT_OK
    for n in args.n:
        times = []
        for t in range(args.trials):
            s = trial_seed(args.seed, n, t)
            r = run_trial(n, fault_bound(n), s)
            if r.status != "ok":
                status = EXIT_CONSTRUCTION
                print(_record(failure=n, seed=s, repro=repr(r.repro())))
                continue
            times.append(r.seconds * 1000)
        med = statistics.median(times) if times else 0.0
        p99, mx = _pct(times, 0.99), max(times, default=0.0)
        if args.machine:
            print(_record(n=n, trials=len(times), median_ms=f"{med:.3f}", p99_ms=f"{p99:.3f}", max_ms=f"{mx:.3f}"))
        else:
            print(f"{n:>3} {len(times):>7} {med:>10.3f} {p99:>10.3f} {mx:>10.3f}")
    return status


def cmd_gen(args) -> int:
    count = fault_bound(args.n) if args.faults is None else args.faults
    try:
        F, x, y = random_instance(InstanceSpec(args.n, count, seed=args.seed, admissible=not args.any))
    except Unsatisfiable as exc:
        _err(str(exc))
        return EXIT_INADMISSIBLE
    n = args.n
    sys.stdout.write(f"# seed {args.seed}\n# endpoints {cube.format_vertex(n, x)} {cube.format_vertex(n, y)}\n")
    sys.stdout.write(format_instance(F))
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base seed for generated instances")
    common.add_argument("--trials", type=int, default=None, help="number of trials")
    common.add_argument("--machine", action="store_true", help="one key=value record per result")
    common.add_argument("--budget-nodes", type=int, default=None, help="node budget for heuristic search")

    p = argparse.ArgumentParser(prog="hyperlace", description="Hamiltonian paths in hypercubes with faulty edges")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="construct a Hamiltonian path")
    s.add_argument("instance")
    s.add_argument("x", nargs="?")
    s.add_argument("y", nargs="?")
    s.add_argument("--trace", action="store_true", help="print the recursion trace to stderr")
    s.add_argument("--force", action="store_true", help="search inadmissible instances (no guarantee)")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a path against an instance")
    v.add_argument("instance")
    v.add_argument("path")
    v.add_argument("--x", help="expected start (default: first vertex of the path)")
    v.add_argument("--y", help="expected end (default: last vertex of the path)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fuzz", parents=[common], help="solve and verify random instances")
    f.add_argument("--n", type=parse_range, default=parse_range("7..9"))
    f.add_argument("--faults", choices=["max", "uniform", "mixed"], default="mixed")
    f.add_argument("--inadmissible", dest="admissible_only", action="store_false",
                   help="also draw fault sets that break the conditions; counted separately")
    f.add_argument("--jobs", type=int, default=1)
    f.set_defaults(func=cmd_fuzz)

    o = sub.add_parser("oracle", parents=[common], help="compare engine and exhaustive oracle")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--faults", type=int, default=None, help="exact fault count (default: all up to the bound)")
    o.add_argument("--all-endpoints", action="store_true", help="skip the symmetry reduction of endpoints")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", parents=[common], help="solve-time table per dimension")
    b.add_argument("--n", type=parse_range, default=parse_range("5..12"))
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", parents=[common], help="write a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--faults", type=int, default=None, help="fault count (default: the bound)")
    g.add_argument("--any", action="store_true", help="do not require admissibility")
    g.set_defaults(func=cmd_gen)
    return p


TRIAL_DEFAULTS = {"fuzz": 200, "bench": 20}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.trials is None:
        args.trials = TRIAL_DEFAULTS.get(args.command, 0)
    try:
        return args.func(args)
    except InstanceParseError as exc:
        _err(f"{getattr(args, 'instance', '')}: {exc}")
        return EXIT_USAGE
    except (UsageError, cube.CubeError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except Unsatisfiable as exc:
        _err(str(exc))
        return EXIT_INADMISSIBLE


if __name__ == "__main__":
    sys.exit(main())
