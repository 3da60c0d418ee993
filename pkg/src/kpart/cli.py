"""Command-line front end: solve, trace, oracle, verify, and bench.

Exit codes: 0 success, 1 property violation (verify), 2 input error,
3 size-guard violation.
"""

from __future__ import annotations

import argparse
import gc
import json
import random
import sys
import time
from bisect import bisect_left

from .core import (
    Instance,
    InputError,
    Partition,
    SizeLimitError,
    conditional_dist,
    parse_instance,
    subset_sums,
)
from .entropy import conditional_entropy, shannon_entropy
from .huffman import build_huffman, expected_length_bits
from .objectives import compression_cost, evaluate
from .solver import (
    OBJECTIVES,
    brute_force,
    greedy_baseline,
    stopped_huffman,
    verify_lemma2,
    verify_principle_of_optimality,
)

_GROUP_DISPLAY_CAP = 40
_BENCH_RUNS = 3


# --- shared helpers ----------------------------------------------------


def _load_instance(args) -> Instance:
    if args.list is not None:
        return parse_instance(args.list)
    if args.file is not None:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from exc
        return parse_instance(text)
    raise InputError("provide an instance with --list or --file")


def _payload(inst, k, objective, part, trace=None) -> dict:
    rep = evaluate(inst, part)
    out = {
        "instance": list(inst.weights),
        "k": k,
        "objective": objective,
        "partition": part.to_json_dict(),
        "subset_sums": list(subset_sums(inst, part).sums),
        "report": rep.to_json_dict(),
    }
    if trace is not None:
        out["trace"] = {
            "steps": [list(s) for s in trace.steps],
            "final_list": list(trace.final_list),
        }
    return out


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _print_groups(inst, part) -> None:
    sums = subset_sums(inst, part).sums
    for lbl, members in enumerate(part.groups()):
        if len(members) > _GROUP_DISPLAY_CAP:
            print(f"group {lbl}: {len(members)} elements (sum {sums[lbl]})")
        else:
            ws = " ".join(str(inst.weights[e]) for e in members)
            print(f"group {lbl}: {ws} (sum {sums[lbl]})")


def _print_report(inst, rep) -> None:
    print(
        f"L(X|A) = {rep.compression_numerator}/{inst.total}"
        f" = {rep.compression_bits:.6g}"
    )
    print(f"H(A) = {rep.entropy_bits:.6g} bits, H_inf(A) = {rep.min_entropy_bits:.6g} bits")
    line = (
        f"min_diff = {rep.min_diff}, min_max = {rep.min_max}, "
        f"max_min = {rep.max_min}, product_of_sums = {rep.product_of_sums}"
    )
    if rep.product_overflow:
        line += " (outside 64-bit range)"
    print(line)


def _instance_header(inst, k, objective, method) -> str:
    n = len(inst.weights)
    if n > _GROUP_DISPLAY_CAP:
        shown = f"{n} weights"
    else:
        shown = " ".join(str(w) for w in inst.weights)
    return f"instance: {shown} (n={n}, M={inst.total})\nmethod: {method}, k={k}, objective={objective}"


# --- solve --------------------------------------------------------------


def _cmd_solve(args) -> int:
    inst = _load_instance(args)
    k = args.k
    trace = None
    if args.oracle:
        res = brute_force(inst, k, args.objective)
        part = res.optimal_partitions[0]
        method = "oracle"
    elif args.greedy:
        part = greedy_baseline(inst, k)
        method = "greedy"
    elif args.objective == "compression":
        part, trace = stopped_huffman(inst, k)
        method = "stopped-huffman"
    else:
        raise InputError(
            f"objective {args.objective!r} has no direct solver; add --oracle or --greedy"
        )
    payload = _payload(inst, k, args.objective, part, trace)
    if args.json:
        _print_json(payload)
        return 0
    print(_instance_header(inst, k, args.objective, method))
    _print_groups(inst, part)
    _print_report(inst, evaluate(inst, part))
    return 0


# --- trace --------------------------------------------------------------


def _render_merge_lists(inst, trace) -> list[str]:
    """Each intermediate sorted list with merged super-node values marked."""
    values = sorted(inst.weights)
    merged_flag = [False] * len(values)

    def fmt() -> str:
        cells = [
            f"*{v}*" if m else str(v) for v, m in zip(values, merged_flag)
        ]
        return "(" + ", ".join(cells) + ")"

    lines = [fmt()]
    for va, vb, vm in trace.steps:
        for v in (va, vb):
            # merged nodes sit left of equal-valued leaves, so the leftmost
            # match is exactly what the merge loop consumed
            idx = bisect_left(values, v)
            del values[idx]
            del merged_flag[idx]
        idx = bisect_left(values, vm)
        values.insert(idx, vm)
        merged_flag.insert(idx, True)
        lines.append(fmt())
    return lines


def _cmd_trace(args) -> int:
    inst = _load_instance(args)
    part, trace = stopped_huffman(inst, args.k)
    payload = _payload(inst, args.k, "compression", part, trace)
    if args.json:
        _print_json(payload)
        return 0
    for line in _render_merge_lists(inst, trace):
        print(line)
    print("final groups:")
    _print_groups(inst, part)
    return 0


# --- oracle -------------------------------------------------------------


def _cmd_oracle(args) -> int:
    inst = _load_instance(args)
    res = brute_force(inst, args.k, args.objective)
    part = res.optimal_partitions[0]
    payload = _payload(inst, args.k, args.objective, part)
    payload["oracle"] = {
        "best_value": res.best_value,
        "optima_count": len(res.optimal_partitions),
        "partitions_searched": res.partitions_searched,
        "optimal_assignments": [list(p.assignment) for p in res.optimal_partitions],
    }
    if args.json:
        _print_json(payload)
        return 0
    print(_instance_header(inst, args.k, args.objective, "oracle"))
    print(
        f"best value {res.best_value} over {res.partitions_searched} partitions; "
        f"{len(res.optimal_partitions)} optimal"
    )
    _print_groups(inst, part)
    _print_report(inst, evaluate(inst, part))
    shown = res.optimal_partitions[:10]
    print("optimal assignments:")
    for p in shown:
        print(f"  {list(p.assignment)}")
    hidden = len(res.optimal_partitions) - len(shown)
    if hidden:
        print(f"  ... and {hidden} more")
    return 0


# --- verify -------------------------------------------------------------


def _rand_small_instance(rng, max_n: int) -> tuple[Instance, int]:
    n = rng.randint(3, max_n)
    k = rng.randint(2, min(4, n - 1))
    return Instance(tuple(rng.randint(1, 30) for _ in range(n))), k


def _suite_lemma2(seed: int, count: int, max_n: int) -> dict:
    rng = random.Random(f"{seed}:lemma2")
    violations = 0
    for _ in range(count):
        inst, k = _rand_small_instance(rng, max_n)
        if not verify_lemma2(inst, k).ok:
            violations += 1
    return {"name": "lemma2", "checks": count, "violations": violations}


def _suite_theorem1(seed: int, count: int, max_n: int, trials=None) -> dict:
    rng = random.Random(f"{seed}:theorem1")
    checks = 0
    violations = 0
    for _ in range(count):
        inst, k = _rand_small_instance(rng, max_n)
        rep = verify_principle_of_optimality(inst, k, trials)
        checks += rep.recombinations_checked
        violations += rep.violations
    return {"name": "theorem1", "checks": checks, "violations": violations}


def _sandwich_holds(inst, part) -> bool:
    cost = compression_cost(inst, part)
    comp_bits = cost / inst.total
    hxa = conditional_entropy(inst, part)
    if not (hxa <= comp_bits + 1e-9 and comp_bits - 1.0 < hxa + 1e-9):
        return False
    for lbl, members in enumerate(part.groups()):
        if not members:
            continue
        code = build_huffman([inst.weights[e] for e in members])
        expected = expected_length_bits(code)
        h = shannon_entropy(conditional_dist(inst, part, lbl))
        if not (h <= expected + 1e-9 and expected - 1.0 < h + 1e-9):
            return False
    return True


def _suite_sandwich(seed: int, count: int, max_n: int) -> dict:
    rng = random.Random(f"{seed}:sandwich")
    violations = 0
    for _ in range(count):
        n = rng.randint(1, max_n)
        k = rng.randint(1, 5)
        inst = Instance(tuple(rng.randint(1, 50) for _ in range(n)))
        part = Partition(tuple(rng.randrange(k) for _ in range(n)), k)
        if not _sandwich_holds(inst, part):
            violations += 1
    return {"name": "sandwich", "checks": count, "violations": violations}


def _suite_oracle_equivalence(seed: int, count: int, max_n: int) -> dict:
    rng = random.Random(f"{seed}:oracle")
    violations = 0
    for _ in range(count):
        inst, k = _rand_small_instance(rng, max_n)
        part, _ = stopped_huffman(inst, k)
        got = compression_cost(inst, part)
        want = brute_force(inst, k, "compression").best_value
        if got != want:
            violations += 1
    return {"name": "oracle_equivalence", "checks": count, "violations": violations}


def _verify_one_instance(inst, k: int, trials) -> list[dict]:
    suites = []
    n = len(inst.weights)
    if n > k:
        rep = verify_lemma2(inst, k)
        suites.append(
            {"name": "lemma2", "checks": 1, "violations": 0 if rep.ok else 1}
        )
    else:
        suites.append({"name": "lemma2", "checks": 0, "violations": 0})
    t1 = verify_principle_of_optimality(inst, k, trials)
    suites.append(
        {
            "name": "theorem1",
            "checks": t1.recombinations_checked,
            "violations": t1.violations,
        }
    )
    sh_part, _ = stopped_huffman(inst, k)
    parts = [sh_part, greedy_baseline(inst, k)]
    bad = sum(0 if _sandwich_holds(inst, p) else 1 for p in parts)
    suites.append({"name": "sandwich", "checks": len(parts), "violations": bad})
    got = compression_cost(inst, sh_part)
    want = brute_force(inst, k, "compression").best_value
    suites.append(
        {
            "name": "oracle_equivalence",
            "checks": 1,
            "violations": 0 if got == want else 1,
        }
    )
    return suites


def _cmd_verify(args) -> int:
    seed = args.seed
    trials = args.trials
    max_n = args.max_n
    if max_n is not None and max_n < 3:
        raise InputError("--max-n must be at least 3")
    if args.list is not None or args.file is not None:
        inst = _load_instance(args)
        suites = _verify_one_instance(inst, args.k, trials)
    else:
        suites = [
            _suite_lemma2(seed, trials or 200, max_n or 10),
            _suite_theorem1(seed, trials or 30, max_n or 10),
            _suite_sandwich(seed, trials or 1000, max_n or 12),
            _suite_oracle_equivalence(seed, trials or 200, max_n or 10),
        ]
    ok = all(s["violations"] == 0 for s in suites)
    if args.json:
        _print_json({"seed": seed, "suites": suites, "ok": ok})
    else:
        print(f"{'suite':<20} {'checks':>8} {'violations':>11}")
        for s in suites:
            print(f"{s['name']:<20} {s['checks']:>8} {s['violations']:>11}")
        print("all suites passed" if ok else "FAIL: property violations found")
    return 0 if ok else 1


# --- bench --------------------------------------------------------------


def _cmd_bench(args) -> int:
    top = args.max_n if args.max_n is not None else 1 << 20
    if top < 1024:
        raise InputError("--max-n must be at least 1024 for bench")
    k = args.k
    rng = random.Random(f"{args.seed}:bench")
    rows = []
    prev = None
    n = 1024
    while n <= top:
        inst = Instance(tuple(rng.randint(1, 1 << 30) for _ in range(n)))
        best = None
        gc.collect()
        gc.disable()  # collector pauses would distort the ratio column
        try:
            for _ in range(_BENCH_RUNS):
                t0 = time.perf_counter()
                stopped_huffman(inst, k)
                dt = time.perf_counter() - t0
                if best is None or dt < best:
                    best = dt
        finally:
            gc.enable()
        ratio = (best / prev) if prev else None
        rows.append(
            {
                "n": n,
                "seconds": round(best, 6),
                "ratio": round(ratio, 3) if ratio is not None else None,
            }
        )
        prev = best
        n <<= 1
    if args.json:
        _print_json({"k": k, "seed": args.seed, "rows": rows})
    else:
        print(f"{'n':>9} {'seconds':>10} {'ratio':>7}")
        for row in rows:
            ratio = f"{row['ratio']:.3f}" if row["ratio"] is not None else "-"
            print(f"{row['n']:>9} {row['seconds']:>10.6f} {ratio:>7}")
    return 0


# --- argument parsing ---------------------------------------------------


def _add_instance_args(p, with_k=True) -> None:
    if with_k:
        p.add_argument("-k", type=int, required=True, help="number of groups")
    p.add_argument("--list", help="inline instance, comma or whitespace separated")
    p.add_argument("--file", help="read the instance from a file ('#' comments)")
    p.add_argument("--json", action="store_true", help="emit one JSON object")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kpart",
        description=(
            "Multiway number partitioning under entropic and compression "
            "objectives."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="partition an instance under one objective")
    _add_instance_args(ps)
    ps.add_argument(
        "--objective",
        choices=OBJECTIVES,
        default="compression",
        help="objective function (default: compression)",
    )
    mode = ps.add_mutually_exclusive_group()
    mode.add_argument(
        "--oracle", action="store_true", help="exhaustive search, small instances only"
    )
    mode.add_argument(
        "--greedy", action="store_true", help="largest-first greedy baseline"
    )
    ps.set_defaults(func=_cmd_solve)

    pt = sub.add_parser("trace", help="show the merge lists of the stopped Huffman run")
    _add_instance_args(pt)
    pt.set_defaults(func=_cmd_trace)

    po = sub.add_parser("oracle", help="exhaustively optimize one objective")
    _add_instance_args(po)
    po.add_argument(
        "--objective",
        choices=OBJECTIVES,
        default="compression",
        help="objective function (default: compression)",
    )
    po.set_defaults(func=_cmd_oracle)

    pv = sub.add_parser("verify", help="run the seeded property suites")
    pv.add_argument("-k", type=int, default=2, help="groups for single-instance mode")
    pv.add_argument("--list", help="verify this inline instance instead of the sweep")
    pv.add_argument("--file", help="verify the instance in this file")
    pv.add_argument("--json", action="store_true", help="emit one JSON object")
    pv.add_argument("--seed", type=int, default=0, help="suite seed (default 0)")
    pv.add_argument(
        "--trials", type=int, default=None, help="instances per suite (default: full)"
    )
    pv.add_argument(
        "--max-n", type=int, default=None, help="largest instance size per suite"
    )
    pv.set_defaults(func=_cmd_verify)

    pb = sub.add_parser("bench", help="time stopped_huffman over doubling sizes")
    pb.add_argument("-k", type=int, default=16, help="number of groups (default 16)")
    pb.add_argument("--json", action="store_true", help="emit one JSON object")
    pb.add_argument("--seed", type=int, default=0, help="weight seed (default 0)")
    pb.add_argument(
        "--max-n",
        type=int,
        default=None,
        help="largest size to time (default 1048576)",
    )
    pb.set_defaults(func=_cmd_bench)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
