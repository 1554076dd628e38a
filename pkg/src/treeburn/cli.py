"""``treeburn`` command line: gen, bound, verify, solve, bench.

Exit codes: 0 success, 1 a verdict failed, 2 usage or eligibility error,
3 the exact search ran out of budget.  Output is JSON unless ``--format``
says otherwise, and carries no timings unless ``--timing`` is given, so
reruns with the same inputs and seed produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bounds as B
from .burning import is_valid_burning, is_valid_cover, simulate
from .errors import BudgetExceeded, NotEligible, TreeBurnError, TreeError
from .exact import Budget, burning_number_exact
from .generators import GenSpec, generate
from .io import format_edge_list, read_edge_list, read_sequence, to_dot, write_sequence
from .tree import classify, rooted

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ALGOS = {
    "perfect": B.burn_perfect,
    "complete": B.burn_complete,
    "height": B.burn_fbtnp_height,
    "sqrt": B.burn_fbtnp_sqrt_n,
    "improved": B.burn_fbtnp_improved,
}

GEN_FAMILIES = {
    "perfect": ("perfect", ["h"]),
    "complete": ("complete", ["h", "leaves"]),
    "full": ("full_random", ["n", "seed"]),
    "fbtnp": ("fbtnp_random", ["n", "seed"]),
    "three-k-ary": ("three_k_ary_random", ["n", "k", "seed"]),
    "path": ("path", ["n"]),
    "prop1": ("prop1_maximal", ["k"]),
    "random-tree": ("random_tree", ["n", "seed"]),
}


def default_seed() -> int:
    return int(os.environ.get("PYRO_SEED", "0"))


def _dump(obj, fmt: str = "json") -> str:
    if fmt == "text":
        return "\n".join(f"{k}: {v}" for k, v in obj.items()) + "\n"
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _flags(t, root: int) -> dict:
    cl = classify(t, root)
    return {"n": t.n, "root": root, "h": cl.height, "n2": cl.n2, "is_binary": cl.is_binary,
            "is_full": cl.is_full, "is_perfect": cl.is_perfect, "is_complete": cl.is_complete,
            "is_fbtnp": cl.is_fbtnp, "is_3k_ary": cl.is_3k_ary()}


# -- gen -----------------------------------------------------------------------------------------


def cmd_gen(args) -> int:
    family, keys = GEN_FAMILIES[args.family]
    params = {}
    for key in keys:
        val = getattr(args, key)
        if key == "seed":
            val = default_seed() if val is None else val
        if val is None:
            raise SystemExit(_usage(f"gen {args.family} needs --{key}"))
        params[key] = val
    g = generate(GenSpec(family, params))
    text = format_edge_list(g.tree)
    summary = {"spec": json.loads(GenSpec(family, params).to_json()), **_flags(g.tree, g.root)}
    if args.out:
        Path(args.out).write_text(text, newline="\n")
        summary["out"] = args.out
        if g.witness is not None:
            wpath = args.witness or str(Path(args.out).with_suffix(".seq"))
            write_sequence(g.witness, wpath)
            summary["witness"] = wpath
        if args.dot:
            Path(args.dot).write_text(to_dot(g.tree), newline="\n")
        sys.stdout.write(_dump(summary, args.format))
    else:
        sys.stdout.write(text)
        sys.stderr.write(_dump(summary))
    return EXIT_OK


def _usage(msg: str) -> int:
    sys.stderr.write(f"treeburn: {msg}\n")
    return EXIT_USAGE


# -- bound ---------------------------------------------------------------------------------------


def pick_auto(t, root: int) -> str:
    cl = classify(t, root)
    if cl.is_perfect:
        return "perfect"
    if cl.is_complete and cl.height >= 1:
        return "complete"
    if cl.is_branching and t.n > 1:
        return "improved"
    return "general"


def run_bound(t, root: int, algo: str):
    if algo == "auto":
        algo = pick_auto(t, root)
    if algo == "general":
        return algo, B.burn_general_tree(t, root)
    return algo, ALGOS[algo](rooted(t, root))


def cmd_bound(args) -> int:
    t = read_edge_list(args.tree)
    checks = set(args.check.split(",")) if args.check else {"validate"}
    t0 = time.perf_counter()
    try:
        algo, res = run_bound(t, args.root, args.algo)
    except NotEligible as exc:
        return _usage(f"{args.algo}: {exc}")
    report = {"input": str(args.tree), "algorithm": algo, "result": res.to_json(),
              "verdicts": {"within_bound": res.steps_used <= res.claimed_bound}}
    if "validate" in checks:
        report["verdicts"]["strict_valid"] = bool(is_valid_burning(t, res.sequence))
        report["verdicts"]["cover_valid"] = is_valid_cover(t, res.sequence)
        report["verdicts"]["quotas"] = all(a["ok"] for a in B.audit(res))
    if "oracle" in checks:
        try:
            ora = burning_number_exact(t, Budget(args.max_nodes, args.max_seconds))
        except BudgetExceeded as exc:
            report["oracle"] = {"budget_exceeded": str(exc), "upper_bound": exc.upper_bound}
        else:
            report["oracle"] = {"b": ora.b, "witness": list(ora.witness.sources)}
            report["verdicts"]["not_below_optimum"] = res.steps_used >= ora.b
    if args.timing:
        report["wall_clock"] = round(time.perf_counter() - t0, 6)
    ok = all(report["verdicts"].values())
    if args.format == "dot":
        sys.stdout.write(to_dot(t, highlight=res.sequence.sources))
    elif args.format == "csv":
        w = io.StringIO()
        cw = csv.writer(w, lineterminator="\n")
        cw.writerow(["algorithm", "n", "steps_used", "claimed_bound", "valid"])
        cw.writerow([algo, t.n, res.steps_used, res.claimed_bound, ok])
        sys.stdout.write(w.getvalue())
    else:
        sys.stdout.write(_dump(report, args.format))
    return EXIT_OK if ok else EXIT_FAIL


# -- verify --------------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    t = read_edge_list(args.tree)
    seq = read_sequence(args.sequence)
    strict = is_valid_burning(t, seq, strict=True)
    trace = simulate(t, seq)
    out = {
        "k": len(seq),
        "strict": {"valid": strict.valid, "reason": strict.reason},
        "lenient": bool(is_valid_burning(t, seq, strict=False)),
        "cover": is_valid_cover(t, seq) if len(set(seq)) == len(seq) else False,
        "burned_per_step": [len(b) for b in trace.burned_after],
        "collisions": trace.collisions,
    }
    if args.format == "dot":
        sys.stdout.write(to_dot(t, highlight=seq))
    else:
        sys.stdout.write(_dump(out, args.format))
    return EXIT_OK if strict.valid else EXIT_FAIL


# -- solve ---------------------------------------------------------------------------------------


def cmd_solve(args) -> int:
    t = read_edge_list(args.tree)
    try:
        res = burning_number_exact(t, Budget(args.max_nodes, args.max_seconds))
    except BudgetExceeded as exc:
        sys.stdout.write(_dump({"budget_exceeded": str(exc), "upper_bound": exc.upper_bound,
                                "nodes_explored": exc.nodes}, args.format))
        return EXIT_BUDGET
    out = res.to_json()
    if not args.timing:
        out.pop("elapsed")
    sys.stdout.write(_dump(out, args.format))
    return EXIT_OK


# -- bench ---------------------------------------------------------------------------------------


def _bench_specs(args) -> list:
    if args.corpus:
        lines = Path(args.corpus).read_text().splitlines()
        return [GenSpec.from_json(x) for x in lines if x.strip()]
    family, keys = GEN_FAMILIES[args.family]
    seed = default_seed() if args.seed is None else args.seed
    sizes = _parse_sizes(args.sizes)
    specs = []
    if "leaves" in keys:
        raise SystemExit(_usage("bench cannot sweep complete trees by size; use --corpus"))
    for rep in range(args.count):
        for n in sizes:
            p = {keys[0]: n}
            if "seed" in keys:
                p["seed"] = seed * 100_003 + rep
            if "k" in keys:
                p["k"] = args.k
            specs.append(GenSpec(family, p))
    return specs


def _parse_sizes(text: str) -> list:
    out = []
    for part in text.split(","):
        if ":" in part:
            bits = [int(x) for x in part.split(":")]
            lo, hi = bits[0], bits[1]
            step = bits[2] if len(bits) > 2 else 1
            out.extend(range(lo, hi + 1, step))
        else:
            out.append(int(part))
    return out


def bench_row(spec_json: str, algos: tuple, oracle_max_n: int) -> dict:
    spec = GenSpec.from_json(spec_json)
    g = generate(spec)
    t, root = g.tree, g.root
    cl = classify(t, root)
    row = {"spec": spec_json, "n": t.n, "n2": cl.n2, "h": cl.height,
           "sqrt_n": B.ceil_sqrt(t.n), "bessy": B.bessy_bound(t.n, cl.n2), "violations": 0}
    for algo in algos:
        if algo == "oracle":
            continue
        try:
            _, res = run_bound(t, root, algo)
        except NotEligible:
            row[f"{algo}_steps"] = row[f"{algo}_bound"] = None
            continue
        ok = bool(is_valid_burning(t, res.sequence)) and res.steps_used <= res.claimed_bound
        row[f"{algo}_steps"] = res.steps_used
        row[f"{algo}_bound"] = res.claimed_bound
        row["violations"] += 0 if ok else 1
    if "oracle" in algos and t.n <= oracle_max_n:
        row["oracle_b"] = burning_number_exact(t).b
        for algo in algos:
            s = row.get(f"{algo}_steps")
            if algo != "oracle" and s is not None and s < row["oracle_b"]:
                row["violations"] += 1
    return row


def cmd_bench(args) -> int:
    specs = [s.to_json() for s in _bench_specs(args)]
    algos = tuple(a for a in args.algos.split(",") if a)
    jobs = [(s, algos, args.oracle_max_n) for s in specs]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            rows = list(ex.map(bench_row, *zip(*jobs)))  # map keeps input order
    else:
        rows = [bench_row(*j) for j in jobs]
    ratios = [r[f"{a}_steps"] / r["sqrt_n"] for r in rows for a in algos
              if r.get(f"{a}_steps") is not None]
    agg = {"instances": len(rows), "violations": sum(r["violations"] for r in rows),
           "max_ratio_steps_over_sqrt_n": round(max(ratios), 6) if ratios else None}
    if args.format == "csv":
        cols = sorted({k for r in rows for k in r})
        w = io.StringIO()
        dw = csv.DictWriter(w, fieldnames=cols, lineterminator="\n")
        dw.writeheader()
        dw.writerows(rows)
        sys.stdout.write(w.getvalue())
        sys.stderr.write(_dump(agg))
    else:
        sys.stdout.write(_dump({"rows": rows, "aggregate": agg}))
    return EXIT_OK if agg["violations"] == 0 else EXIT_FAIL


# -- parser --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treeburn", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def fmt(p, choices=("json", "text")):
        p.add_argument("--format", choices=choices, default="json")

    g = sub.add_parser("gen", help="generate a tree family as an edge list")
    g.add_argument("family", choices=sorted(GEN_FAMILIES))
    for key in ("h", "leaves", "n", "k", "seed"):
        g.add_argument(f"--{key}", type=int)
    g.add_argument("--out")
    g.add_argument("--dot", help="also write a DOT drawing here")
    g.add_argument("--witness", help="witness sequence path (prop1 only)")
    fmt(g)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bound", help="run a constructive burner and check it")
    b.add_argument("tree")
    b.add_argument("--algo", choices=sorted(ALGOS) + ["general", "auto"], default="auto")
    b.add_argument("--root", type=int, default=0)
    b.add_argument("--check", default="validate", help="comma list of validate,oracle")
    b.add_argument("--max-nodes", type=int, default=Budget.max_nodes)
    b.add_argument("--max-seconds", type=float, default=Budget.max_seconds)
    b.add_argument("--timing", action="store_true")
    fmt(b, ("json", "text", "csv", "dot"))
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", help="check a sequence file against a tree")
    v.add_argument("tree")
    v.add_argument("sequence")
    fmt(v, ("json", "text", "dot"))
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="exact burning number by branch and bound")
    s.add_argument("tree")
    s.add_argument("--max-nodes", type=int, default=Budget.max_nodes)
    s.add_argument("--max-seconds", type=float, default=Budget.max_seconds)
    s.add_argument("--timing", action="store_true")
    fmt(s)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("bench", help="run burners over a generated corpus")
    c.add_argument("--family", choices=sorted(GEN_FAMILIES), default="fbtnp")
    c.add_argument("--sizes", default="5:99:2", help="e.g. 5:99:2 or 11,21,31")
    c.add_argument("--count", type=int, default=1, help="instances per size")
    c.add_argument("--k", type=int, default=3, help="child cap for three-k-ary")
    c.add_argument("--seed", type=int)
    c.add_argument("--corpus", help="file of GenSpec JSON lines (overrides --family)")
    c.add_argument("--algos", default="sqrt,improved")
    c.add_argument("--oracle-max-n", type=int, default=16)
    c.add_argument("--workers", type=int, default=1)
    fmt(c, ("json", "csv"))
    c.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (TreeError, OSError, ValueError) as exc:
        return _usage(str(exc))
    except TreeBurnError as exc:
        sys.stderr.write(f"treeburn: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
