"""Command line front end: solve, verify, gen, bench, selftest.

Reports on stdout are byte-stable for identical (instance, config, seed);
wall-clock timings therefore go to stderr.  Exit codes: 0 solved/valid/pass,
2 infeasible/invalid, 1 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import reduction
from .errors import ParseError, PikdomError
from .fast import solve_fast
from .model import (
    derive_graph,
    format_rational,
    generate_random,
    parse_model,
    parse_rational,
    serialize_model,
)
from .oracle import VertexSet, brute_force_min, find_violation
from .reduction import DEFAULT_NODE_CAP, build_digraph, dump_digraph, solve_naive
from .selftest import run_selftest

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

ENGINES = ("fast", "naive", "brute")


@dataclass
class RunConfig:
    command: str
    variant: str = "total"
    k: int = 1
    algo: str = "fast"
    input_path: str | None = None
    set_path: str | None = None
    fmt: str = "text"
    seed: int = 0
    n: int = 0
    stretch: Fraction = Fraction(3)
    cap_nodes: int = DEFAULT_NODE_CAP
    cap_brute: int = 20
    dump_dag: str | None = None
    stats: bool = False
    quick: bool = False
    e1_rule: str = reduction.E1_COST_NEW


def _env_seed(seed: int) -> int:
    raw = os.environ.get("PIKDOM_SEED")
    if raw is not None:
        return int(raw)
    return seed


def _cost_payload(cost: Fraction | None):
    if cost is None:
        return None
    if cost.denominator == 1:
        return cost.numerator
    return f"{cost.numerator}/{cost.denominator}"


def _solve_with(cfg: RunConfig, model):
    if cfg.algo == "fast":
        return solve_fast(
            model, cfg.k, cfg.variant, model.weighted,
            cap_nodes=cfg.cap_nodes, e1_rule=cfg.e1_rule,
        )
    if cfg.algo == "naive":
        return solve_naive(
            model, cfg.k, cfg.variant, model.weighted,
            cap_nodes=cfg.cap_nodes, e1_rule=cfg.e1_rule,
        )
    return brute_force_min(model, cfg.k, cfg.variant, model.weighted, cap=cfg.cap_brute)


def cmd_solve(cfg: RunConfig) -> int:
    text = Path(cfg.input_path).read_text()
    model = parse_model(text)
    t0 = time.perf_counter()
    sol = _solve_with(cfg, model)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    if cfg.dump_dag:
        dg = build_digraph(
            model, cfg.k, cfg.variant, model.weighted,
            cap_nodes=cfg.cap_nodes, e1_rule=cfg.e1_rule,
        )
        Path(cfg.dump_dag).write_text(dump_digraph(dg))
    report = {
        "feasible": sol.feasible,
        "cost": _cost_payload(sol.cost),
        "set": list(sol.vertices),
        "engine": sol.engine,
        "k": cfg.k,
        "variant": cfg.variant,
        "n": model.n,
    }
    if cfg.stats and sol.stats is not None:
        report["stats"] = sol.stats
    if cfg.fmt == "json":
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        print(f"feasible: {'yes' if sol.feasible else 'no'}")
        if sol.feasible:
            print(f"cost: {format_rational(sol.cost)}")
            print("set: " + " ".join(str(v) for v in sol.vertices))
        print(f"engine: {sol.engine}")
        print(f"k: {cfg.k}")
        print(f"variant: {cfg.variant}")
        print(f"n: {model.n}")
        if cfg.stats and sol.stats is not None:
            for key in sorted(sol.stats):
                print(f"stats.{key}: {sol.stats[key]}")
    print(f"time: {elapsed_ms:.1f} ms", file=sys.stderr)
    return EXIT_OK if sol.feasible else EXIT_INFEASIBLE


def _parse_set_file(text: str) -> VertexSet:
    ids = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        payload = raw.split("#", 1)[0].strip()
        if not payload:
            continue
        try:
            ids.append(int(payload))
        except ValueError as exc:
            raise ParseError(f"set file line {lineno}: bad vertex id {payload!r}") from exc
    return VertexSet.of(ids)


def cmd_verify(cfg: RunConfig) -> int:
    model = parse_model(Path(cfg.input_path).read_text())
    vset = _parse_set_file(Path(cfg.set_path).read_text())
    graph = derive_graph(model)
    violation = find_violation(graph, vset, cfg.k, cfg.variant)
    if cfg.fmt == "json":
        report = {"valid": violation is None}
        if violation is not None:
            report["vertex"], report["neighbors_inside"] = violation
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    elif violation is None:
        print("valid")
    else:
        v, cnt = violation
        print(f"invalid: vertex {v} has {cnt} neighbors in the set, needs {cfg.k}")
    return EXIT_OK if violation is None else EXIT_INFEASIBLE


def cmd_gen(cfg: RunConfig) -> int:
    model = generate_random(cfg.n, cfg.seed, cfg.stretch)
    text = serialize_model(model)
    if cfg.input_path:
        Path(cfg.input_path).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_instances(cfg: RunConfig, args):
    if args.dir is not None:
        paths = sorted(Path(args.dir).glob("*.txt"))
        if not paths:
            raise ParseError(f"no *.txt instances in {args.dir}")
        for p in paths:
            yield p.name, parse_model(p.read_text())
        return
    for n in range(args.n_min, args.n_max + 1):
        for rep in range(args.reps):
            label = f"gen-n{n}-r{rep}"
            yield label, generate_random(n, cfg.seed + 977 * n + rep, cfg.stretch)


def cmd_bench(cfg: RunConfig, args) -> int:
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in engines:
        if e not in ENGINES:
            raise ParseError(f"unknown engine {e!r}")
    rows = ["n,k,variant,engine,nodes,arcs_or_tests,wall_ms,cost"]
    for label, model in _bench_instances(cfg, args):
        seen: dict[str, object] = {}
        for engine in engines:
            sub = RunConfig(
                command="solve", variant=cfg.variant, k=cfg.k, algo=engine,
                cap_nodes=cfg.cap_nodes, cap_brute=cfg.cap_brute, e1_rule=cfg.e1_rule,
            )
            t0 = time.perf_counter()
            sol = _solve_with(sub, model)
            wall_ms = (time.perf_counter() - t0) * 1000.0
            stats = sol.stats or {}
            nodes = stats.get("nodes", 0)
            work = stats.get(
                "arcs", stats.get("representative_tests", stats.get("subsets_scanned", 0))
            )
            cost = format_rational(sol.cost) if sol.feasible else "-"
            seen[engine] = (sol.feasible, sol.cost)
            rows.append(
                f"{model.n},{cfg.k},{cfg.variant},{engine},{nodes},{work},"
                f"{wall_ms:.2f},{cost}"
            )
        if len(set(seen.values())) > 1:
            print("\n".join(rows))
            print(f"bench: engines disagree on {label}: {seen}", file=sys.stderr)
            sys.stderr.write(serialize_model(model))
            return EXIT_ERROR
    print("\n".join(rows))
    return EXIT_OK


def cmd_selftest(cfg: RunConfig, inject_fault: bool) -> int:
    if inject_fault:
        reduction._FAULTS.add("e0-relax")
    try:
        ok = run_selftest(seed=cfg.seed, quick=cfg.quick)
    finally:
        reduction._FAULTS.discard("e0-relax")
    return EXIT_OK if ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pikdom",
        description="Exact k-domination and total k-domination on proper interval models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_problem_flags(p):
        p.add_argument("--variant", choices=("kdom", "total"), required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_solve = sub.add_parser("solve", help="solve one instance file")
    p_solve.add_argument("instance")
    add_problem_flags(p_solve)
    p_solve.add_argument("--algo", choices=ENGINES, default="fast")
    p_solve.add_argument("--dump-dag", metavar="PATH", default=None)
    p_solve.add_argument("--stats", action="store_true")
    p_solve.add_argument("--cap-nodes", type=int, default=DEFAULT_NODE_CAP)
    p_solve.add_argument("--cap-brute", type=int, default=20)
    p_solve.add_argument(
        "--e1-rule", choices=reduction.E1_COST_RULES, default=reduction.E1_COST_NEW,
        help="weighted slide-arc charge (diagnostic; 'min' is known bad)",
    )

    p_verify = sub.add_parser("verify", help="check a candidate set file")
    p_verify.add_argument("instance")
    p_verify.add_argument("setfile")
    add_problem_flags(p_verify)

    p_gen = sub.add_parser("gen", help="generate a random instance")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--stretch", default="3")
    p_gen.add_argument("--out", metavar="PATH", default=None)

    p_bench = sub.add_parser("bench", help="CSV benchmark over instances")
    p_bench.add_argument("--dir", default=None, help="directory of *.txt instances")
    p_bench.add_argument("--n-min", type=int, default=8)
    p_bench.add_argument("--n-max", type=int, default=12)
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--variant", choices=("kdom", "total"), default="total")
    p_bench.add_argument("--k", type=int, default=1)
    p_bench.add_argument("--engines", default="fast,naive")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--stretch", default="3")
    p_bench.add_argument("--cap-nodes", type=int, default=DEFAULT_NODE_CAP)
    p_bench.add_argument("--cap-brute", type=int, default=20)
    p_bench.add_argument(
        "--e1-rule", choices=reduction.E1_COST_RULES, default=reduction.E1_COST_NEW
    )

    p_self = sub.add_parser("selftest", help="run the built-in agreement suite")
    p_self.add_argument("--quick", action="store_true")
    p_self.add_argument("--seed", type=int, default=0)
    p_self.add_argument(
        "--inject-fault", action="store_true", help=argparse.SUPPRESS
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            cfg = RunConfig(
                command="solve", variant=args.variant, k=args.k, algo=args.algo,
                input_path=args.instance, fmt=args.format,
                cap_nodes=args.cap_nodes, cap_brute=args.cap_brute,
                dump_dag=args.dump_dag, stats=args.stats, e1_rule=args.e1_rule,
            )
            return cmd_solve(cfg)
        if args.command == "verify":
            cfg = RunConfig(
                command="verify", variant=args.variant, k=args.k,
                input_path=args.instance, set_path=args.setfile, fmt=args.format,
            )
            return cmd_verify(cfg)
        if args.command == "gen":
            cfg = RunConfig(
                command="gen", n=args.n, seed=_env_seed(args.seed),
                stretch=parse_rational(args.stretch), input_path=args.out,
            )
            return cmd_gen(cfg)
        if args.command == "bench":
            cfg = RunConfig(
                command="bench", variant=args.variant, k=args.k,
                seed=_env_seed(args.seed), stretch=parse_rational(args.stretch),
                cap_nodes=args.cap_nodes, cap_brute=args.cap_brute,
                e1_rule=args.e1_rule,
            )
            return cmd_bench(cfg, args)
        cfg = RunConfig(
            command="selftest", seed=_env_seed(args.seed), quick=args.quick
        )
        return cmd_selftest(cfg, args.inject_fault)
    except PikdomError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error[E_IO]: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
