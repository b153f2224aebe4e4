"""Command-line harness: generators, checkers, theorem campaigns, and hunts.

Exit codes: 0 = property holds / run complete, 1 = property fails or a
certificate is incomplete, 2 = usage or parse error, 3 = budget exhausted
(Unknown). All structured output is JSON with sorted keys; identical
command line and seed reproduce identical bytes, except for a timestamp
field that ``--reproducible`` suppresses.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from math import comb
from pathlib import Path
from random import Random

from .berge import berge_circumference, find_berge_cycle, verify_berge_cycle
from .families import (
    classify_voss,
    complete_bipartite_graph,
    complete_hypergraph,
    construction_1,
    construction_2,
    construction_3,
    generate_voss,
)
from .graphs import DEFAULT_BUDGET, Outcome
from .hypergraph import (
    Hypergraph,
    ParseError,
    min_degree,
    parse_graph,
    parse_hypergraph,
    serialize_graph,
    serialize_hypergraph,
    two_shadow,
)
from .pipeline import degree_threshold, extract_pancyclicity

PRNG_ID = "python-random-mt19937"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _emit(payload: dict, out: str | None, reproducible: bool) -> None:
    doc = dict(payload)
    if not reproducible:
        doc["generated_at"] = _timestamp()
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_hypergraph(path: str) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


# ---------------------------------------------------------------------------
# Seeded instance generation


def derive_instance_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index) & 0x7FFFFFFF


def sample_hypergraph_with_floor(n: int, r: int, floor: int, seed: int) -> Hypergraph:
    """Random r-uniform hypergraph with min degree >= floor.

    Starts from about n*log(n) random edges, then repeatedly adds a random
    edge through the current minimum-degree vertex. Uniformity is not the
    point; covering the threshold regime reproducibly is.
    """
    if comb(n - 1, r - 1) < floor:
        raise ValueError(f"degree floor {floor} unachievable for n={n}, r={r}")
    rng = Random(seed)
    edges: set[tuple[int, ...]] = set()
    degs = [0] * n

    def add(edge: tuple[int, ...]) -> bool:
        if edge in edges:
            return False
        edges.add(edge)
        for v in edge:
            degs[v] += 1
        return True

    initial = max(n, int(n * math.log(n)))
    for _ in range(initial):
        add(tuple(sorted(rng.sample(range(n), r))))
    while True:
        v = min(range(n), key=lambda u: (degs[u], u))
        if degs[v] >= floor:
            break
        added = False
        for _ in range(200):
            others = rng.sample([u for u in range(n) if u != v], r - 1)
            if add(tuple(sorted(others + [v]))):
                added = True
                break
        if not added:
            # Near saturation at v: take the first missing edge through it.
            import itertools

            for rest in itertools.combinations([u for u in range(n) if u != v], r - 1):
                if add(tuple(sorted(rest + (v,)))):
                    added = True
                    break
            if not added:
                raise RuntimeError("vertex saturated below floor; unreachable after gate")
    return Hypergraph(n, r, tuple(sorted(edges)))


def resolve_floor(n: int, r: int, mode: str, value: int | None) -> int:
    if mode == "at-threshold":
        return degree_threshold(n, r) - 1
    if mode == "threshold-plus":
        return degree_threshold(n, r)
    if mode == "absolute":
        if value is None:
            raise ValueError("absolute floor mode needs --floor-value")
        return value
    raise ValueError(f"unknown floor mode {mode!r}")


# ---------------------------------------------------------------------------
# gen


def _generate_family(args) -> tuple[str, str]:
    """Returns (kind, canonical text) where kind is 'hypergraph' or 'graph'."""
    family = args.family.lower()
    if family == "c1":
        return "hypergraph", serialize_hypergraph(construction_1(args.n, args.r, args.seed))
    if family == "c2":
        return "hypergraph", serialize_hypergraph(construction_2(args.n, args.r))
    if family == "c3":
        if args.k is None:
            raise ValueError("c3 needs --k")
        return "hypergraph", serialize_hypergraph(construction_3(args.k))
    if family == "kr":
        return "hypergraph", serialize_hypergraph(complete_hypergraph(args.n, args.r))
    if family == "kab":
        if args.a is None or args.b is None:
            raise ValueError("kab needs --a and --b")
        return "graph", serialize_graph(complete_bipartite_graph(args.a, args.b))
    if family.startswith("voss:"):
        cls = family.split(":", 1)[1].upper()
        if args.k is None:
            raise ValueError("voss families need --k")
        g, _ = generate_voss(cls, args.k, e0_present=args.e0, seed=args.seed)
        return "graph", serialize_graph(g)
    if family == "random":
        if args.n is None or args.r is None:
            raise ValueError("random needs --n and --r")
        floor = resolve_floor(args.n, args.r, args.delta_floor, args.floor_value)
        seed = args.seed if args.seed is not None else 0
        h = sample_hypergraph_with_floor(args.n, args.r, floor, seed)
        return "hypergraph", serialize_hypergraph(h)
    raise ValueError(f"unknown family {args.family!r}")


def cmd_gen(args) -> int:
    try:
        _, text = _generate_family(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_text(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    mode = args.mode
    try:
        if mode == "voss":
            g = parse_graph(Path(args.input).read_text())
            classification = classify_voss(g)
            payload = {
                "command": "check voss",
                "outcome": classification.outcome.value,
            }
            if classification.witness:
                w = classification.witness
                payload["witness"] = {
                    "class": w.cls,
                    "k": w.k,
                    "part1": list(w.part1),
                    "part2": list(w.part2),
                    "x0": w.x0,
                    "e0": list(w.e0) if w.e0 else None,
                }
            _emit(payload, args.out, args.reproducible)
            if classification.outcome is Outcome.FOUND:
                return EXIT_OK
            if classification.outcome is Outcome.ABSENT:
                return EXIT_FAIL
            return EXIT_UNKNOWN
        h = _read_hypergraph(args.input)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if mode == "shadow":
        _write_text(serialize_graph(two_shadow(h)), args.out)
        return EXIT_OK

    if mode == "pancyclic":
        cert = extract_pancyclicity(h, args.budget)
        payload = {"command": "check pancyclic", "certificate": cert.to_json_dict()}
        _emit(payload, args.out, args.reproducible)
        if cert.complete:
            return EXIT_OK
        if cert.missing:
            return EXIT_FAIL
        return EXIT_UNKNOWN

    if mode == "berge-cycle":
        if args.length is None:
            print("error: berge-cycle mode needs --length", file=sys.stderr)
            return EXIT_USAGE
        try:
            res = find_berge_cycle(h, args.length, args.budget)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        payload = {
            "command": "check berge-cycle",
            "length": args.length,
            "outcome": res.outcome.value,
            "stats": {"expanded": res.expanded, "matching_checks": res.matching_checks},
        }
        if res.cycle:
            payload["cycle"] = {
                "vertices": list(res.cycle.vertices),
                "edges": list(res.cycle.edges),
            }
        _emit(payload, args.out, args.reproducible)
        if res.outcome is Outcome.FOUND:
            return EXIT_OK
        if res.outcome is Outcome.ABSENT:
            return EXIT_FAIL
        return EXIT_UNKNOWN

    if mode == "circumference":
        res = berge_circumference(h, args.budget)
        payload = {
            "command": "check circumference",
            "outcome": res.outcome.value,
            "circumference": res.length,
            "stats": {"expanded": res.expanded},
        }
        _emit(payload, args.out, args.reproducible)
        if res.outcome is Outcome.UNKNOWN:
            return EXIT_UNKNOWN
        return EXIT_OK

    print(f"error: unknown check mode {mode!r}", file=sys.stderr)
    return EXIT_USAGE


# ---------------------------------------------------------------------------
# verify-theorem


@dataclass(frozen=True)
class CampaignConfig:
    n: int
    r: int
    samples: int
    seed: int
    floor_mode: str
    floor_value: int | None
    budget: int

    def floor(self) -> int:
        return resolve_floor(self.n, self.r, self.floor_mode, self.floor_value)


def _run_theorem_instance(packed) -> dict:
    n, r, floor, instance_seed, budget = packed
    h = sample_hypergraph_with_floor(n, r, floor, instance_seed)
    cert = extract_pancyclicity(h, budget)
    status = "complete" if cert.complete else ("incomplete" if cert.missing else "unknown")
    record = {
        "seed": instance_seed,
        "status": status,
        "min_degree": min_degree(h),
        "edge_count": len(h.edges),
        "certificate": cert.to_json_dict(),
    }
    if status != "complete":
        record["hypergraph"] = serialize_hypergraph(h)
    return record


def cmd_verify_theorem(args) -> int:
    config = CampaignConfig(
        n=args.n,
        r=args.r,
        samples=args.samples,
        seed=args.seed if args.seed is not None else 0,
        floor_mode=args.delta_floor,
        floor_value=args.floor_value,
        budget=args.budget,
    )
    try:
        floor = config.floor()
        if comb(config.n - 1, config.r - 1) < floor:
            raise ValueError(
                f"degree floor {floor} unachievable for n={config.n}, r={config.r}"
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    jobs = [
        (config.n, config.r, floor, derive_instance_seed(config.seed, i), config.budget)
        for i in range(config.samples)
    ]
    if args.workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            records = list(pool.map(_run_theorem_instance, jobs))
    else:
        records = [_run_theorem_instance(job) for job in jobs]

    counts = {"complete": 0, "incomplete": 0, "unknown": 0}
    artifacts = []
    for record in records:
        counts[record["status"]] += 1
        if record["status"] != "complete":
            artifacts.append(record)
    if args.artifact_dir and artifacts:
        art_dir = Path(args.artifact_dir)
        art_dir.mkdir(parents=True, exist_ok=True)
        for record in artifacts:
            name = f"incomplete-n{config.n}-r{config.r}-seed{record['seed']}.json"
            (art_dir / name).write_text(
                json.dumps(record, indent=2, sort_keys=True) + "\n"
            )
    payload = {
        "command": "verify-theorem",
        "config": {
            "n": config.n,
            "r": config.r,
            "samples": config.samples,
            "seed": config.seed,
            "floor_mode": config.floor_mode,
            "floor": floor,
            "budget": config.budget,
            "prng": PRNG_ID,
        },
        "counts": counts,
        "instances": [
            {"seed": rec["seed"], "status": rec["status"], "min_degree": rec["min_degree"]}
            for rec in records
        ],
    }
    _emit(payload, args.out, args.reproducible)
    if counts["incomplete"]:
        return EXIT_FAIL
    if counts["unknown"]:
        return EXIT_UNKNOWN
    return EXIT_OK


# ---------------------------------------------------------------------------
# sharpness


def cmd_sharpness(args) -> int:
    n, r = args.n, args.r
    try:
        h1 = construction_1(n, r)
        h2 = construction_2(n, r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    expected = degree_threshold(n, r) - 1
    report: dict = {"command": "sharpness", "n": n, "r": r, "expected_min_degree": expected}
    ok = True
    unknown = False
    for name, h in (("construction_1", h1), ("construction_2", h2)):
        entry: dict = {"min_degree": min_degree(h), "edge_count": len(h.edges)}
        entry["min_degree_ok"] = entry["min_degree"] == expected
        res = find_berge_cycle(h, n, args.budget)
        entry["hamiltonian_search"] = res.outcome.value
        entry["no_hamiltonian_berge_cycle"] = res.outcome is Outcome.ABSENT
        if res.outcome is Outcome.UNKNOWN:
            unknown = True
        ok = ok and entry["min_degree_ok"] and entry["no_hamiltonian_berge_cycle"]
        report[name] = entry
    circ = berge_circumference(h1, args.budget)
    report["construction_1"]["circumference"] = circ.length
    expected_circ = (n + 1) // 2
    report["construction_1"]["circumference_ok"] = circ.length == expected_circ
    if circ.outcome is Outcome.UNKNOWN:
        unknown = True
    ok = ok and circ.length == expected_circ
    report["pass"] = ok and not unknown
    _emit(report, args.out, args.reproducible)
    if unknown:
        return EXIT_UNKNOWN
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# hunt


def cmd_hunt(args) -> int:
    """Randomized hunt for Berge-hamiltonian but non-pancyclic hypergraphs.

    Builds a hamiltonian instance from a tight-cycle skeleton plus random
    edges, locally minimizes the edge count subject to hamiltonicity, then
    tests the small even lengths. Empty findings is the normal outcome.
    """
    if args.r < 4:
        print("error: hunt needs r >= 4 (r = 3 is answered by construction c3)", file=sys.stderr)
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else 0
    rng = Random(seed)
    findings = []
    lines = []
    for n in range(args.n_min, args.n_max + 1):
        if n < 2 * args.r:
            continue
        skeleton = [
            tuple(sorted((i + j) % n for j in range(args.r))) for i in range(n)
        ]
        edges = set(skeleton)
        extra_target = max(n // 2, 2)
        while len(edges) < len(skeleton) + extra_target:
            edges.add(tuple(sorted(rng.sample(range(n), args.r))))
        h = Hypergraph(n, args.r, tuple(sorted(edges)))
        if find_berge_cycle(h, n, args.budget).outcome is not Outcome.FOUND:
            continue
        # Local minimization: drop random edges while hamiltonicity survives.
        edge_list = sorted(edges)
        for _ in range(args.steps):
            if len(edge_list) <= n:
                break
            victim = rng.choice(edge_list)
            trial = Hypergraph(n, args.r, tuple(e for e in edge_list if e != victim))
            if find_berge_cycle(trial, n, args.budget).outcome is Outcome.FOUND:
                edge_list = sorted(trial.edges)
        h = Hypergraph(n, args.r, tuple(edge_list))
        ham = find_berge_cycle(h, n, args.budget)
        if ham.outcome is not Outcome.FOUND:
            continue
        for length in range(4, n, 2):
            res = find_berge_cycle(h, length, args.budget)
            if res.outcome is Outcome.ABSENT:
                if not verify_berge_cycle(h, ham.cycle).ok:
                    continue
                recheck = find_berge_cycle(h, length, args.budget)
                if recheck.outcome is not Outcome.ABSENT:
                    continue
                finding = {
                    "n": n,
                    "r": args.r,
                    "missing_length": length,
                    "hypergraph": serialize_hypergraph(h),
                    "hamiltonian_witness": {
                        "vertices": list(ham.cycle.vertices),
                        "edges": list(ham.cycle.edges),
                    },
                    "absent_stats": {
                        "expanded": res.expanded,
                        "matching_checks": res.matching_checks,
                    },
                    "seed": seed,
                }
                findings.append(finding)
                lines.append(json.dumps(finding, sort_keys=True))
                break
    payload = {
        "command": "hunt",
        "r": args.r,
        "n_range": [args.n_min, args.n_max],
        "seed": seed,
        "prng": PRNG_ID,
        "findings": findings,
    }
    _emit(payload, args.out, args.reproducible)
    return EXIT_OK


def cmd_classify_voss(args) -> int:
    args.mode = "voss"
    return cmd_check(args)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="PRNG seed")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="expanded-node budget")
    common.add_argument("--workers", type=int, default=1, help="worker processes")
    common.add_argument(
        "--reproducible", action="store_true", help="suppress timestamps in output"
    )
    common.add_argument("--out", type=str, default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="bergecycles",
        description="Berge-cycle searches, sharpness checks, and pancyclicity certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", parents=[common], help="generate an instance file")
    p_gen.add_argument("family", help="c1|c2|c3|kr|kab|voss:<class>|random")
    p_gen.add_argument("--n", type=int, default=None)
    p_gen.add_argument("--r", type=int, default=None)
    p_gen.add_argument("--k", type=int, default=None)
    p_gen.add_argument("--a", type=int, default=None)
    p_gen.add_argument("--b", type=int, default=None)
    p_gen.add_argument("--e0", action="store_true", help="include the optional edge e0")
    p_gen.add_argument(
        "--delta-floor",
        choices=["at-threshold", "threshold-plus", "absolute"],
        default="threshold-plus",
    )
    p_gen.add_argument("--floor-value", type=int, default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_check = sub.add_parser("check", parents=[common], help="check a property of an instance")
    p_check.add_argument(
        "mode", choices=["pancyclic", "berge-cycle", "circumference", "shadow", "voss"]
    )
    p_check.add_argument("input")
    p_check.add_argument("--length", type=int, default=None)
    p_check.set_defaults(func=cmd_check)

    p_vt = sub.add_parser(
        "verify-theorem", parents=[common], help="sampled pancyclicity campaign at the degree threshold"
    )
    p_vt.add_argument("--n", type=int, required=True)
    p_vt.add_argument("--r", type=int, required=True)
    p_vt.add_argument("--samples", type=int, required=True)
    p_vt.add_argument(
        "--delta-floor",
        choices=["at-threshold", "threshold-plus", "absolute"],
        default="threshold-plus",
    )
    p_vt.add_argument("--floor-value", type=int, default=None)
    p_vt.add_argument("--artifact-dir", type=str, default=None)
    p_vt.set_defaults(func=cmd_verify_theorem)

    p_sharp = sub.add_parser(
        "sharpness", parents=[common], help="verify the extremal constructions"
    )
    p_sharp.add_argument("--n", type=int, required=True)
    p_sharp.add_argument("--r", type=int, required=True)
    p_sharp.set_defaults(func=cmd_sharpness)

    p_hunt = sub.add_parser(
        "hunt", parents=[common], help="hunt for hamiltonian non-pancyclic hypergraphs (r >= 4)"
    )
    p_hunt.add_argument("--r", type=int, required=True)
    p_hunt.add_argument("--n-min", type=int, required=True)
    p_hunt.add_argument("--n-max", type=int, required=True)
    p_hunt.add_argument("--steps", type=int, default=50, help="local-search steps per n")
    p_hunt.set_defaults(func=cmd_hunt)

    p_cv = sub.add_parser("classify-voss", parents=[common], help="classify a graph file")
    p_cv.add_argument("input")
    p_cv.set_defaults(func=cmd_classify_voss)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
