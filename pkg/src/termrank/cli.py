"""Command-line front end: check instances, solve them constructively, run the
randomized cross-oracle fuzzer, and run the built-in acceptance suite.

Exit codes: 0 feasible / all good, 1 infeasible or discrepancy found, 2 input
or precondition error.
"""

from __future__ import annotations

import argparse
import sys
import time

from .bigraph import graph_union
from .cover import (
    construct_brute,
    construct_via_cover,
    find_matching_covering_bases,
    solve_term_rank,
)
from .errors import InfeasibleError, InstanceError, PreconditionError, TermrankError
from .feasibility import (
    Instance,
    ViolationCert,
    check_brualdi,
    check_fully,
    check_ms_only,
    check_msmt,
    check_ore,
    check_ryser,
    check_ryser_gen,
)
from .harness import FuzzConfig, acceptance_report, run_fuzz, validate_matching, validate_witness
from .jsonio import (
    MODES,
    dumps,
    load_instance_file,
    result_to_json,
    witness_to_json,
)
from .matroid import Matroid
from .setfun import constant

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_ERROR = 2


def _run_checker(mode: str, inst: Instance, stats: dict) -> ViolationCert | None:
    if mode == "ore":
        return check_ore(inst.complement, inst.degrees, stats=stats)
    if mode == "msmt":
        return check_msmt(inst, stats=stats)
    if mode == "ms_only":
        return check_ms_only(inst, stats=stats)
    if mode == "fully":
        return check_fully(inst, stats=stats)
    if mode == "ryser":
        return check_ryser(inst.degrees, inst.target_rank, stats=stats)
    if mode == "brualdi":
        return check_brualdi(inst.initial, inst.matroid_s, inst.matroid_t, stats=stats)
    if mode == "ryser_gen":
        return check_ryser_gen(inst, stats=stats)
    raise InstanceError(f"unknown mode {mode!r}")


def _emit(data: dict, out_path: str | None) -> None:
    text = dumps(data)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_witness_payload(path: str) -> dict:
    import json

    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise InstanceError(f"cannot read witness file {path}: {exc}") from exc
    witness = data.get("witness") if isinstance(data, dict) else None
    if not isinstance(witness, dict):
        raise InstanceError(f"{path}: no witness object to verify")
    return witness


def cmd_check(args) -> int:
    mode, inst = load_instance_file(args.path, args.mode)
    stats: dict = {"mode": mode}
    start = time.perf_counter()
    if args.verify_witness:
        from .bigraph import Bigraph

        witness = _load_witness_payload(args.verify_witness)
        problems: list[str] = []
        graph = None
        if "edges" in witness:
            graph = Bigraph.from_names(inst.grounds, witness["edges"])
            problems += validate_witness(inst, graph)
        if "matching" in witness:
            pairs = [
                (inst.grounds.s_index[a], inst.grounds.t_index[b])
                for a, b in witness["matching"]
            ]
            target = inst.initial if graph is None else graph_union(graph, inst.initial)
            matroid_s, matroid_t = inst.matroid_s, inst.matroid_t
            if matroid_t is None:
                if inst.target_rank is None:
                    raise InstanceError("instance carries no matroids or target rank to verify a matching")
                matroid_s = Matroid.uniform(inst.grounds.s_ids, inst.target_rank)
                matroid_t = Matroid.uniform(inst.grounds.t_ids, inst.target_rank)
            problems += validate_matching(target, matroid_s, matroid_t, pairs)
        stats["wall_ms"] = round((time.perf_counter() - start) * 1000, 3)
        verdict = "feasible" if not problems else "infeasible"
        payload = result_to_json(verdict, grounds=inst.grounds, stats=stats)
        payload["witness_problems"] = problems
        _emit(payload, args.out)
        return EXIT_FEASIBLE if not problems else EXIT_INFEASIBLE
    cert = _run_checker(mode, inst, stats)
    stats["wall_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if cert is None:
        _emit(result_to_json("feasible", grounds=inst.grounds, stats=stats), args.out)
        return EXIT_FEASIBLE
    _emit(
        result_to_json("infeasible", grounds=inst.grounds, cert=cert, stats=stats),
        args.out,
    )
    return EXIT_INFEASIBLE


def cmd_solve(args) -> int:
    mode, inst = load_instance_file(args.path, args.mode)
    stats: dict = {"mode": mode, "route": args.route}
    start = time.perf_counter()
    grounds = inst.grounds
    witness = None
    cert = None

    if mode == "brualdi":
        cert = check_brualdi(inst.initial, inst.matroid_s, inst.matroid_t, stats=stats)
        if cert is None:
            matching = find_matching_covering_bases(
                inst.initial, inst.matroid_s, inst.matroid_t, stats=stats
            )
            witness = witness_to_json(grounds, None, matching)
    elif mode in ("ryser", "ryser_gen"):
        work = inst
        if mode == "ryser":
            cert_classic = check_ryser(inst.degrees, inst.target_rank, stats=stats)
            if cert_classic is not None:
                cert = cert_classic
            else:
                work = Instance.make(
                    grounds,
                    initial=inst.initial,
                    degrees=inst.degrees,
                    matroid_s=Matroid.uniform(grounds.s_ids, inst.target_rank),
                    matroid_t=Matroid.uniform(grounds.t_ids, inst.target_rank),
                    target_rank=inst.target_rank,
                )
        if cert is None:
            result = solve_term_rank(work, stats=stats)
            if isinstance(result, ViolationCert):
                cert = result
            else:
                graph, matching = result
                witness = witness_to_json(grounds, graph, matching)
    else:
        checker = {
            "ore": lambda: check_ore(inst.complement, inst.degrees, stats=stats),
            "msmt": lambda: check_msmt(inst, stats=stats),
            "ms_only": lambda: check_ms_only(inst, stats=stats),
            "fully": lambda: check_fully(inst, stats=stats),
        }[mode]
        cert = checker()
        if cert is None:
            work = inst
            if inst.demand is None:
                work = Instance.make(
                    grounds,
                    initial=inst.initial,
                    degrees=inst.degrees,
                    matroid_s=inst.matroid_s,
                    demand=constant(grounds.t_ids, 0),
                )
            route = args.route
            if mode == "ms_only" and route != "brute":
                route = "brute"
                stats["route"] = "brute"
            built = None
            if route in ("cover", "both"):
                built = construct_via_cover(work, stats=stats)
            brute = None
            if route in ("brute", "both"):
                brute = construct_brute(work, stats=stats)
                if route == "brute" and brute is None:
                    raise AssertionError(
                        "condition passed but exhaustive construction found nothing"
                    )
            if route == "both" and (brute is None) != (built is None):
                raise AssertionError("the two construction routes disagree on feasibility")
            graph = built if built is not None else brute
            witness = witness_to_json(grounds, graph, None)

    stats["wall_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if cert is not None:
        _emit(
            result_to_json("infeasible", grounds=grounds, cert=cert, stats=stats),
            args.out,
        )
        return EXIT_INFEASIBLE
    _emit(
        result_to_json("feasible", grounds=grounds, witness=witness, stats=stats),
        args.out,
    )
    return EXIT_FEASIBLE


def cmd_fuzz(args) -> int:
    cfg = FuzzConfig(
        seed=args.seed,
        count=args.count,
        max_s=args.max_s,
        max_t=args.max_t,
        modes=tuple(args.modes.split(",")) if args.modes else FuzzConfig.modes,
    )
    report = run_fuzz(cfg)
    _emit(report, args.out)
    return EXIT_FEASIBLE if report["discrepancy_count"] == 0 else EXIT_INFEASIBLE


def cmd_selftest(args) -> int:
    results = acceptance_report(quick=args.quick)
    all_ok = True
    for entry in results:
        tag = "PASS" if entry["ok"] else "FAIL"
        all_ok = all_ok and entry["ok"]
        print(f"{tag} criterion {entry['criterion']}: {entry['detail']}")
    return EXIT_FEASIBLE if all_ok else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termrank",
        description=(
            "Decide, certify, and construct degree-specified bipartite graphs "
            "with matroid and matching-rank constraints."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="evaluate a feasibility condition")
    p_check.add_argument("path", help="instance JSON file")
    p_check.add_argument("--mode", choices=MODES, help="override the file's mode tag")
    p_check.add_argument("--out", help="write the result JSON here instead of stdout")
    p_check.add_argument(
        "--verify-witness",
        metavar="RESULT",
        help="re-validate the witness in a result file against this instance",
    )
    p_check.set_defaults(func=cmd_check)

    p_solve = sub.add_parser("solve", help="construct a witness or certificate")
    p_solve.add_argument("path", help="instance JSON file")
    p_solve.add_argument("--mode", choices=MODES, help="override the file's mode tag")
    p_solve.add_argument(
        "--route",
        choices=("cover", "brute", "both"),
        default="cover",
        help="construction route; 'both' also asserts the two agree",
    )
    p_solve.add_argument("--out", help="write the result JSON here instead of stdout")
    p_solve.set_defaults(func=cmd_solve)

    p_fuzz = sub.add_parser("fuzz", help="seeded cross-oracle verification run")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--count", type=int, default=200)
    p_fuzz.add_argument("--max-s", dest="max_s", type=int, default=4)
    p_fuzz.add_argument("--max-t", dest="max_t", type=int, default=4)
    p_fuzz.add_argument(
        "--modes",
        help="comma-separated subset of: msmt,ms_only,ore,brualdi,reductions",
    )
    p_fuzz.add_argument("--out", help="write the report JSON here instead of stdout")
    p_fuzz.set_defaults(func=cmd_fuzz)

    p_self = sub.add_parser("selftest", help="run the built-in acceptance suite")
    p_self.add_argument("--quick", action="store_true", help="reduced instance counts")
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except TermrankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
