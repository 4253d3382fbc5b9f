"""Command-line front end.

Exit codes: 0 ok, 1 input or argument error, 2 generation stuck,
3 verification negative, 4 irreparable node.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path
from typing import Any, Optional, Sequence, TextIO, Union

from . import flower, frcode, generator, oracle, repair
from .flower import FlowerSpec
from .frcode import FrCode

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_STUCK = 2
EXIT_NEGATIVE = 3
EXIT_IRREPARABLE = 4


class InputError(Exception):
    pass


def load_json(path: str) -> dict[str, Any]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def load_artifact(path: str) -> Union[FrCode, FlowerSpec]:
    """A code file (has "nodes") or a spec file (has "x" and/or "y")."""
    data = load_json(path)
    try:
        if "nodes" in data:
            return FrCode.from_dict(data)
        return FlowerSpec.from_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def as_code(obj: Union[FrCode, FlowerSpec]) -> FrCode:
    if isinstance(obj, FrCode):
        return obj
    try:
        return flower.construct(obj)[0]
    except flower.ConstructionError as exc:
        raise InputError(f"spec is not constructible: {exc}") from None


def write_json(data: Any, path: Optional[str], out: TextIO) -> None:
    text = json.dumps(data, indent=2) + "\n"
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def build_report(code: FrCode, k_values: Optional[Sequence[int]] = None) -> dict[str, Any]:
    params = frcode.parameters(code)
    return {
        "code": code.to_dict(),
        "parameters": {
            "n": code.n,
            "theta": code.theta,
            "alpha": params.alpha,
            "rho": params.rho,
            "node_sizes": list(params.node_sizes),
            "replication": list(params.replication),
        },
        "verdict": frcode.is_universally_good(code).to_dict(),
        "capacity": frcode.capacity_profile(code, k_values).to_dict(),
        "repair": repair.repairability(code).to_dict(),
    }


def render_report(report: dict[str, Any]) -> str:
    p, v, cap, rep = report["parameters"], report["verdict"], report["capacity"], report["repair"]
    lines = [
        f"FR code (n={p['n']}, theta={p['theta']}, alpha={p['alpha']}, rho={p['rho']})",
    ]
    for i, node in enumerate(report["code"]["nodes"], start=1):
        lines.append(f"  U{i}: {{{', '.join(f'P{j}' for j in node)}}}")
    lines.append(f"node sizes:  {p['node_sizes']}")
    lines.append(f"replication: {p['replication']}")
    if v["universally_good"]:
        lines.append("universally good: yes")
    else:
        i, q = v["witness"]
        lines.append(
            f"universally good: no (U{i} and U{q} share {v['overlap']}: "
            f"{', '.join(f'P{j}' for j in v['shared_packets'])})"
        )
    for d in v["duplicates"]:
        lines.append(f"warning: U{d['node']} holds {d['copies']} copies of P{d['packet']}")
    note = "" if cap["generalized_bound_valid"] else "  (generalized bound not guaranteed: overlap > 1)"
    lines.append(f"{'k':>3} {'M(k)':>6} {'best':>6} {'MBR':>6} {'gen':>6}{note}")
    for r in cap["rows"]:
        mbr = "-" if r["mbr_bound"] is None else r["mbr_bound"]
        lines.append(
            f"{r['k']:>3} {r['guaranteed']:>6} {r['best_case']:>6} {mbr:>6} {r['generalized_bound']:>6}"
        )
    degrees = ", ".join(
        f"U{e['node']}:{e['repair_degree']}" if e["repairable"] else f"U{e['node']}:lost{e['lost']}"
        for e in rep["nodes"]
    )
    lines.append(f"repair degrees: {degrees}; max d = {rep['max_repair_degree']}")
    return "\n".join(lines)


def emit_report(report: dict[str, Any], args: argparse.Namespace, out: TextIO) -> None:
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(render_report(report) + "\n")


def cmd_construct(args: argparse.Namespace, out: TextIO) -> int:
    spec = load_artifact(args.spec)
    if not isinstance(spec, FlowerSpec):
        raise InputError(f"{args.spec}: expected a spec file")
    try:
        code, trace = flower.construct(spec)
    except flower.ConstructionError as exc:
        raise InputError("cannot construct: " + "; ".join(exc.violations)) from None
    if args.out:
        write_json(code.to_dict(), args.out, out)
    if args.trace:
        lines = ["k\tm\tr\ti\tj"] + ["\t".join(map(str, e)) for e in trace]
        Path(args.trace).write_text("\n".join(lines) + "\n", encoding="utf-8")
    report = build_report(code)
    report["spec"] = spec.to_dict()
    report["duplicate_placements"] = [
        {"first": d.first._asdict(), "second": d.second._asdict()}
        for d in flower.duplicate_placements(spec)
    ]
    emit_report(report, args, out)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, out: TextIO) -> int:
    seed = args.seed
    if args.strategy == "random" and seed is None:
        seed = secrets.randbits(64)
    attempts = args.retries if args.strategy == "random" else 1
    last: Optional[generator.GenerationStuck] = None
    result = None
    for attempt in range(max(1, attempts)):
        s = None if seed is None else (seed + attempt) % (1 << 64)
        try:
            result = generator.generate(args.n, args.theta, args.z, args.strategy, s)
            break
        except generator.GenerationStuck as exc:
            last = exc
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if result is None:
        assert last is not None
        state = last.state
        msg = {
            "error": "generation stuck",
            "weight": state.w,
            "target": state.z,
            "seed": seed,
            "attempts": attempts,
            "x": "".join(map(str, state.x)),
            "y": "".join(map(str, state.y)),
        }
        sys.stderr.write(json.dumps(msg) + "\n")
        return EXIT_STUCK

    spec_dict = {**result.spec.to_dict(), "strategy": result.strategy, "seed": result.seed,
                 "rng": generator.RNG_NAME}
    if args.out_spec:
        write_json(spec_dict, args.out_spec, out)
    if args.out_code:
        write_json(result.code.to_dict(), args.out_code, out)
    report = build_report(result.code)
    report["spec"] = spec_dict
    emit_report(report, args, out)
    if not args.json:
        out.write(f"x = {result.x}\ny = {result.y}\nstrategy = {result.strategy}, seed = {result.seed}\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    obj = load_artifact(args.input)
    code = as_code(obj)
    verdict = frcode.is_universally_good(code)
    payload = verdict.to_dict()
    if isinstance(obj, FlowerSpec):
        payload["duplicate_placements"] = [
            {"first": d.first._asdict(), "second": d.second._asdict()}
            for d in flower.duplicate_placements(obj)
        ]
    if args.oracle:
        payload["discrepancies"] = [d.to_dict() for d in oracle.check_suite(obj)]
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        if verdict.good:
            out.write("universally good\n")
        else:
            i, p = verdict.witness
            out.write(f"not universally good: U{i} and U{p} share packets {list(verdict.shared)}\n")
        for i, j, c in verdict.duplicates:
            out.write(f"warning: U{i} holds {c} copies of P{j}\n")
        for d in payload.get("discrepancies", []):
            out.write(f"discrepancy: {d['check']}: formula={d['formula']} oracle={d['oracle']}\n")
    if payload.get("discrepancies"):
        return EXIT_NEGATIVE
    return EXIT_OK if verdict.good else EXIT_NEGATIVE


def cmd_dual(args: argparse.Namespace, out: TextIO) -> int:
    obj = load_artifact(args.input)
    if isinstance(obj, FlowerSpec):
        data = flower.dual_spec(obj).to_dict()
    else:
        data = frcode.dual(obj).to_dict()
    write_json(data, args.out, out)
    return EXIT_OK


def cmd_filesize(args: argparse.Namespace, out: TextIO) -> int:
    code = as_code(load_artifact(args.input))
    try:
        if args.k is not None and args.mode is not None:
            fn = frcode.guaranteed_file_size if args.mode == "min" else frcode.best_case_file_size
            value = fn(code, args.k)
            if args.json:
                out.write(json.dumps({"k": args.k, "mode": args.mode, "file_size": value}) + "\n")
            else:
                out.write(f"{value}\n")
            return EXIT_OK
        profile = frcode.capacity_profile(code, None if args.k is None else [args.k])
    except (ValueError, frcode.SubsetLimitError) as exc:
        raise InputError(str(exc)) from None
    if args.json:
        out.write(json.dumps(profile.to_dict(), indent=2) + "\n")
    else:
        out.write(f"{'k':>3} {'M(k)':>6} {'best':>6} {'MBR':>6} {'gen':>6}\n")
        for r in profile.rows:
            mbr = "-" if r.mbr is None else r.mbr
            out.write(f"{r.k:>3} {r.guaranteed:>6} {r.best_case:>6} {mbr:>6} {r.generalized:>6}\n")
        if not profile.generalized_valid:
            out.write("note: some nodes share more than one packet; 'gen' is not a guaranteed bound\n")
    return EXIT_OK


def cmd_repair(args: argparse.Namespace, out: TextIO) -> int:
    code = as_code(load_artifact(args.input))
    if args.node is None:
        summary = repair.repairability(code)
        if args.json:
            out.write(json.dumps(summary.to_dict(), indent=2) + "\n")
        else:
            for e in summary.nodes:
                if e.repairable:
                    out.write(f"U{e.node}: d={e.degree} bandwidth={e.bandwidth}\n")
                else:
                    out.write(f"U{e.node}: irreparable, lost {list(e.lost)}\n")
            out.write(f"max repair degree: {summary.max_degree}\n")
        return EXIT_OK if summary.all_repairable else EXIT_IRREPARABLE
    try:
        plan = repair.repair_plan(code, args.node)
    except repair.IrreparableError as exc:
        record = {"failed_node": exc.node, "irreparable": True, "lost": exc.lost}
        if args.json:
            out.write(json.dumps(record, indent=2) + "\n")
        else:
            out.write(f"U{exc.node} is irreparable; lost packets {exc.lost}\n")
        return EXIT_IRREPARABLE
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        out.write(json.dumps(plan.to_dict(), indent=2) + "\n")
    else:
        for j, h in plan.assignment:
            out.write(f"P{j} <- U{h}\n")
        out.write(f"helpers: {list(plan.helpers)}\n")
        out.write(f"d={plan.degree} bandwidth={plan.bandwidth}\n")
        if plan.duplicates:
            out.write(f"note: failed node held duplicate copies of {list(plan.duplicates)}\n")
        if plan.approximate:
            out.write("note: greedy cover, may not be minimal\n")
    return EXIT_OK


def cmd_periodic(args: argparse.Namespace, out: TextIO) -> int:
    try:
        result = flower.periodic_construction(args.n, args.theta, args.block)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.out:
        write_json(result.spec.to_dict(), args.out, out)
    payload = {
        "spec": result.spec.to_dict(),
        "period": result.period,
        "length": result.length,
        "weight": result.weight,
        "target_weight": 2 * args.theta,
        "node_sizes": list(frcode.parameters(result.code).node_sizes),
        "replication": list(frcode.parameters(result.code).replication),
        "code": result.code.to_dict(),
        "verdict": result.verdict.to_dict(),
        "duplicate_placements": [
            {"first": d.first._asdict(), "second": d.second._asdict()} for d in result.duplicates
        ],
        "universally_good": result.good,
    }
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"x = {result.spec.x} (length {result.length}, weight {result.weight})\n")
        out.write(f"node sizes: {payload['node_sizes']}, replication: {payload['replication']}\n")
        for d in result.duplicates:
            out.write(
                f"duplicate: P{d.packet} placed twice on U{d.node} "
                f"(k={d.first.k}, m={d.first.m} and k={d.second.k}, m={d.second.m})\n"
            )
        out.write("universally good: " + ("yes" if result.good else "no") + "\n")
    return EXIT_OK if result.good else EXIT_NEGATIVE


def cmd_from_code(args: argparse.Namespace, out: TextIO) -> int:
    obj = load_artifact(args.input)
    if not isinstance(obj, FrCode):
        raise InputError(f"{args.input}: expected a code file")
    try:
        spec = flower.from_frcode(obj)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    write_json(spec.to_dict(), args.out, out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowercode",
        description="Build and analyse fractional repetition codes from binary sequences.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a code from a spec file")
    p.add_argument("spec")
    p.add_argument("--out", help="write the code file here")
    p.add_argument("--trace", help="write the placement trace (k m r i j) here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("generate", parents=[common], help="search for a universally good pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--z", type=int, required=True, help="target total weight")
    p.add_argument("--strategy", choices=generator.STRATEGIES, default="lex")
    p.add_argument("--seed", type=int)
    p.add_argument("--retries", type=int, default=32)
    p.add_argument("--out-spec")
    p.add_argument("--out-code")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[common], help="pairwise-overlap test")
    p.add_argument("input")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force cross-checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dual", parents=[common], help="dual code or dual spec")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("filesize", parents=[common], help="M(k) table and bounds")
    p.add_argument("input")
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=("min", "max"))
    p.set_defaults(func=cmd_filesize)

    p = sub.add_parser("repair", parents=[common], help="plan the repair of a node")
    p.add_argument("input")
    p.add_argument("--node", type=int)
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("periodic", parents=[common], help="code from a repeated block")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("from-code", parents=[common], help="spec that rebuilds a code")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_from_code)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (InputError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
