"""Command-line toolkit: synth, verify, cost, simulate, bench."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .cost_model import (DEFAULT_COST_TABLE, CostTable, gate_histogram,
                         parse_cost_table, t_levels, t_levels_of_histogram)
from .function_model import ReversibleFunction
from .gate_model import eval_circuit, to_permutation, verify
from .io_real import parse_real, parse_tt, write_real
from .synthesis_engine import LimitExceeded, SynthesisConfig, synthesize


def _load_function(path: str) -> ReversibleFunction:
    text = Path(path).read_text()
    head = text.lstrip()
    if head.startswith(".numvars"):
        return to_permutation(parse_real(text))
    return parse_tt(text)


def _load_cost_table(args) -> CostTable:
    path = getattr(args, "cost_table", None) or os.environ.get("MQM_COST_TABLE")
    if path:
        return parse_cost_table(Path(path).read_text())
    return DEFAULT_COST_TABLE


def _config_from(args) -> SynthesisConfig:
    return SynthesisConfig(
        vector_order=args.order,
        decompose=args.decompose,
        mid=args.mid,
        postprocess=not args.no_postprocess,
    )


def cmd_synth(args) -> int:
    f = _load_function(args.spec)
    try:
        circuit = synthesize(f, _config_from(args))
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok = verify(circuit, f).ok
    table = _load_cost_table(args)
    if args.output:
        Path(args.output).write_text(write_real(circuit))
    payload = {
        "benchmark": Path(args.spec).stem,
        "n": circuit.n,
        "gates": {str(m): c for m, c in gate_histogram(circuit).items()},
        "gate_count": len(circuit.gates),
        "t_levels": t_levels(circuit, table),
        "verified": ok,
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"{payload['benchmark']}: n={payload['n']} "
              f"gates={payload['gate_count']} {payload['gates']} "
              f"t_levels={payload['t_levels']} verified={ok}")
        if not args.output:
            sys.stdout.write(write_real(circuit))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    f = _load_function(args.spec)
    circuit = parse_real(Path(args.circuit).read_text())
    result = verify(circuit, f)
    if result.ok:
        print("verified")
        return 0
    print(f"mismatch at input {result.witness:0{f.n}b}: "
          f"got {result.got:0{f.n}b}, expected {result.expected:0{f.n}b}")
    return 1


def cmd_cost(args) -> int:
    table = _load_cost_table(args)
    path = Path(args.circuit)
    if path.suffix == ".json":
        fixture = json.loads(path.read_text())
        hist = {int(k): v for k, v in fixture["histogram"].items()}
        levels = t_levels_of_histogram(hist, table)
        n = fixture.get("qubits")
    else:
        circuit = parse_real(path.read_text())
        hist = gate_histogram(circuit)
        levels = t_levels(circuit, table)
        n = circuit.n
    if args.json:
        print(json.dumps({"n": n, "gates": {str(m): c for m, c in hist.items()},
                          "t_levels": levels}, sort_keys=True))
    else:
        print(f"n={n} gates={hist} t_levels={levels}")
    return 0


def cmd_simulate(args) -> int:
    circuit = parse_real(Path(args.circuit).read_text())
    bits = args.input
    if len(bits) != circuit.n or any(ch not in "01" for ch in bits):
        print(f"error: input must be {circuit.n} bits", file=sys.stderr)
        return 2
    out = eval_circuit(circuit, int(bits, 2))
    print(format(out, f"0{circuit.n}b"))
    return 0


def cmd_bench(args) -> int:
    table = _load_cost_table(args)
    rows = []
    status = 0
    for path in sorted(Path(args.directory).iterdir()):
        if path.suffix not in (".tt", ".real", ".perm"):
            continue
        f = _load_function(str(path))
        t0 = time.perf_counter()
        try:
            circuit = synthesize(f, _config_from(args))
        except LimitExceeded:
            rows.append({"benchmark": path.stem, "n": f.n, "verified": False,
                         "error": "LimitExceeded"})
            status = 1
            continue
        millis = int((time.perf_counter() - t0) * 1000)
        ok = verify(circuit, f).ok
        if not ok:
            status = 1
        rows.append({
            "benchmark": path.stem,
            "n": f.n,
            "gates": {str(m): c for m, c in gate_histogram(circuit).items()},
            "t_levels": t_levels(circuit, table),
            "verified": ok,
            "millis": millis,
        })
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        for r in rows:
            print(f"{r['benchmark']:>16}  n={r['n']:<3} "
                  f"gates={r.get('gates', {})} t_levels={r.get('t_levels', '-')} "
                  f"verified={r['verified']} ({r.get('millis', '-')} ms)")
    return status


def _add_synth_flags(p) -> None:
    p.add_argument("--decompose", choices=["auto", "on", "off"], default="auto")
    p.add_argument("--mid", type=int, default=None,
                   help="forced split position for the decomposition")
    p.add_argument("--order", choices=["asc", "desc"], default="asc",
                   help="vector processing order (fewest members first)")
    p.add_argument("--no-postprocess", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mqmsynth",
        description="Synthesize, verify, and cost reversible circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a circuit from a function")
    p.add_argument("spec", help="truth table (.tt), permutation, or .real file")
    p.add_argument("-o", "--output", help="write the circuit here (.real)")
    _add_synth_flags(p)
    p.add_argument("--cost-table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a circuit against a function")
    p.add_argument("spec")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cost", help="histogram and T-levels of a circuit")
    p.add_argument("circuit", help=".real circuit or .json histogram fixture")
    p.add_argument("--cost-table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("simulate", help="run a circuit on one input")
    p.add_argument("circuit")
    p.add_argument("--input", required=True, help="input bits, x1 first")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="synth+verify+cost over a directory")
    p.add_argument("directory")
    _add_synth_flags(p)
    p.add_argument("--cost-table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def cli(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
