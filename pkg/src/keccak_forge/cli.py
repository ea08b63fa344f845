"""Command-line front end.

Subcommands: synth (write a netlist + print tallies), verify (simulation
checks against the reference permutation), estimate (the full resource
and feasibility report), grover-demo (closed form vs statevector table).

The KECCAK_FORGE_CONFIG environment variable may point to a JSON file
whose keys mirror the long flag names (e.g. {"lane-width": 8}); explicit
flags win.  Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import circuit as circuit_mod
from . import estimate as est
from . import grover as grover_mod
from . import keccak as keccak_mod
from . import sim as sim_mod
from . import synth as synth_mod

CONFIG_ENV_VAR = "KECCAK_FORGE_CONFIG"

_CONFIG_KEYS = {
    "lane-width", "rounds", "round-offset", "strategy", "include-inverse",
    "decomp-factor", "counting-mode", "log2-search-space", "marked-count",
    "gate-time-ns", "gates-per-second", "error-rate", "logical-error-rate",
    "qec-overhead", "format", "seed", "trials", "out", "scenario", "check",
    "n", "marked",
}


def _load_config(parser: argparse.ArgumentParser) -> dict:
    path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config file {path!r}: {exc}")
    if not isinstance(data, dict):
        parser.error(f"config file {path!r} must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        parser.error(f"unknown config keys in {path!r}: {sorted(unknown)}")
    return {key.replace("-", "_"): value for key, value in data.items()}


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--lane-width", type=int, default=64,
                     help="bits per lane, one of 1/2/4/8/16/32/64 (default 64)")
    sub.add_argument("--rounds", type=int, default=3,
                     help="number of permutation rounds (default 3)")
    sub.add_argument("--round-offset", type=int, default=0,
                     help="index of the first round constant (default 0)")
    sub.add_argument("--strategy", choices=["paper", "verified"],
                     default="paper",
                     help="circuit family: headline-count model or "
                          "semantically verified construction")
    sub.add_argument("--include-inverse", action="store_true",
                     help="append the uncomputation pass to synthesized oracles")
    sub.add_argument("--decomp-factor", type=int, default=10,
                     help="2-qubit gates per Toffoli (default 10)")
    sub.add_argument("--counting-mode", choices=["paper", "exact"],
                     default="paper", help="gate-total accounting mode")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for randomized checks (default 0)")
    sub.add_argument("--trials", type=int, default=100,
                     help="random basis states per check (default 100)")
    sub.add_argument("--out", default=None, help="output file path")


def _build_parser() -> tuple[argparse.ArgumentParser,
                             dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="keccak-forge",
        description="Reversible Keccak oracle synthesis, simulation checks, "
                    "and quantum resource estimation.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_synth = subs.add_parser("synth", help="synthesize a circuit netlist")
    _add_common_flags(p_synth)

    p_verify = subs.add_parser("verify",
                               help="simulate a synthesized oracle and check it")
    _add_common_flags(p_verify)
    p_verify.add_argument("netlist", nargs="?", default=None,
                          help="optional netlist file (default: synthesize "
                               "from the flags)")
    p_verify.add_argument("--check",
                          choices=["equivalence", "ancilla", "reversibility",
                                   "all"],
                          default="all", help="which check to run (default all)")

    p_est = subs.add_parser("estimate",
                            help="full resource and feasibility report")
    _add_common_flags(p_est)
    p_est.add_argument("--log2-search-space", type=float, default=57.8,
                       help="log2 of the search-space size (default 57.8)")
    p_est.add_argument("--marked-count", type=int, default=1,
                       help="number of marked states (default 1)")
    p_est.add_argument("--gate-time-ns", type=float, default=50.0,
                       help="per-gate time for the optimistic scenario "
                            "(default 50)")
    p_est.add_argument("--gates-per-second", type=float, default=1000.0,
                       help="throughput for the conservative scenario "
                            "(default 1000)")
    p_est.add_argument("--error-rate", type=float, default=1e-3,
                       help="physical per-gate error rate (default 1e-3)")
    p_est.add_argument("--logical-error-rate", type=float, default=1e-6,
                       help="residual per-gate error rate under QEC "
                            "(default 1e-6)")
    p_est.add_argument("--qec-overhead", type=int, default=1000,
                       help="physical qubits per logical qubit (default 1000)")
    p_est.add_argument("--format", choices=["text", "json", "csv"],
                       default="text", help="report format (default text)")
    p_est.add_argument("--scenario", choices=["optimistic", "conservative"],
                       default=None,
                       help="restrict the report to one machine-assumption "
                            "preset")

    p_demo = subs.add_parser("grover-demo",
                             help="statevector vs closed-form probability sweep")
    p_demo.add_argument("--n", type=int, default=4,
                        help="search register qubits, at most 20 (default 4)")
    p_demo.add_argument("--marked", type=lambda s: int(s, 0), default=0,
                        help="marked basis state index, e.g. 0xB (default 0)")
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.add_argument("--out", default=None)
    return parser, {"synth": p_synth, "verify": p_verify, "estimate": p_est,
                    "grover-demo": p_demo}


def _keccak_params(parser: argparse.ArgumentParser,
                   args: argparse.Namespace) -> keccak_mod.KeccakParams:
    try:
        return keccak_mod.KeccakParams(args.lane_width, args.rounds,
                                       args.round_offset)
    except keccak_mod.KeccakError as exc:
        parser.error(str(exc))


def _cost_model(parser: argparse.ArgumentParser,
                args: argparse.Namespace) -> circuit_mod.CostModel:
    try:
        return circuit_mod.CostModel(
            decomp_factor=args.decomp_factor,
            counting_mode=circuit_mod.CountingMode(args.counting_mode))
    except circuit_mod.CircuitError as exc:
        parser.error(str(exc))


def _strategy(args: argparse.Namespace) -> synth_mod.SynthesisStrategy:
    return synth_mod.SynthesisStrategy(args.strategy)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _stats_line(stats: circuit_mod.GateStats, n_wires: int) -> str:
    return (f"wires={n_wires} x={stats.x_count} cnot={stats.cnot_count} "
            f"toffoli={stats.toffoli_count} depth={stats.depth} "
            f"two_qubit_equiv={stats.two_qubit_equiv}")


def cmd_synth(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    params = _keccak_params(parser, args)
    cost_model = _cost_model(parser, args)
    circuit = synth_mod.synth_permutation(params, _strategy(args))
    if args.include_inverse:
        spec = synth_mod.OracleSpec(params, _strategy(args),
                                    include_inverse_pass=True)
        circuit = synth_mod.synth_oracle(spec)
    stats = circuit_mod.stats(circuit, cost_model)
    netlist = circuit_mod.serialize(circuit)
    if args.out:
        _emit(netlist, args.out)
        print(_stats_line(stats, circuit.n_wires))
    else:
        sys.stdout.write(netlist)
        print(_stats_line(stats, circuit.n_wires), file=sys.stderr)
    return 0


def cmd_verify(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if args.trials < 1:
        parser.error(f"--trials must be >= 1, got {args.trials}")
    params = _keccak_params(parser, args)
    strategy = _strategy(args)
    if args.netlist:
        try:
            with open(args.netlist, "r", encoding="utf-8") as fh:
                circuit = circuit_mod.deserialize(fh.read())
        except (OSError, circuit_mod.CircuitError) as exc:
            parser.error(f"cannot load netlist {args.netlist!r}: {exc}")
    else:
        spec = synth_mod.OracleSpec(params, strategy, include_inverse_pass=True)
        circuit = synth_mod.synth_oracle(spec)

    def reference(value: int) -> int:
        state = keccak_mod.KeccakState.from_int(value, params.lane_width)
        return keccak_mod.permute(state, params).to_int()

    checks = {}
    if args.check in ("equivalence", "all"):
        # equivalence is judged on the forward permutation circuit
        forward = synth_mod.synth_permutation(params, strategy)
        checks["equivalence"] = sim_mod.check_equivalence(
            forward, reference, state_register=synth_mod.STATE,
            trials=args.trials, seed=args.seed)
    if args.check in ("ancilla", "all"):
        scratch = synth_mod.scratch_register_names(circuit)
        checks["ancilla_clean"] = sim_mod.check_ancilla_clean(
            circuit, scratch, trials=args.trials, seed=args.seed)
    if args.check in ("reversibility", "all"):
        checks["reversibility"] = sim_mod.check_roundtrip(
            circuit, trials=args.trials, seed=args.seed)

    all_passed = all(r.passed for r in checks.values())
    report = {
        "pass": all_passed,
        "strategy": strategy.value,
        "lane_width": params.lane_width,
        "rounds": params.rounds,
        "checks": {name: r.to_json_dict() for name, r in checks.items()},
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0 if all_passed else 1


def cmd_estimate(parser: argparse.ArgumentParser,
                 args: argparse.Namespace) -> int:
    params = _keccak_params(parser, args)
    cost_model = _cost_model(parser, args)
    strategy = _strategy(args)
    try:
        grover_params = grover_mod.GroverParams(args.log2_search_space,
                                                args.marked_count)
    except grover_mod.GroverError as exc:
        parser.error(str(exc))
    try:
        scenarios = [
            est.optimistic_scenario(args.gate_time_ns, args.error_rate,
                                    args.logical_error_rate, args.qec_overhead),
            est.conservative_scenario(args.gates_per_second, args.error_rate,
                                      args.logical_error_rate,
                                      args.qec_overhead),
        ]
    except est.EstimateError as exc:
        parser.error(str(exc))
    if args.scenario:
        scenarios = [s for s in scenarios if s.name == args.scenario]

    digest_width = min(256, params.state_bits)
    if cost_model.counting_mode is circuit_mod.CountingMode.EXACT:
        spec = synth_mod.OracleSpec(
            params, strategy, target_digest=(0,) * digest_width,
            include_inverse_pass=True)
        counted = synth_mod.synth_oracle(spec)
    else:
        counted = synth_mod.synth_permutation(params, strategy)
    oracle_stats = circuit_mod.stats(counted, cost_model)
    logical = counted.n_wires if strategy is synth_mod.SynthesisStrategy.VERIFIED \
        else synth_mod.synth_permutation_paper(params).n_wires

    report = est.feasibility_report(
        oracle_stats, logical, grover_mod.estimate(grover_params),
        scenarios=scenarios, cost_model=cost_model,
        state_width=params.state_bits,
        inputs={
            "lane_width": params.lane_width,
            "rounds": params.rounds,
            "round_offset": params.round_offset,
            "strategy": strategy.value,
            "counting_mode": cost_model.counting_mode.value,
            "decomp_factor": cost_model.decomp_factor,
            "log2_search_space": args.log2_search_space,
            "marked_count": args.marked_count,
            "seed": args.seed,
        })
    if args.format == "json":
        _emit(report.to_json(), args.out)
    elif args.format == "csv":
        _emit(report.to_csv(), args.out)
    else:
        _emit(report.to_text(), args.out)
    return 0


def cmd_grover_demo(parser: argparse.ArgumentParser,
                    args: argparse.Namespace) -> int:
    if not 1 <= args.n <= grover_mod.MAX_SIM_QUBITS:
        parser.error(f"--n must be in [1, {grover_mod.MAX_SIM_QUBITS}], "
                     f"got {args.n}")
    n_states = 1 << args.n
    if not 0 <= args.marked < n_states:
        parser.error(f"--marked must be in [0, {n_states}), got {args.marked}")
    params = grover_mod.GroverParams(float(args.n), 1)
    optimal = grover_mod.iterations(params)
    k_max = max(5, 2 * optimal)
    sweep = grover_mod.grover_sweep(args.n, [args.marked], k_max)
    lines = [f"n={args.n} states={n_states} marked={args.marked:#x} "
             f"optimal_k={optimal}",
             f"{'k':>4}  {'simulated':>12}  {'closed_form':>12}  "
             f"{'delta':>9}"]
    for k, simulated in enumerate(sweep):
        closed = grover_mod.success_probability(params, k)
        mark = "  <- optimal" if k == optimal else ""
        lines.append(f"{k:>4}  {simulated:>12.9f}  {closed:>12.9f}  "
                     f"{abs(simulated - closed):>9.2e}{mark}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    config = _load_config(parser)
    if config:
        known = {action.dest for action in parser._actions}
        for sub_action in parser._subparsers._group_actions:
            for sub in sub_action.choices.values():
                sub.set_defaults(**{k: v for k, v in config.items()
                                    if k in {a.dest for a in sub._actions}})
                known |= {a.dest for a in sub._actions}
        unknown = set(config) - known
        if unknown:
            parser.error(f"config keys match no flag: {sorted(unknown)}")
    args = parser.parse_args(argv)
    handlers = {
        "synth": cmd_synth,
        "verify": cmd_verify,
        "estimate": cmd_estimate,
        "grover-demo": cmd_grover_demo,
    }
    return handlers[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
