"""Benchmark the compiled gate kernel against the numpy fallback.

Three workload shapes:
  deep    - full-width 3-round verified circuit, small batch (per-gate
            dispatch overhead dominates the fallback here)
  oracle  - simplified-model oracle with inverse pass, medium batch
  wide    - small circuit over a 2^20-state slice (memory-bound; the
            backends should converge)

Usage: python benchmarks/bench_simkernel.py [--repeat N]
"""

import argparse
import time

import numpy as np

from keccak_forge import circuit as C
from keccak_forge import keccak as K
from keccak_forge import sim, synth


def workloads():
    deep = synth.synth_permutation_verified(K.KeccakParams(64, 3))
    spec = synth.OracleSpec(K.KeccakParams(64, 3),
                            synth.SynthesisStrategy.PAPER_MODEL,
                            target_digest=(0,) * 256,
                            include_inverse_pass=True)
    oracle = synth.synth_oracle(spec)
    wide = synth.synth_permutation_verified(K.KeccakParams(1, 3))
    return (
        ("deep (w=64 verified, 64 states)", deep, 1),
        ("oracle (w=64 model + inverse, 1024 states)", oracle, 16),
        ("wide (w=1 verified, 2^20 states)", wide, 1 << 14),
    )


def run_case(circuit, n_words, backend, repeat):
    gates = sim.CompiledGates.from_circuit(circuit)
    rng = np.random.default_rng(0)
    state = rng.integers(0, 1 << 63, size=(circuit.n_wires, n_words),
                         dtype=np.uint64)
    best = float("inf")
    for _ in range(repeat):
        work = state.copy()
        start = time.perf_counter()
        sim.apply_packed(gates, work, backend=backend)
        best = min(best, time.perf_counter() - start)
    gate_ops = len(circuit.gates) * n_words * 64
    return best, gate_ops


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per case (default 3)")
    args = parser.parse_args()

    backends = sim.available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; timing the python backend only")

    header = (f"{'workload':<44} {'backend':<9} {'time':>9} "
              f"{'gate-bit ops/s':>15} {'speedup':>8}")
    print(header)
    print("-" * len(header))
    for name, circuit, n_words in workloads():
        base_time = None
        for backend in ("python", "compiled"):
            if backend not in backends:
                continue
            elapsed, gate_ops = run_case(circuit, n_words, backend,
                                         args.repeat)
            if backend == "python":
                base_time = elapsed
            speedup = (f"{base_time / elapsed:7.1f}x"
                       if backend == "compiled" and base_time else "")
            print(f"{name:<44} {backend:<9} {elapsed:8.4f}s "
                  f"{gate_ops / elapsed:15.3g} {speedup:>8}")
    print()
    print(f"default backend on this install: {sim.default_backend()}")


if __name__ == "__main__":
    main()
