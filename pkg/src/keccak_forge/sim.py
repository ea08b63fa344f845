"""Exact classical simulation of {X, CNOT, CCX} circuits on basis states.

States are bit-packed into uint64 words so one pass applies every gate to
64 basis states at once; batches wider than 64 states just use more words
per wire.  The inner loop runs in the compiled kernel when available and
falls back to numpy row operations otherwise (identical semantics, more
per-gate overhead).  Set KECCAK_FORGE_PURE_PYTHON=1 to force the fallback.

Randomized checks use seeded generators and report the violating input on
failure, so every counterexample is reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .circuit import CCX, CNOT, Circuit, deserialize, inverse

try:  # compiled kernel is optional
    from . import _simkernel as _kernel
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = None

_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)
_KIND_CODE = {"X": 0, "CNOT": 1, "CCX": 2}


class SimulationError(ValueError):
    """Width mismatch, unknown register, or bad backend selection."""


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _kernel is not None else ("python",)


def default_backend() -> str:
    if _kernel is None or os.environ.get("KECCAK_FORGE_PURE_PYTHON"):
        return "python"
    return "compiled"


@dataclass(frozen=True)
class CompiledGates:
    """Gate list lowered to flat arrays for the packed-state kernels."""

    kinds: np.ndarray
    wire_a: np.ndarray
    wire_b: np.ndarray
    wire_t: np.ndarray
    n_wires: int

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> "CompiledGates":
        n = len(circuit.gates)
        kinds = np.zeros(n, dtype=np.int8)
        wa = np.zeros(n, dtype=np.intc)
        wb = np.zeros(n, dtype=np.intc)
        wt = np.zeros(n, dtype=np.intc)
        for i, g in enumerate(circuit.gates):
            kinds[i] = _KIND_CODE[g.kind]
            wt[i] = g.target
            if g.kind == CNOT:
                wa[i] = g.controls[0]
            elif g.kind == CCX:
                wa[i] = g.controls[0]
                wb[i] = g.controls[1]
        return cls(kinds, wa, wb, wt, circuit.n_wires)


def _apply_python(gates: CompiledGates, state: np.ndarray) -> None:
    kinds = gates.kinds.tolist()
    was = gates.wire_a.tolist()
    wbs = gates.wire_b.tolist()
    wts = gates.wire_t.tolist()
    for kind, a, b, t in zip(kinds, was, wbs, wts):
        if kind == 2:
            state[t] ^= state[a] & state[b]
        elif kind == 1:
            state[t] ^= state[a]
        else:
            state[t] ^= _FULL


def apply_packed(gates: CompiledGates, state: np.ndarray,
                 backend: str | None = None) -> None:
    """Run the gate sequence over a packed (n_wires, n_words) state in place."""
    if state.shape[0] != gates.n_wires:
        raise SimulationError(
            f"packed state has {state.shape[0]} rows, circuit has "
            f"{gates.n_wires} wires")
    backend = backend or default_backend()
    if backend == "compiled":
        if _kernel is None:
            raise SimulationError("compiled kernel is not available")
        _kernel.apply_gates(gates.kinds, gates.wire_a, gates.wire_b,
                            gates.wire_t, state)
    elif backend == "python":
        _apply_python(gates, state)
    else:
        raise SimulationError(f"unknown backend {backend!r}")


# ---------------------------------------------------------------------------
# Packing helpers
# ---------------------------------------------------------------------------


def pack_states(values: Sequence[int], n_wires: int) -> np.ndarray:
    """Pack integer-encoded basis states (bit i = wire i) into bit rows."""
    n_states = len(values)
    n_words = max(1, (n_states + 63) // 64)
    n_bytes = (n_wires + 7) // 8
    flat = bytearray()
    mask = (1 << n_wires) - 1
    for v in values:
        if v < 0 or v & ~mask:
            raise SimulationError(f"state {v:#x} does not fit in {n_wires} wires")
        flat += v.to_bytes(n_bytes, "little")
    as_bits = np.unpackbits(
        np.frombuffer(bytes(flat), dtype=np.uint8).reshape(n_states, n_bytes),
        axis=1, bitorder="little")[:, :n_wires]
    # transpose to (n_wires, n_states), then pack the state axis into words
    cols = np.packbits(as_bits.T, axis=1, bitorder="little")
    padded = np.zeros((n_wires, n_words * 8), dtype=np.uint8)
    padded[:, :cols.shape[1]] = cols
    return padded.view(np.uint64).copy()


def unpack_states(state: np.ndarray, n_states: int) -> list[int]:
    """Inverse of pack_states: recover integer-encoded basis states."""
    n_wires = state.shape[0]
    as_bytes = state.view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n_states]
    rows = np.packbits(bits.T, axis=1, bitorder="little")
    return [int.from_bytes(rows[i].tobytes(), "little") for i in range(n_states)]


def counter_rows(n_wires: int, counted_wires: range, n_words: int,
                 start_state: int = 0) -> np.ndarray:
    """Packed batch enumerating consecutive basis states on counted_wires.

    Batch state s takes the value (start_state + s) on the counted wires,
    zero elsewhere; start_state must be a multiple of 64.  This generates
    the full truth-table input for exhaustive checks without per-state
    packing cost.
    """
    if start_state % 64:
        raise SimulationError("start_state must be a multiple of 64")
    state = np.zeros((n_wires, n_words), dtype=np.uint64)
    word_index = np.arange(n_words, dtype=np.uint64) + np.uint64(start_state // 64)
    for pos, wire in enumerate(counted_wires):
        if pos < 6:
            # period below one word: constant repeating word pattern
            block = (1 << (1 << pos)) - 1  # 2^pos ones
            pattern = 0
            step = 1 << (pos + 1)
            for low in range(1 << pos, 64, step):
                pattern |= block << low
            state[wire, :] = np.uint64(pattern)
        else:
            on = (word_index >> np.uint64(pos - 6)) & np.uint64(1)
            state[wire, :] = np.where(on.astype(bool), _FULL, np.uint64(0))
    return state


# ---------------------------------------------------------------------------
# Single-state and batch entry points
# ---------------------------------------------------------------------------


def run(circuit: Circuit, bits: Sequence[int],
        backend: str | None = None) -> list[int]:
    """Simulate one basis state given as a 0/1 sequence, one per wire."""
    if len(bits) != circuit.n_wires:
        raise SimulationError(
            f"input has {len(bits)} bits, circuit has {circuit.n_wires} wires")
    value = 0
    for i, b in enumerate(bits):
        if b not in (0, 1, True, False):
            raise SimulationError(f"bit {i} is not 0/1")
        if b:
            value |= 1 << i
    out = run_ints(circuit, [value], backend=backend)[0]
    return [(out >> i) & 1 for i in range(circuit.n_wires)]


def run_ints(circuit: Circuit | CompiledGates, values: Sequence[int],
             backend: str | None = None) -> list[int]:
    """Simulate integer-encoded basis states (bit i = wire i) in one batch."""
    gates = (circuit if isinstance(circuit, CompiledGates)
             else CompiledGates.from_circuit(circuit))
    if not values:
        return []
    state = pack_states(values, gates.n_wires)
    apply_packed(gates, state, backend=backend)
    return unpack_states(state, len(values))


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    """Outcome of a randomized or exhaustive property check."""

    passed: bool
    check: str
    trials: int
    seed: int | None = None
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json_dict(self) -> dict:
        out = {"pass": self.passed, "check": self.check, "trials": self.trials,
               "seed": self.seed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _random_register_values(width: int, trials: int,
                            rng: np.random.Generator) -> list[int]:
    n_bytes = (width + 7) // 8
    mask = (1 << width) - 1
    return [int.from_bytes(rng.bytes(n_bytes), "little") & mask
            for _ in range(trials)]


def _place(value: int, offset: int) -> int:
    return value << offset


def _extract(value: int, offset: int, width: int) -> int:
    return (value >> offset) & ((1 << width) - 1)


def check_ancilla_clean(circuit: Circuit, register_names: Sequence[str],
                        trials: int = 100, seed: int = 0,
                        backend: str | None = None) -> CheckResult:
    """Do the named registers return to 0 for random settings of the rest?

    The named registers start at 0, every other wire is drawn uniformly at
    random; the check passes iff the named registers end at 0 on every
    sampled input.
    """
    regs = circuit.registers
    scratch = [regs[name] for name in register_names]
    others = [r for r in regs.registers if r.name not in set(register_names)]
    rng = np.random.default_rng(seed)
    inputs = []
    for _ in range(trials):
        v = 0
        for reg in others:
            v |= _place(_random_register_values(reg.width, 1, rng)[0], reg.offset)
        inputs.append(v)
    outputs = run_ints(circuit, inputs, backend=backend)
    for i, out in enumerate(outputs):
        for reg in scratch:
            leftover = _extract(out, reg.offset, reg.width)
            if leftover:
                return CheckResult(
                    passed=False, check="ancilla_clean", trials=trials, seed=seed,
                    counterexample={
                        "trial": i,
                        "input": hex(inputs[i]),
                        "register": reg.name,
                        "leftover": hex(leftover),
                    })
    return CheckResult(passed=True, check="ancilla_clean", trials=trials, seed=seed)


def check_equivalence(circuit: Circuit, reference: Callable[[int], int],
                      state_register: str = "state", trials: int = 100,
                      seed: int = 0, backend: str | None = None) -> CheckResult:
    """Does the circuit's state-register action match the reference map?

    Inputs load random values into the state register with all other wires
    zero; reference takes and returns integer-encoded register values.
    """
    reg = circuit.registers[state_register]
    rng = np.random.default_rng(seed)
    values = _random_register_values(reg.width, trials, rng)
    inputs = [_place(v, reg.offset) for v in values]
    outputs = run_ints(circuit, inputs, backend=backend)
    for i, (v, out) in enumerate(zip(values, outputs)):
        got = _extract(out, reg.offset, reg.width)
        want = reference(v)
        if got != want:
            return CheckResult(
                passed=False, check="equivalence", trials=trials, seed=seed,
                counterexample={
                    "trial": i,
                    "input": hex(v),
                    "got": hex(got),
                    "want": hex(want),
                })
    return CheckResult(passed=True, check="equivalence", trials=trials, seed=seed)


def check_equivalence_exhaustive(
        circuit: Circuit,
        reference_rows: Callable[[np.ndarray], np.ndarray],
        state_register: str = "state",
        chunk_words: int = 1 << 15,
        backend: str | None = None) -> CheckResult:
    """Compare against a bit-sliced reference over every register value.

    Enumerates all 2^width values of the state register in chunks;
    reference_rows maps a packed (width, n_words) input batch to the
    expected packed outputs.  Only viable for narrow registers (the w=1
    permutation's 25 bits means 2^25 states).
    """
    reg = circuit.registers[state_register]
    total_states = 1 << reg.width
    n_words_total = (total_states + 63) // 64
    gates = CompiledGates.from_circuit(circuit)
    wires = circuit.registers.wires(state_register)
    done = 0
    while done < n_words_total:
        n_words = min(chunk_words, n_words_total - done)
        state = counter_rows(circuit.n_wires, wires, n_words,
                             start_state=done * 64)
        expected = reference_rows(state[wires.start:wires.stop].copy())
        apply_packed(gates, state, backend=backend)
        got = state[wires.start:wires.stop]
        if not np.array_equal(got, expected):
            rows, words = np.nonzero(got != expected)
            w = int(words[0])
            diff = int(got[rows[0], w]) ^ int(expected[rows[0], w])
            bit = (diff & -diff).bit_length() - 1
            index = (done + w) * 64 + bit
            return CheckResult(
                passed=False, check="equivalence_exhaustive",
                trials=total_states, seed=None,
                counterexample={"input": hex(index)})
        done += n_words
    return CheckResult(passed=True, check="equivalence_exhaustive",
                       trials=total_states, seed=None)


def check_roundtrip(circuit: Circuit, trials: int = 100, seed: int = 0,
                    backend: str | None = None) -> CheckResult:
    """Is circuit followed by its inverse the identity on random states?"""
    rng = np.random.default_rng(seed)
    inputs = _random_register_values(circuit.n_wires, trials, rng)
    forward = run_ints(circuit, inputs, backend=backend)
    back = run_ints(inverse(circuit), forward, backend=backend)
    for i, (orig, final) in enumerate(zip(inputs, back)):
        if orig != final:
            return CheckResult(
                passed=False, check="roundtrip", trials=trials, seed=seed,
                counterexample={"trial": i, "input": hex(orig),
                                "returned": hex(final)})
    return CheckResult(passed=True, check="roundtrip", trials=trials, seed=seed)


def run_netlist(netlist_text: str, input_hex: str,
                backend: str | None = None) -> str:
    """Run a serialized netlist on a hex-encoded full-width input state.

    The hex encoding is little-endian over wire indices, two chars per
    8 wires, zero-padded; the output uses the same encoding.
    """
    circuit = deserialize(netlist_text)
    n_bytes = (circuit.n_wires + 7) // 8
    if len(input_hex) != 2 * n_bytes:
        raise SimulationError(
            f"expected {2 * n_bytes} hex chars for {circuit.n_wires} wires, "
            f"got {len(input_hex)}")
    value = int.from_bytes(bytes.fromhex(input_hex), "little")
    if value >> circuit.n_wires:
        raise SimulationError("padding bits beyond the wire count must be zero")
    out = run_ints(circuit, [value], backend=backend)[0]
    return out.to_bytes(n_bytes, "little").hex()
