"""Reversible-circuit synthesis for r-round Keccak-f[25w] Grover oracles.

Two strategies are provided:

* ``paper``    - the simplified 1-D model behind the headline gate counts:
  one 25w-qubit state array, one 25w-qubit ancilla array, per-round
  lightweight CNOT diffusion plus the two-Toffoli non-linear block per
  state bit.  Gate counts are exact and closed-form (2 * 25w * rounds
  Toffolis); the circuit's action intentionally does not reproduce true
  Keccak semantics.

* ``verified`` - a construction whose basis-state action equals the
  reference permutation bit-for-bit: column parities on a shared 5w-wire
  scratch register, rotation/lane-permutation as wire relabeling, the
  non-linear step computed out-of-place into one fresh 25w register per
  round, and round constants as X gates.  Intermediate round registers
  stay populated after the forward pass and are cleaned by the oracle's
  inverse pass.

Both strategies compose into preimage oracles: forward circuit, bit-flip
equality comparator against a target digest, optional inverse pass that
restores every scratch wire.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .circuit import Circuit, CircuitBuilder, CircuitError, RegisterMap
from .keccak import (
    KeccakParams,
    ROTATION_OFFSETS,
    ROUND_CONSTANTS,
    flat_index,
)

STATE = "state"
ANCILLA = "ancilla"
THETA_PARITY = "theta_par"
COMPARE_LADDER = "cmp_ladder"
RESULT = "result"


class SynthesisStrategy(enum.Enum):
    """Which circuit family to synthesize."""

    PAPER_MODEL = "paper"
    VERIFIED = "verified"


@dataclass(frozen=True)
class OracleSpec:
    """Everything needed to synthesize one preimage oracle."""

    params: KeccakParams
    strategy: SynthesisStrategy = SynthesisStrategy.PAPER_MODEL
    target_digest: tuple[int, ...] | None = None
    include_inverse_pass: bool = False

    def __post_init__(self):
        if self.target_digest is not None:
            m = len(self.target_digest)
            if not 0 < m <= self.params.state_bits:
                raise CircuitError(
                    f"target digest width {m} must be in (0, "
                    f"{self.params.state_bits}]")
            if any(b not in (0, 1) for b in self.target_digest):
                raise CircuitError("target digest bits must be 0/1")


def digest_from_int(value: int, width: int) -> tuple[int, ...]:
    """Little-endian bit tuple of a digest value."""
    return tuple((value >> i) & 1 for i in range(width))


# ---------------------------------------------------------------------------
# Simplified 1-D model
# ---------------------------------------------------------------------------


def synth_chi_bit_paper(builder: CircuitBuilder, state_wire: int,
                        neighbor1: int, neighbor2: int, ancilla: int) -> None:
    """Append the per-bit non-linear block of the 1-D model.

    X-conjugated Toffoli computes (~n1 & n2) into the ancilla, a CNOT adds
    it to the state wire, and a second Toffoli uncomputes the ancilla so it
    returns to |0> for reuse: 2 Toffoli, 1 CNOT, 2 X per state bit.
    """
    wires = (state_wire, neighbor1, neighbor2, ancilla)
    if len(set(wires)) != 4:
        raise CircuitError(f"chi bit block needs 4 distinct wires, got {wires}")
    builder.x(neighbor1)
    builder.ccx(neighbor1, neighbor2, ancilla)
    builder.cnot(ancilla, state_wire)
    builder.ccx(neighbor1, neighbor2, ancilla)
    builder.x(neighbor1)


def synth_permutation_paper(params: KeccakParams) -> Circuit:
    """The 1-D model circuit: 2 * 25w * rounds Toffolis, 2 * 25w wires.

    Each round first applies a placeholder linear layer (a single CNOT
    pass, wire j controlling wire (j+5) mod 25w) standing in for the
    linear mixing steps, then the non-linear block for every state bit
    with neighbors taken inside the bit's consecutive 5-wire group.
    """
    n = params.state_bits
    registers = RegisterMap.build([(STATE, n), (ANCILLA, n)])
    builder = CircuitBuilder(
        registers, label=f"paper-model w={params.lane_width} r={params.rounds}")
    for _ in range(params.rounds):
        for j in range(n):
            builder.cnot(j, (j + 5) % n)
        for j in range(n):
            group = j // 5
            pos = j % 5
            n1 = 5 * group + (pos + 1) % 5
            n2 = 5 * group + (pos + 2) % 5
            synth_chi_bit_paper(builder, j, n1, n2, n + j)
    return builder.build()


# ---------------------------------------------------------------------------
# Verified construction
# ---------------------------------------------------------------------------


def _verified_layout(params: KeccakParams) -> RegisterMap:
    n = params.state_bits
    layout = [(STATE, n)]
    layout += [(f"round_out_{k}", n) for k in range(params.rounds)]
    if params.rounds:
        layout.append((THETA_PARITY, 5 * params.lane_width))
    return RegisterMap.build(layout)


def _rho_pi_source(x: int, y: int, z: int, w: int) -> tuple[int, int, int]:
    """Coordinates whose pre-rho/pi value lands at (x, y, z) afterwards.

    pi moves lane (a, b) to (b, (2a+3b) mod 5), so the lane landing at
    (x, y) is (a, b) with b = x and (2a + 3x) mod 5 = y; rho then means
    depth z came from z - offset(a, b) mod w.
    """
    b = x
    a = (3 * (y - 3 * b)) % 5  # 2a = y - 3b (mod 5); inverse of 2 mod 5 is 3
    return a, b, (z - ROTATION_OFFSETS[a][b]) % w


def synth_permutation_verified(params: KeccakParams) -> Circuit:
    """A circuit matching the reference permutation on every basis state.

    Per round, with CUR the register holding the round input and OUT the
    fresh round register:

    1. column parities of CUR into the shared parity register
    2. mixing terms applied in place on CUR (CUR becomes theta(A))
    3. per output bit, reading CUR through the rotation/lane-permutation
       relabeling: copy CNOT, then X-conjugated Toffoli for the
       non-linear term, into OUT
    4. round constant X gates on OUT
    5. steps 2 and 1 undone, restoring CUR to the round input and the
       parity register to zero

    The mixing terms must be undone before the parities can be, so the
    parity register stays reusable across rounds at the cost of a second
    CNOT pair per state bit.  A final swap moves the last round register
    into ``state`` so the state register carries the permutation output.
    """
    w = params.lane_width
    n = params.state_bits
    registers = _verified_layout(params)
    builder = CircuitBuilder(
        registers, label=f"verified w={w} r={params.rounds}")
    if params.rounds == 0:
        return builder.build()

    par = registers[THETA_PARITY].offset

    def parity_wire(xx: int, zz: int) -> int:
        return par + w * xx + zz

    cur = registers[STATE].offset
    for k, round_index in enumerate(
            range(params.round_offset, params.round_offset + params.rounds)):
        out = registers[f"round_out_{k}"].offset

        def cur_wire(xx: int, yy: int, zz: int) -> int:
            return cur + flat_index(xx, yy, zz, w)

        # 1. column parities
        for xx in range(5):
            for zz in range(w):
                for yy in range(5):
                    builder.cnot(cur_wire(xx, yy, zz), parity_wire(xx, zz))
        # 2. mixing terms in place
        for xx in range(5):
            for yy in range(5):
                for zz in range(w):
                    builder.cnot(parity_wire((xx - 1) % 5, zz),
                                 cur_wire(xx, yy, zz))
                    builder.cnot(parity_wire((xx + 1) % 5, (zz - 1) % w),
                                 cur_wire(xx, yy, zz))
        # 3. non-linear step, out of place, through the relabeling
        for yy in range(5):
            for xx in range(5):
                for zz in range(w):
                    dest = out + flat_index(xx, yy, zz, w)
                    src = cur_wire(*_rho_pi_source(xx, yy, zz, w))
                    n1 = cur_wire(*_rho_pi_source((xx + 1) % 5, yy, zz, w))
                    n2 = cur_wire(*_rho_pi_source((xx + 2) % 5, yy, zz, w))
                    builder.cnot(src, dest)
                    builder.x(n1)
                    builder.ccx(n1, n2, dest)
                    builder.x(n1)
        # 4. round constant
        rc = ROUND_CONSTANTS[round_index] & ((1 << w) - 1)
        for zz in range(w):
            if (rc >> zz) & 1:
                builder.x(out + flat_index(0, 0, zz, w))
        # 5. undo mixing terms, then parities
        for xx in range(5):
            for yy in range(5):
                for zz in range(w):
                    builder.cnot(parity_wire((xx - 1) % 5, zz),
                                 cur_wire(xx, yy, zz))
                    builder.cnot(parity_wire((xx + 1) % 5, (zz - 1) % w),
                                 cur_wire(xx, yy, zz))
        for xx in range(5):
            for zz in range(w):
                for yy in range(5):
                    builder.cnot(cur_wire(xx, yy, zz), parity_wire(xx, zz))
        cur = out

    # swap the final round register into the state register
    state0 = registers[STATE].offset
    for j in range(n):
        builder.cnot(state0 + j, cur + j)
        builder.cnot(cur + j, state0 + j)
        builder.cnot(state0 + j, cur + j)
    return builder.build()


def synth_permutation(params: KeccakParams,
                      strategy: SynthesisStrategy) -> Circuit:
    if strategy is SynthesisStrategy.PAPER_MODEL:
        return synth_permutation_paper(params)
    return synth_permutation_verified(params)


# ---------------------------------------------------------------------------
# Comparator and oracle assembly
# ---------------------------------------------------------------------------


def _append_comparator(builder: CircuitBuilder, digest_wires: Sequence[int],
                       target: Sequence[int], ladder_offset: int,
                       result_wire: int) -> None:
    """Flip result_wire iff the digest wires equal the target bits.

    X conjugation turns equality-with-target into all-ones and an AND
    ladder folds that into its last wire; the digest wires are restored
    around each ladder pass, so the conjugating X pairs appear on both
    the compute and the uncompute pass: 2(m-1) Toffolis, one CNOT, and
    4 X gates per zero target bit (2 when m == 1 and there is no ladder).
    """
    m = len(target)
    zeros = [digest_wires[i] for i in range(m) if not target[i]]

    def conjugate():
        for wv in zeros:
            builder.x(wv)

    if m == 1:
        conjugate()
        builder.cnot(digest_wires[0], result_wire)
        conjugate()
        return

    def ladder(reverse: bool):
        steps = [(digest_wires[0], digest_wires[1], ladder_offset)]
        steps += [(ladder_offset + i - 2, digest_wires[i], ladder_offset + i - 1)
                  for i in range(2, m)]
        for a, b, t in (reversed(steps) if reverse else steps):
            builder.ccx(a, b, t)

    conjugate()
    ladder(reverse=False)
    conjugate()
    builder.cnot(ladder_offset + m - 2, result_wire)
    conjugate()
    ladder(reverse=True)
    conjugate()


def synth_comparator(digest_width: int, target: Sequence[int]) -> Circuit:
    """Standalone equality comparator circuit for tests and inspection."""
    if digest_width < 1:
        raise CircuitError(f"digest width must be >= 1, got {digest_width}")
    if len(target) != digest_width:
        raise CircuitError(
            f"target has {len(target)} bits, digest width is {digest_width}")
    layout = [(STATE, digest_width)]
    if digest_width > 1:
        layout.append((COMPARE_LADDER, digest_width - 1))
    layout.append((RESULT, 1))
    registers = RegisterMap.build(layout)
    builder = CircuitBuilder(registers, label=f"comparator m={digest_width}")
    ladder = registers[COMPARE_LADDER].offset if digest_width > 1 else 0
    _append_comparator(builder, list(range(digest_width)), tuple(target),
                       ladder, registers[RESULT].offset)
    return builder.build()


def synth_oracle(spec: OracleSpec) -> Circuit:
    """Forward permutation, optional comparator, optional inverse pass.

    With the inverse pass enabled, simulation on any basis state returns
    every non-state, non-result wire to 0, restores the state register to
    the oracle input, and flips the result wire iff the permutation output
    matches the target on the digest wires.
    """
    forward = synth_permutation(spec.params, spec.strategy)
    target = spec.target_digest
    m = len(target) if target is not None else 0

    layout = [(r.name, r.width) for r in forward.registers.registers]
    if target is not None:
        if m > 1:
            layout.append((COMPARE_LADDER, m - 1))
        layout.append((RESULT, 1))
    registers = RegisterMap.build(layout)

    builder = CircuitBuilder(
        registers,
        label=(f"oracle {spec.strategy.value} w={spec.params.lane_width} "
               f"r={spec.params.rounds}"))
    builder.extend(forward.gates)
    if target is not None:
        state_offset = registers[STATE].offset
        ladder = registers[COMPARE_LADDER].offset if m > 1 else 0
        _append_comparator(builder,
                           [state_offset + i for i in range(m)],
                           target, ladder, registers[RESULT].offset)
    if spec.include_inverse_pass:
        builder.extend(reversed(forward.gates))
    return builder.build()


def scratch_register_names(circuit: Circuit) -> list[str]:
    """Registers an oracle must return to zero: everything but state/result."""
    return [r.name for r in circuit.registers.registers
            if r.name not in (STATE, RESULT)]


def paper_toffoli_count(params: KeccakParams) -> int:
    """Closed form for the 1-D model: 2 Toffolis per state bit per round."""
    return 2 * params.state_bits * params.rounds
