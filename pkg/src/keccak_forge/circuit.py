"""Value-semantic reversible netlist over {X, CNOT, CCX}.

Circuits are immutable after construction; CircuitBuilder is the
single-owner mutable path used by the synthesizers.  The text netlist
format round-trips bit-exactly:

    # comment
    WIRES <n>
    REG <name> <offset> <width>
    X <t>
    CNOT <c> <t>
    CCX <c1> <c2> <t>
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

X = "X"
CNOT = "CNOT"
CCX = "CCX"

_CONTROL_COUNT = {X: 0, CNOT: 1, CCX: 2}


class CircuitError(ValueError):
    """Malformed gate, register map, or circuit."""


class CircuitParseError(CircuitError):
    """Netlist text that cannot be parsed; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Gate:
    """One reversible gate.  All of X, CNOT, CCX are involutions."""

    kind: str
    target: int
    controls: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in _CONTROL_COUNT:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        expected = _CONTROL_COUNT[self.kind]
        if len(self.controls) != expected:
            raise CircuitError(
                f"{self.kind} takes {expected} controls, got {len(self.controls)}")
        wires = (*self.controls, self.target)
        if len(set(wires)) != len(wires):
            raise CircuitError(f"duplicate wire in {self.kind} gate: {wires}")
        if any(w < 0 for w in wires):
            raise CircuitError(f"negative wire index in {self.kind} gate: {wires}")

    @property
    def wires(self) -> tuple[int, ...]:
        return (*self.controls, self.target)


def x(target: int) -> Gate:
    return Gate(X, target)


def cnot(control: int, target: int) -> Gate:
    return Gate(CNOT, target, (control,))


def ccx(control_a: int, control_b: int, target: int) -> Gate:
    return Gate(CCX, target, (control_a, control_b))


@dataclass(frozen=True)
class Register:
    name: str
    offset: int
    width: int


class RegisterMap:
    """Named, disjoint, contiguous wire ranges covering [0, total)."""

    def __init__(self, registers: Sequence[Register]):
        offset = 0
        by_name: dict[str, Register] = {}
        for reg in registers:
            if reg.width <= 0:
                raise CircuitError(f"register {reg.name!r} has width {reg.width}")
            if reg.offset != offset:
                raise CircuitError(
                    f"register {reg.name!r} at offset {reg.offset}, expected "
                    f"{offset} (registers must be contiguous)")
            if reg.name in by_name:
                raise CircuitError(f"duplicate register name {reg.name!r}")
            by_name[reg.name] = reg
            offset += reg.width
        self._registers = tuple(registers)
        self._by_name = by_name
        self._total = offset

    @classmethod
    def build(cls, layout: Sequence[tuple[str, int]]) -> "RegisterMap":
        """Assign offsets sequentially from (name, width) pairs."""
        regs = []
        offset = 0
        for name, width in layout:
            regs.append(Register(name, offset, width))
            offset += width
        return cls(regs)

    @property
    def total_wires(self) -> int:
        return self._total

    @property
    def registers(self) -> tuple[Register, ...]:
        return self._registers

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> Register:
        try:
            return self._by_name[name]
        except KeyError:
            raise CircuitError(f"unknown register {name!r}") from None

    def wires(self, name: str) -> range:
        reg = self[name]
        return range(reg.offset, reg.offset + reg.width)

    def names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self._registers)

    def __eq__(self, other) -> bool:
        return isinstance(other, RegisterMap) and self._registers == other._registers

    def __repr__(self) -> str:
        inner = ", ".join(f"{r.name}[{r.width}]" for r in self._registers)
        return f"RegisterMap({inner})"


@dataclass(frozen=True)
class GateStats:
    """Exact gate tallies plus a 2-qubit-gate equivalent.

    two_qubit_equiv counts each CNOT as one 2-qubit gate and each Toffoli
    as decomp_factor of them.  depth is greedy earliest-layer assignment:
    gates sharing a wire occupy distinct layers, connectivity ignored.
    """

    x_count: int
    cnot_count: int
    toffoli_count: int
    depth: int
    two_qubit_equiv: int

    @property
    def total_gates(self) -> int:
        return self.x_count + self.cnot_count + self.toffoli_count


class CountingMode(enum.Enum):
    """How oracle gate totals are derived from tallies.

    PAPER_FAITHFUL reproduces the headline accounting (forward-pass
    Toffolis times the decomposition factor); EXACT counts every 2-qubit
    gate of the synthesized artifact, comparator and inverse pass included.
    """

    PAPER_FAITHFUL = "paper"
    EXACT = "exact"


@dataclass(frozen=True)
class CostModel:
    """Knobs turning gate tallies into 2-qubit-gate totals."""

    decomp_factor: int = 10
    counting_mode: CountingMode = CountingMode.PAPER_FAITHFUL

    def __post_init__(self):
        if self.decomp_factor < 1:
            raise CircuitError(
                f"decomp_factor must be >= 1, got {self.decomp_factor}")


class Circuit:
    """Ordered gate sequence over a register map.  Immutable value."""

    def __init__(self, registers: RegisterMap, gates: Iterable[Gate] = (),
                 label: str = ""):
        self._registers = registers
        gates = tuple(gates)
        total = registers.total_wires
        for g in gates:
            _check_gate_range(g, total)
        self._gates = gates
        self.label = label

    @property
    def registers(self) -> RegisterMap:
        return self._registers

    @property
    def gates(self) -> tuple[Gate, ...]:
        return self._gates

    @property
    def n_wires(self) -> int:
        return self._registers.total_wires

    def __len__(self) -> int:
        return len(self._gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self._gates)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Circuit)
                and self._registers == other._registers
                and self._gates == other._gates)

    def __repr__(self) -> str:
        return (f"Circuit({self._registers!r}, {len(self._gates)} gates"
                + (f", label={self.label!r}" if self.label else "") + ")")


def _check_gate_range(gate: Gate, total: int) -> None:
    for w in gate.wires:
        if w >= total:
            raise CircuitError(
                f"wire {w} out of range for {total}-wire circuit")


def append(circuit: Circuit, gate: Gate) -> Circuit:
    """Return a new circuit with gate appended."""
    _check_gate_range(gate, circuit.n_wires)
    return Circuit(circuit.registers, (*circuit.gates, gate), circuit.label)


def inverse(circuit: Circuit) -> Circuit:
    """Reverse the gate order; every gate kind is its own inverse."""
    label = f"inverse({circuit.label})" if circuit.label else ""
    return Circuit(circuit.registers, tuple(reversed(circuit.gates)), label)


def concat(first: Circuit, second: Circuit, label: str = "") -> Circuit:
    if first.registers != second.registers:
        raise CircuitError("cannot concatenate circuits with different registers")
    return Circuit(first.registers, first.gates + second.gates, label)


def stats(circuit: Circuit, cost_model: CostModel = CostModel()) -> GateStats:
    """Exact tallies plus greedy-layered depth and 2-qubit equivalent."""
    x_count = cnot_count = toffoli_count = 0
    last_layer = [0] * circuit.n_wires
    depth = 0
    for g in circuit.gates:
        if g.kind == CCX:
            toffoli_count += 1
        elif g.kind == CNOT:
            cnot_count += 1
        else:
            x_count += 1
        layer = 1 + max(last_layer[w] for w in g.wires)
        for w in g.wires:
            last_layer[w] = layer
        if layer > depth:
            depth = layer
    return GateStats(
        x_count=x_count,
        cnot_count=cnot_count,
        toffoli_count=toffoli_count,
        depth=depth,
        two_qubit_equiv=cnot_count + cost_model.decomp_factor * toffoli_count,
    )


class CircuitBuilder:
    """Single-owner accumulator for synthesizing circuits."""

    def __init__(self, registers: RegisterMap, label: str = ""):
        self.registers = registers
        self.label = label
        self._gates: list[Gate] = []
        self._total = registers.total_wires

    def append(self, gate: Gate) -> None:
        _check_gate_range(gate, self._total)
        self._gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def x(self, target: int) -> None:
        self.append(Gate(X, target))

    def cnot(self, control: int, target: int) -> None:
        self.append(Gate(CNOT, target, (control,)))

    def ccx(self, control_a: int, control_b: int, target: int) -> None:
        self.append(Gate(CCX, target, (control_a, control_b)))

    def __len__(self) -> int:
        return len(self._gates)

    def build(self) -> Circuit:
        return Circuit(self.registers, self._gates, self.label)


# ---------------------------------------------------------------------------
# Text netlist serialization
# ---------------------------------------------------------------------------


def serialize(circuit: Circuit) -> str:
    lines = []
    if circuit.label:
        lines.append(f"# label: {' '.join(circuit.label.splitlines())}")
    lines.append(f"WIRES {circuit.n_wires}")
    for reg in circuit.registers.registers:
        lines.append(f"REG {reg.name} {reg.offset} {reg.width}")
    for g in circuit.gates:
        lines.append(" ".join((g.kind, *map(str, (*g.controls, g.target)))))
    return "\n".join(lines) + "\n"


def deserialize(text: str | bytes) -> Circuit:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    total: int | None = None
    regs: list[Register] = []
    gates: list[Gate] = []
    registers: RegisterMap | None = None
    label = ""

    def fail(line_no: int, msg: str):
        raise CircuitParseError(line_no, msg)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("# label:"):
            label = line[len("# label:"):].strip()
            continue
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        keyword = fields[0]
        if keyword == "WIRES":
            if total is not None:
                fail(line_no, "duplicate WIRES header")
            if len(fields) != 2 or not fields[1].isdigit():
                fail(line_no, f"malformed WIRES line: {line!r}")
            total = int(fields[1])
            continue
        if keyword == "REG":
            if total is None:
                fail(line_no, "REG before WIRES header")
            if registers is not None:
                fail(line_no, "REG after first gate")
            if len(fields) != 4 or not (fields[2].isdigit() and fields[3].isdigit()):
                fail(line_no, f"malformed REG line: {line!r}")
            regs.append(Register(fields[1], int(fields[2]), int(fields[3])))
            continue
        if keyword not in _CONTROL_COUNT:
            fail(line_no, f"unknown gate kind {keyword!r}")
        if registers is None:
            registers = _finish_header(total, regs, line_no)
        argc = _CONTROL_COUNT[keyword] + 1
        if len(fields) != 1 + argc or not all(f.isdigit() for f in fields[1:]):
            fail(line_no, f"{keyword} takes {argc} wire indices: {line!r}")
        wires = tuple(map(int, fields[1:]))
        try:
            gate = Gate(keyword, wires[-1], wires[:-1])
            _check_gate_range(gate, registers.total_wires)
        except CircuitError as exc:
            fail(line_no, str(exc))
        gates.append(gate)

    if registers is None:
        registers = _finish_header(total, regs, line_no=0)
    return Circuit(registers, gates, label)


def _finish_header(total: int | None, regs: list[Register], line_no: int) -> RegisterMap:
    if total is None:
        raise CircuitParseError(max(line_no, 1), "missing WIRES header")
    if not regs:
        regs = [Register("state", 0, total)] if total else []
    try:
        rmap = RegisterMap(regs)
    except CircuitError as exc:
        raise CircuitParseError(max(line_no, 1), str(exc)) from None
    if rmap.total_wires != total:
        raise CircuitParseError(
            max(line_no, 1),
            f"registers cover {rmap.total_wires} wires but WIRES says {total}")
    return rmap
