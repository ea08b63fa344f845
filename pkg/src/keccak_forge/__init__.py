"""Reversible-circuit synthesis and quantum resource estimation for
reduced-round Keccak Grover oracles.

Subpackages: keccak (reference permutation), circuit (reversible netlist
IR), synth (oracle synthesis), sim (packed-bit basis-state simulator),
grover (search math + toy statevector), estimate (cost models and
feasibility tables), cli (command-line front end).
"""

from .circuit import (
    CCX,
    CNOT,
    Circuit,
    CircuitBuilder,
    CircuitError,
    CircuitParseError,
    CostModel,
    CountingMode,
    Gate,
    GateStats,
    Register,
    RegisterMap,
    X,
    append,
    deserialize,
    inverse,
    serialize,
    stats,
)
from .estimate import (
    CapabilityThresholds,
    FeasibilityReport,
    Scenario,
    conservative_scenario,
    error_probability,
    feasibility_report,
    gates_per_oracle,
    optimistic_scenario,
    physical_qubits,
    runtime,
    total_grover_gates,
)
from .grover import (
    GroverEstimate,
    GroverParams,
    grover_simulate,
    grover_sweep,
    iterations,
    speedup_summary,
    success_probability,
)
from .keccak import (
    KeccakError,
    KeccakParams,
    KeccakState,
    chi,
    chi_row,
    inverse_permute,
    iota,
    permute,
    permute_bitsliced,
    pi,
    rho,
    theta,
)
from .sim import (
    CheckResult,
    SimulationError,
    check_ancilla_clean,
    check_equivalence,
    check_equivalence_exhaustive,
    check_roundtrip,
    run,
    run_ints,
    run_netlist,
)
from .synth import (
    OracleSpec,
    SynthesisStrategy,
    paper_toffoli_count,
    synth_chi_bit_paper,
    synth_comparator,
    synth_oracle,
    synth_permutation,
    synth_permutation_paper,
    synth_permutation_verified,
)

__version__ = "0.1.0"
