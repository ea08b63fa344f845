"""Estimator: totals, runtimes, error accumulation, verdict tables."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keccak_forge import circuit as C
from keccak_forge import estimate as E
from keccak_forge import grover as G
from keccak_forge import keccak as K
from keccak_forge import synth

PAPER = C.CostModel(decomp_factor=10,
                    counting_mode=C.CountingMode.PAPER_FAITHFUL)
EXACT = C.CostModel(decomp_factor=10, counting_mode=C.CountingMode.EXACT)


def default_report(**overrides):
    params = K.KeccakParams(64, 3)
    circuit = synth.synth_permutation_paper(params)
    kwargs = dict(
        oracle_stats=C.stats(circuit, PAPER),
        logical_qubits=circuit.n_wires,
        grover_estimate=G.estimate(G.GroverParams(57.8, 1)),
        cost_model=PAPER,
    )
    kwargs.update(overrides)
    return E.feasibility_report(**kwargs)


# --- scenario type -----------------------------------------------------------


def test_scenario_requires_exactly_one_timing_field():
    with pytest.raises(E.EstimateError):
        E.Scenario("bad", gate_time_ns=50, gates_per_second=1000)
    with pytest.raises(E.EstimateError):
        E.Scenario("bad")
    with pytest.raises(E.EstimateError):
        E.Scenario("bad", gate_time_ns=-1)
    with pytest.raises(E.EstimateError):
        E.Scenario("bad", gate_time_ns=50, physical_error_rate=0.0)
    with pytest.raises(E.EstimateError):
        E.Scenario("bad", gate_time_ns=50, qec_overhead=0)


# --- gates per oracle ----------------------------------------------------------


def test_gates_per_oracle_examples():
    assert E.gates_per_oracle(9600, PAPER) == 96_000
    assert E.gates_per_oracle(9600, C.CostModel(15)) == 144_000
    assert E.gates_per_oracle(0, PAPER) == 0
    assert E.gates_per_oracle(100, EXACT, cnot_count=40) == 1040
    # paper-faithful counting ignores the CNOT tally
    assert E.gates_per_oracle(9600, PAPER, cnot_count=9600) == 96_000
    with pytest.raises(E.EstimateError):
        E.gates_per_oracle(-1, PAPER)


def test_total_grover_gates_examples():
    iters = G.iterations(G.GroverParams(57.8, 1))
    total = E.total_grover_gates(iters, 96_000, PAPER)
    assert abs(total - 7.47e13) / 7.47e13 < 0.02
    assert E.total_grover_gates(0, 96_000, PAPER) == 0
    assert E.total_grover_gates(1, 96_000, PAPER) == 192_000
    exact = E.total_grover_gates(10, 96_000, EXACT, diffusion_gates=1000)
    assert exact == 10 * 97_000
    with pytest.raises(E.EstimateError):
        E.total_grover_gates(10, 96_000, EXACT)  # diffusion proxy required


def test_consistency_identity_no_hidden_rounding():
    iters = G.iterations(G.GroverParams(57.8, 1))
    assert E.total_grover_gates(iters, 96_000, PAPER) == 2.0 * iters * 96_000


# --- runtime -------------------------------------------------------------------


def test_runtime_examples():
    run = E.runtime(7.47e13, E.optimistic_scenario())
    assert run.seconds == pytest.approx(3.735e6)
    assert run.years == pytest.approx(0.118, rel=0.01)
    assert run.days == pytest.approx(43.2, rel=0.01)
    run = E.runtime(7.47e13, E.conservative_scenario())
    assert run.seconds == pytest.approx(7.47e10)
    assert run.years == pytest.approx(2367, rel=0.01)
    zero = E.runtime(0, E.optimistic_scenario())
    assert zero.seconds == zero.days == zero.years == 0


def test_runtime_uses_julian_year():
    assert E.SECONDS_PER_YEAR == 365.25 * 24 * 3600


# --- error accumulation ----------------------------------------------------------


def test_error_probability_examples():
    assert E.error_probability(1e-3, 7.47e13) >= 1 - 1e-9
    assert E.error_probability(1e-6, 7.47e13) >= 1 - 1e-9
    assert E.error_probability(1e-3, 0) == 0.0
    assert E.error_probability(0.0, 1e20) == 0.0
    small = E.error_probability(1e-9, 1000)
    assert small == pytest.approx(1 - (1 - 1e-9) ** 1000, rel=1e-9)
    with pytest.raises(E.EstimateError):
        E.error_probability(1.0, 10)


def test_error_probability_matches_exponential_form():
    # the log-space path equals 1 - e^(-pG) in the regime the approximation
    # targets
    p, g = 1e-6, 7.47e13
    direct = 1 - math.exp(g * math.log1p(-p))
    assert E.error_probability(p, g) == pytest.approx(direct)


@settings(max_examples=80, deadline=None)
@given(p=st.floats(1e-12, 0.1), g1=st.floats(0, 1e6), g2=st.floats(0, 1e6))
def test_error_probability_compositional(p, g1, g2):
    whole = E.error_probability(p, g1 + g2)
    parts = 1 - (1 - E.error_probability(p, g1)) * (1 - E.error_probability(p, g2))
    assert whole == pytest.approx(parts, rel=1e-12, abs=1e-15)


@settings(max_examples=40, deadline=None)
@given(g=st.floats(0, 1e18), delta=st.floats(0, 1e18))
def test_monotonicity_in_gate_count(g, delta):
    p = 1e-6
    assert E.error_probability(p, g + delta) >= E.error_probability(p, g)
    sc = E.optimistic_scenario()
    assert E.runtime(g + delta, sc).seconds >= E.runtime(g, sc).seconds


def test_physical_qubits():
    assert E.physical_qubits(3200, 1000) == 3_200_000
    assert E.physical_qubits(3200, 10_000) == 32_000_000
    assert E.physical_qubits(0, 1000) == 0
    assert E.physical_qubits(3201, 1000) >= E.physical_qubits(3200, 1000)
    with pytest.raises(E.EstimateError):
        E.physical_qubits(-1, 10)


def test_diffusion_proxy_scale():
    assert E.diffusion_proxy_gates(1600, PAPER) == 2 * 1599 * 10 + 1


# --- feasibility report -----------------------------------------------------------


def test_report_table1_rows_and_verdicts():
    report = default_report()
    rows = {r.key: r for r in report.table1}
    assert set(rows) == {"logical_qubits", "toffoli_per_oracle",
                         "total_2q_gates", "error_rate", "physical_qubits"}
    assert len(report.table1) == len(rows)  # each row exactly once
    assert rows["logical_qubits"].verdict == E.INFEASIBLE
    assert rows["toffoli_per_oracle"].verdict == E.FEASIBLE
    assert rows["total_2q_gates"].verdict == E.INFEASIBLE
    assert rows["error_rate"].verdict == E.INFEASIBLE
    assert rows["physical_qubits"].verdict == E.SEVERE
    assert rows["physical_qubits"].requirement == "3,200,000"
    assert rows["logical_qubits"].nisq_capability == "100-1,000"


def test_report_table2_both_scenarios_infeasible():
    report = default_report()
    assert [s.name for s in report.scenarios] == ["optimistic", "conservative"]
    for row in report.table2:
        for name in ("optimistic", "conservative"):
            assert row[name]["verdict"] == E.INFEASIBLE
    dims = [row["dimension"] for row in report.table2]
    assert dims == ["Physical Qubits", "Execution Time", "Error Accumulation",
                    "Cryptanalytic Utility"]


def test_report_headline_numbers():
    report = default_report()
    assert report.counts["gates_per_oracle_2q"] == 96_000
    assert report.counts["toffoli_per_oracle"] == 9600
    assert report.counts["logical_qubits"] == 3200
    total = report.grover["total_2q_gates"]
    assert abs(total - 7.47e13) / 7.47e13 < 0.02
    opt, cons = report.scenarios
    assert opt.physical_qubits == 3_200_000
    assert abs(opt.run.years - 0.118) / 0.118 < 0.02
    assert abs(cons.run.years - 2367) / 2367 < 0.02
    assert opt.error_probability_physical >= 1 - 1e-9
    assert opt.error_probability_logical >= 1 - 1e-9


def test_report_feasible_with_generous_thresholds():
    generous = E.CapabilityThresholds(
        nisq_logical_qubits=(100, 1e7),
        ft_logical_qubits=(1e7, 1e9),
        nisq_gate_capacity=1e20,
        ft_gate_capacity=1e22,
        nisq_error_rate=1e-20,
        ft_error_rate=1e-21,
        nisq_physical_qubits=1e12,
        ft_physical_qubits=(1e12, 1e13),
        runtime_horizon_years=1e6,
        severe_resources=("physical_qubits",),
    )
    tiny_error = [
        E.optimistic_scenario(physical_error_rate=1e-20,
                              logical_error_rate=1e-22),
        E.conservative_scenario(gates_per_second=1e9,
                                physical_error_rate=1e-20,
                                logical_error_rate=1e-22),
    ]
    report = default_report(thresholds=generous, scenarios=tiny_error)
    assert all(row.verdict == E.FEASIBLE for row in report.table1)
    for row in report.table2:
        for s in report.scenarios:
            assert row[s.name]["verdict"] == E.FEASIBLE
    assert all(s.feasible for s in report.scenarios)


def test_thresholds_loadable_from_dict():
    t = E.CapabilityThresholds.from_dict(
        {"nisq_logical_qubits": [10, 50], "runtime_horizon_years": 7})
    assert t.nisq_logical_qubits == (10, 50)
    assert t.runtime_horizon_years == 7
    with pytest.raises(E.EstimateError):
        E.CapabilityThresholds.from_dict({"bogus": 1})


def test_exact_mode_counts_full_oracle():
    params = K.KeccakParams(64, 3)
    spec = synth.OracleSpec(params, target_digest=(0,) * 256,
                            include_inverse_pass=True)
    oracle = synth.synth_oracle(spec)
    stats = C.stats(oracle, EXACT)
    report = E.feasibility_report(
        oracle_stats=stats, logical_qubits=3200,
        grover_estimate=G.estimate(G.GroverParams(57.8, 1)),
        cost_model=EXACT, state_width=1600)
    expected_oracle_gates = stats.cnot_count + 10 * stats.toffoli_count
    assert report.counts["gates_per_oracle_2q"] == expected_oracle_gates
    iters = report.grover["iterations"]
    diffusion = E.diffusion_proxy_gates(1600, EXACT)
    assert report.grover["total_2q_gates"] == \
        iters * (expected_oracle_gates + diffusion)


def test_report_serializations_are_consistent():
    report = default_report()
    payload = json.loads(report.to_json())
    assert list(payload) == ["inputs", "counts", "grover", "scenarios",
                             "table1", "table2"]
    assert payload["counts"]["gates_per_oracle_2q"] == 96_000
    text = report.to_text()
    assert "96,000" in text and "3,200,000" in text and "9,600" in text
    assert "SEVERE" in text and "INFEASIBLE" in text
    csv_text = report.to_csv()
    assert "table1,Physical Qubits (with QEC),verdict,SEVERE" in csv_text
    assert csv_text.count("\n") > 30


def test_report_requires_scenarios():
    with pytest.raises(E.EstimateError):
        default_report(scenarios=())
