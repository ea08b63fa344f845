"""Closed-form Grover search mathematics plus a toy statevector simulator.

The closed forms (iteration count, success probability, quadratic
speedup) work at any scale via log-space arithmetic; the statevector
simulator is capped at 20 qubits and exists to validate the closed forms
empirically on small search spaces, not to model gate-level cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

MAX_SIM_QUBITS = 20


class GroverError(ValueError):
    """Invalid search-space parameters."""


@dataclass(frozen=True)
class GroverParams:
    """Search space size as log2(N) plus the number of marked states."""

    log2_search_space: float
    marked_count: int = 1

    def __post_init__(self):
        if self.log2_search_space < 0:
            raise GroverError(
                f"log2_search_space must be >= 0, got {self.log2_search_space}")
        if self.marked_count < 1:
            raise GroverError(
                f"marked_count must be >= 1, got {self.marked_count}")
        if self.marked_count > self.search_space:
            raise GroverError("marked_count exceeds the search space")

    @property
    def search_space(self) -> float:
        return 2.0 ** self.log2_search_space


@dataclass(frozen=True)
class GroverEstimate:
    sqrt_n: float
    iterations: int
    success_probability: float


def iterations(params: GroverParams) -> int:
    """Optimal iteration count floor((pi/4) * sqrt(N/M))."""
    return math.floor((math.pi / 4.0)
                      * math.sqrt(params.search_space / params.marked_count))


def success_probability(params: GroverParams, k: int) -> float:
    """Probability of measuring a marked state after k iterations.

    Standard amplitude-rotation analysis: sin^2((2k+1) * asin(sqrt(M/N))).
    """
    if k < 0:
        raise GroverError(f"iteration count must be >= 0, got {k}")
    theta = math.asin(math.sqrt(params.marked_count / params.search_space))
    return math.sin((2 * k + 1) * theta) ** 2


def estimate(params: GroverParams) -> GroverEstimate:
    k = iterations(params)
    return GroverEstimate(
        sqrt_n=math.sqrt(params.search_space),
        iterations=k,
        success_probability=success_probability(params, k),
    )


def speedup_summary(t_cl_log2: float) -> dict[str, float]:
    """Classical cost 2^T against the quadratically accelerated 2^(T/2)."""
    if t_cl_log2 < 0:
        raise GroverError(f"t_cl_log2 must be >= 0, got {t_cl_log2}")
    return {"classical": 2.0 ** t_cl_log2, "quantum": 2.0 ** (t_cl_log2 / 2.0)}


def _marked_mask(n_states: int, marked) -> np.ndarray:
    if callable(marked):
        mask = np.fromiter((bool(marked(i)) for i in range(n_states)),
                           dtype=bool, count=n_states)
    else:
        mask = np.zeros(n_states, dtype=bool)
        indices = list(marked)
        if not indices:
            raise GroverError("marked set is empty")
        for i in indices:
            if not 0 <= i < n_states:
                raise GroverError(f"marked index {i} outside [0, {n_states})")
            mask[i] = True
    if not mask.any():
        raise GroverError("marked set is empty")
    return mask


def grover_simulate(n_qubits: int, marked: Callable[[int], bool] | Iterable[int],
                    k: int) -> float:
    """Dense statevector run: uniform start, k phase-flip + diffusion rounds.

    Returns the probability mass on the marked set.  Diffusion is exact
    inversion about the mean, not a gate decomposition.
    """
    probs = grover_sweep(n_qubits, marked, k)
    return probs[k]


def grover_sweep(n_qubits: int, marked: Callable[[int], bool] | Iterable[int],
                 k_max: int) -> list[float]:
    """Marked-set probability after each of 0..k_max iterations."""
    if not 1 <= n_qubits <= MAX_SIM_QUBITS:
        raise GroverError(
            f"n_qubits must be in [1, {MAX_SIM_QUBITS}], got {n_qubits}")
    if k_max < 0:
        raise GroverError(f"k_max must be >= 0, got {k_max}")
    n_states = 1 << n_qubits
    mask = _marked_mask(n_states, marked)
    amps = np.full(n_states, 1.0 / math.sqrt(n_states))
    probs = [float(np.sum(amps[mask] ** 2))]
    for _ in range(k_max):
        amps[mask] *= -1.0
        amps = 2.0 * amps.mean() - amps
        probs.append(float(np.sum(amps[mask] ** 2)))
    return probs
