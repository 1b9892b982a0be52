"""GHZ-state preparation and parity-oscillation fidelity estimation."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..circuits import Circuit, cnot, h, rz
from ..errors import MissingScanSettings
from ..sim import CountsTable

_PHASE_ATOL = 1e-9


def make_ghz(n: int) -> Circuit:
    """n-qubit GHZ state (|0...0> + |1...1>)/sqrt(2): H then a CNOT fan-out."""
    if n < 2:
        raise ValueError("GHZ preparation needs at least 2 qubits")
    gates = [h(0)] + [cnot(0, t) for t in range(1, n)]
    return Circuit(n, tuple(gates))


def parity_phases(n: int) -> list[float]:
    """Scan phases j*pi/(n+1) for j = 0..n; enough to resolve the n-fold fringe."""
    return [j * math.pi / (n + 1) for j in range(n + 1)]


def parity_circuit(n: int, phase: float) -> Circuit:
    """GHZ preparation followed by RZ(phase) then H on every qubit.

    The appended pair rotates each qubit's readout onto the analyzer
    cos(phase) X + sin(phase) Y, whose n-qubit product oscillates as
    cos(n*phase) on an ideal GHZ state.
    """
    base = make_ghz(n)
    tail = [rz(q, phase) for q in range(n)] + [h(q) for q in range(n)]
    return Circuit(n, base.gates + tuple(tail))


def _parity_expectation_counts(table: CountsTable) -> float:
    signed = 0
    for key, v in table.counts.items():
        signed += v if key.count("1") % 2 == 0 else -v
    return signed / table.shots


def _parity_expectation_probs(probs: np.ndarray, n: int) -> float:
    idx = np.arange(probs.size)
    parity = np.zeros(probs.size, dtype=np.int64)
    for bit in range(n):
        parity ^= (idx >> bit) & 1
    signs = 1.0 - 2.0 * parity
    return float(probs @ signs)


def _coherence(n: int, phases: Sequence[float], pi_values: Sequence[float],
               variances: Sequence[float] | None) -> tuple[float, float]:
    """Amplitude of the n*phase Fourier component and its propagated error."""
    weights = np.exp(-1j * n * np.asarray(phases))
    total = np.sum(np.asarray(pi_values) * weights)
    scale = 2.0 / (n + 1)
    c = float(scale * abs(total))
    if variances is None:
        return c, 0.0
    if abs(total) < 1e-15:
        grads = np.full(len(phases), scale)
    else:
        grads = scale * np.real(weights * np.conj(total) / abs(total))
    var_c = float(np.sum((grads ** 2) * np.asarray(variances)))
    return c, math.sqrt(max(var_c, 0.0))


def _check_phases(n: int, phases: Sequence[float]) -> None:
    required = parity_phases(n)
    if len(phases) != len(required):
        raise MissingScanSettings(
            f"need {len(required)} parity scans for n={n}, got {len(phases)}"
        )
    for want, got in zip(required, sorted(phases)):
        if abs(want - got) > _PHASE_ATOL:
            raise MissingScanSettings(
                f"parity scan phases must be j*pi/(n+1); missing {want:.6f}"
            )


def ghz_fidelity(population_counts: CountsTable,
                 parity_scans: Sequence[tuple[float, CountsTable]]) -> tuple[float, float]:
    """GHZ fidelity estimate F = (P_pop + C)/2 from sampled counts.

    P_pop is the probability mass on |0...0> and |1...1>; C is the
    parity-fringe amplitude extracted from the scans. The error combines
    the binomial error of P_pop with the propagated per-scan errors of C.
    """
    n = population_counts.n_qubits
    _check_phases(n, [p for p, _ in parity_scans])
    p_pop = (population_counts.counts.get("0" * n, 0)
             + population_counts.counts.get("1" * n, 0)) / population_counts.shots
    var_pop = p_pop * (1.0 - p_pop) / population_counts.shots

    scans = sorted(parity_scans, key=lambda item: item[0])
    phases = [p for p, _ in scans]
    pi_values = [_parity_expectation_counts(t) for _, t in scans]
    variances = [
        max(1.0 - v * v, 0.0) / t.shots for v, (_, t) in zip(pi_values, scans)
    ]
    c, err_c = _coherence(n, phases, pi_values, variances)
    fidelity = 0.5 * (p_pop + c)
    err = 0.5 * math.sqrt(var_pop + err_c * err_c)
    return fidelity, err


def ghz_fidelity_exact(population_probs: np.ndarray,
                       parity_scans: Sequence[tuple[float, np.ndarray]]) -> tuple[float, float]:
    """GHZ fidelity from exact probability vectors; uncertainty is zero."""
    size = population_probs.size
    n = size.bit_length() - 1
    _check_phases(n, [p for p, _ in parity_scans])
    p_pop = float(population_probs[0] + population_probs[size - 1])
    scans = sorted(parity_scans, key=lambda item: item[0])
    phases = [p for p, _ in scans]
    pi_values = [_parity_expectation_probs(probs, n) for _, probs in scans]
    c, _ = _coherence(n, phases, pi_values, None)
    return 0.5 * (p_pop + c), 0.0
