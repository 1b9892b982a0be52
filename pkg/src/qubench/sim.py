"""Dense state-vector simulation and measurement sampling."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .circuits import Circuit, GateInstance, _apply_to_array, bitstring_for_index, index_for_bitstring
from .errors import EmptyCounts, LengthMismatch, WidthExceeded
from .rng import substream

MAX_RUN_QUBITS = 20


@dataclass
class StateVector:
    """Amplitudes of an n-qubit register, indexed little-endian."""

    n_qubits: int
    amplitudes: np.ndarray

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class CountsTable:
    """Measurement outcome histogram. Keys are little-endian bitstrings."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        if self.shots <= 0:
            raise EmptyCounts("counts table needs a positive shot count")
        if not self.counts:
            raise EmptyCounts("counts table holds no outcomes")
        lengths = {len(k) for k in self.counts}
        if len(lengths) != 1:
            raise ValueError(f"inconsistent bitstring lengths: {sorted(lengths)}")
        if any(v < 0 for v in self.counts.values()):
            raise ValueError("negative count")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")

    @property
    def n_qubits(self) -> int:
        return len(next(iter(self.counts)))

    def frequency(self, bits: str) -> float:
        if len(bits) != self.n_qubits:
            raise LengthMismatch(f"expected {self.n_qubits} bits, got {len(bits)}")
        return self.counts.get(bits, 0) / self.shots

    def to_json(self) -> str:
        payload = {"shots": self.shots, "counts": dict(sorted(self.counts.items()))}
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CountsTable":
        payload = json.loads(text)
        return cls(counts={str(k): int(v) for k, v in payload["counts"].items()},
                   shots=int(payload["shots"]))


def run(c: Circuit) -> StateVector:
    """Simulate the circuit from |0...0> and return the final state."""
    if c.n_qubits > MAX_RUN_QUBITS:
        raise WidthExceeded(f"run supports at most {MAX_RUN_QUBITS} qubits, got {c.n_qubits}")
    amps = np.zeros(1 << c.n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    for g in c.gates:
        apply_gate(amps, g)
    return StateVector(c.n_qubits, amps)


def apply_gate(amps: np.ndarray, gate: GateInstance) -> None:
    """Apply one gate in place to a 1-D amplitude array."""
    _apply_to_array(amps, gate, kernels)


def probability(sv: StateVector, bits: str) -> float:
    """Probability of measuring the given little-endian bitstring."""
    if len(bits) != sv.n_qubits:
        raise LengthMismatch(f"expected {sv.n_qubits} bits, got {len(bits)}")
    amp = sv.amplitudes[index_for_bitstring(bits)]
    return float(np.abs(amp) ** 2)


def expectation_diagonal(sv: StateVector, cost) -> float:
    """Expectation of a diagonal observable given as cost(bitstring)."""
    probs = sv.probabilities()
    total = 0.0
    for idx, p in enumerate(probs):
        if p > 0.0:
            total += p * float(cost(bitstring_for_index(idx, sv.n_qubits)))
    return total


def expectation_values(sv: StateVector, values: np.ndarray) -> float:
    """Expectation of a diagonal observable given as a 2**n value array."""
    return float(np.real(sv.probabilities() @ values))


def _cdf(probs: np.ndarray) -> np.ndarray:
    total = probs.sum()
    cdf = np.cumsum(probs / total)
    cdf[-1] = 1.0
    return cdf


def sample(sv: StateVector, shots: int, seed: int) -> CountsTable:
    """Draw independent measurement outcomes by inverse-CDF sampling.

    Deterministic for a given seed: outcomes come from the Philox (seed, 0)
    substream, one uniform per shot.
    """
    if shots <= 0:
        raise ValueError("shots must be positive")
    cdf = _cdf(sv.probabilities())
    rng = substream(seed, 0)
    draws = np.searchsorted(cdf, rng.random(shots), side="right")
    return counts_from_indices(draws, sv.n_qubits, shots)


def counts_from_indices(indices: np.ndarray, n_qubits: int, shots: int) -> CountsTable:
    tally = np.bincount(indices, minlength=1 << n_qubits)
    counts = {
        bitstring_for_index(idx, n_qubits): int(v)
        for idx, v in enumerate(tally)
        if v > 0
    }
    return CountsTable(counts=counts, shots=shots)
