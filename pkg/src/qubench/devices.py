"""Device models: coupling maps, native gates, and stochastic Pauli noise."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .circuits import Circuit, bitstring_for_index, x, y, z
from .errors import UnknownPreset, UnroutedCircuit, WidthExceeded
from .rng import substream
from .sim import CountsTable, MAX_RUN_QUBITS, apply_gate, _cdf, run

_PAULI_1Q = (x, y, z)


@dataclass(frozen=True)
class DeviceModel:
    """Hardware abstraction: register size, connectivity, noise rates.

    An empty coupling set means all-to-all connectivity. p1 and p2 are the
    per-gate probabilities of inserting a uniformly random non-identity
    Pauli after a one- or two-qubit gate; readout_flip is the independent
    per-bit classical flip probability at measurement.
    """

    name: str
    n_qubits: int
    coupling: frozenset[tuple[int, int]]
    native_two_qubit: str
    p1: float
    p2: float
    readout_flip: float

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("device needs at least one qubit")
        if self.native_two_qubit not in ("CNOT", "CZ"):
            raise ValueError(f"native_two_qubit must be CNOT or CZ, got {self.native_two_qubit!r}")
        edges = frozenset(tuple(sorted((int(a), int(b)))) for a, b in self.coupling)
        for a, b in edges:
            if a == b or a < 0 or b >= self.n_qubits:
                raise ValueError(f"bad coupling edge ({a}, {b})")
        object.__setattr__(self, "coupling", edges)
        for rate_name in ("p1", "p2", "readout_flip"):
            rate = getattr(self, rate_name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{rate_name} must lie in [0, 1], got {rate}")

    @property
    def all_to_all(self) -> bool:
        return not self.coupling

    @property
    def zero_noise(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0 and self.readout_flip == 0.0

    def has_edge(self, a: int, b: int) -> bool:
        return self.all_to_all or tuple(sorted((a, b))) in self.coupling

    def to_config(self) -> dict:
        return {
            "name": self.name,
            "n_qubits": self.n_qubits,
            "coupling": "all_to_all" if self.all_to_all else sorted(list(e) for e in self.coupling),
            "native_two_qubit": self.native_two_qubit,
            "p1": self.p1,
            "p2": self.p2,
            "readout_flip": self.readout_flip,
        }

    @classmethod
    def from_config(cls, payload: dict) -> "DeviceModel":
        coupling = payload["coupling"]
        edges = frozenset() if coupling == "all_to_all" else frozenset(
            (int(a), int(b)) for a, b in coupling
        )
        return cls(
            name=str(payload["name"]),
            n_qubits=int(payload["n_qubits"]),
            coupling=edges,
            native_two_qubit=str(payload["native_two_qubit"]),
            p1=float(payload["p1"]),
            p2=float(payload["p2"]),
            readout_flip=float(payload["readout_flip"]),
        )


def save_device(dev: DeviceModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dev.to_config(), indent=2, sort_keys=True) + "\n")


def load_device(path: str | Path) -> DeviceModel:
    return DeviceModel.from_config(json.loads(Path(path).read_text()))


def grid_coupling(rows: int, cols: int) -> frozenset[tuple[int, int]]:
    """Nearest-neighbor edges of a rows x cols grid, row-major indexing."""
    edges = set()
    for r in range(rows):
        for c in range(cols):
            idx = r * cols + c
            if c + 1 < cols:
                edges.add((idx, idx + 1))
            if r + 1 < rows:
                edges.add((idx, idx + cols))
    return frozenset(edges)


_PRESETS = {
    "IDEAL": DeviceModel(
        name="IDEAL",
        n_qubits=MAX_RUN_QUBITS,
        coupling=frozenset(),
        native_two_qubit="CNOT",
        p1=0.0,
        p2=0.0,
        readout_flip=0.0,
    ),
    "ION_FC": DeviceModel(
        name="ION_FC",
        n_qubits=36,
        coupling=frozenset(),
        native_two_qubit="CNOT",
        p1=5e-4,
        p2=5e-3,
        readout_flip=5e-3,
    ),
    "SC_GRID20": DeviceModel(
        name="SC_GRID20",
        n_qubits=20,
        coupling=grid_coupling(4, 5),
        native_two_qubit="CZ",
        p1=1e-3,
        p2=1e-2,
        readout_flip=2e-2,
    ),
    "SC_GRID84": DeviceModel(
        name="SC_GRID84",
        n_qubits=84,
        coupling=grid_coupling(7, 12),
        native_two_qubit="CZ",
        p1=1e-3,
        p2=1e-2,
        readout_flip=2e-2,
    ),
}


def device_preset(name: str) -> DeviceModel:
    """Look up a built-in device by name."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown device preset {name!r}; available: {', '.join(sorted(_PRESETS))}"
        ) from None


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESETS))


def noisy_run(c: Circuit, dev: DeviceModel, shots: int, seed: int) -> CountsTable:
    """Monte Carlo trajectory sampling of the circuit on a noisy device.

    Each shot uses the Philox (seed, shot_index) substream and consumes, in
    order: one uniform per gate whose noise class has a nonzero rate, one
    Pauli index per triggered insertion (in gate order), one uniform for the
    measurement draw, then one uniform per qubit when readout_flip > 0.
    Gate classes with a zero rate consume no draws, so with all rates zero
    the outcome equals per-shot inverse-CDF sampling of the ideal state.
    """
    if shots <= 0:
        raise ValueError("shots must be positive")
    if c.n_qubits > dev.n_qubits:
        raise WidthExceeded(
            f"circuit has {c.n_qubits} qubits but device {dev.name} has {dev.n_qubits}"
        )
    if not dev.all_to_all:
        for g in c.gates:
            if g.kind.arity == 2 and not dev.has_edge(*g.qubits):
                raise UnroutedCircuit(
                    f"{g.kind.value} on {g.qubits} is not a coupling edge of {dev.name}"
                )

    n = c.n_qubits
    ideal_cdf = _cdf(run(c).probabilities())
    rates = np.array(
        [dev.p1 if g.kind.arity == 1 else dev.p2 for g in c.gates], dtype=np.float64
    )
    rated = np.nonzero(rates > 0.0)[0]
    rated_rates = rates[rated]
    flip = dev.readout_flip

    tally = np.zeros(1 << n, dtype=np.int64)
    scratch = np.empty(1 << n, dtype=np.complex128)
    for shot in range(shots):
        rng = substream(seed, shot)
        hits = ()
        if rated.size:
            hits = rated[rng.random(rated.size) < rated_rates]
        if len(hits):
            cdf = _replay_with_errors(c, scratch, hits, rng)
        else:
            cdf = ideal_cdf
        outcome = int(np.searchsorted(cdf, rng.random(), side="right"))
        if flip > 0.0:
            flips = rng.random(n) < flip
            for bit in range(n):
                if flips[bit]:
                    outcome ^= 1 << bit
        tally[outcome] += 1

    counts = {
        bitstring_for_index(idx, n): int(v) for idx, v in enumerate(tally) if v > 0
    }
    return CountsTable(counts=counts, shots=shots)


def _replay_with_errors(c: Circuit, amps: np.ndarray, hits, rng) -> np.ndarray:
    """Re-simulate one trajectory, inserting Paulis after the flagged gates."""
    amps[:] = 0.0
    amps[0] = 1.0
    hit_set = set(int(i) for i in hits)
    for idx, g in enumerate(c.gates):
        apply_gate(amps, g)
        if idx in hit_set:
            if g.kind.arity == 1:
                code = int(rng.integers(1, 4))
                apply_gate(amps, _PAULI_1Q[code - 1](g.qubits[0]))
            else:
                code = int(rng.integers(1, 16))
                a, b = code & 3, code >> 2
                if a:
                    apply_gate(amps, _PAULI_1Q[a - 1](g.qubits[0]))
                if b:
                    apply_gate(amps, _PAULI_1Q[b - 1](g.qubits[1]))
    return _cdf(np.abs(amps) ** 2)
