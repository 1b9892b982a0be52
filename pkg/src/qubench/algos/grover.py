"""Grover search: oracle/diffusion construction and iteration-count scans."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..circuits import Circuit, GateInstance, cnot, cphase, h, rz, x
from ..devices import DeviceModel
from ..errors import WidthExceeded
from ..execute import run_device_counts
from ..results import BenchmarkResult
from ..rng import stable_seed

MAX_GROVER_QUBITS = 12


@dataclass(frozen=True)
class GroverSpec:
    """Search instance: one marked basis state and an iteration count."""

    n: int
    marked: str
    k: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("Grover search needs at least 2 qubits")
        if len(self.marked) != self.n or set(self.marked) - {"0", "1"}:
            raise ValueError(f"marked must be a length-{self.n} bitstring")
        if self.k < 0:
            raise ValueError("iteration count must be non-negative")


def grover_optimal_k(n: int, marked_count: int = 1) -> int:
    """Iteration count that lands closest to the amplitude peak."""
    if marked_count < 1:
        raise ValueError("marked_count must be positive")
    return int(math.floor((math.pi / 4.0) * math.sqrt((1 << n) / marked_count)))


def grover_success_prob(n: int, k: int, marked_count: int = 1) -> float:
    """Closed-form success probability after k iterations."""
    theta = math.asin(math.sqrt(marked_count / (1 << n)))
    return math.sin((2 * k + 1) * theta) ** 2


def _mcphase(theta: float, qubits: tuple[int, ...]) -> list[GateInstance]:
    """Phase e^{i*theta} on the all-ones subspace of the given qubits.

    Recursive ladder: a phase on q1*q2*rest splits into phases on q1*rest,
    q2*rest and (q1 xor q2)*rest at half the angle, with CNOTs computing the
    parity in place. Bottoms out at CPHASE for two qubits; the single-qubit
    case uses RZ and so carries a global phase, which no caller observes.
    """
    if len(qubits) == 1:
        return [rz(qubits[0], theta)]
    if len(qubits) == 2:
        return [cphase(qubits[0], qubits[1], theta)]
    q1, q2, rest = qubits[0], qubits[1], qubits[2:]
    gates = _mcphase(theta / 2.0, (q1,) + rest)
    gates += _mcphase(theta / 2.0, (q2,) + rest)
    gates.append(cnot(q1, q2))
    gates += _mcphase(-theta / 2.0, (q2,) + rest)
    gates.append(cnot(q1, q2))
    return gates


def _oracle(n: int, marked: str) -> list[GateInstance]:
    flips = [x(i) for i, ch in enumerate(marked) if ch == "0"]
    return flips + _mcphase(math.pi, tuple(range(n))) + flips


def _diffusion(n: int) -> list[GateInstance]:
    wall = [h(q) for q in range(n)] + [x(q) for q in range(n)]
    undo = [x(q) for q in range(n)] + [h(q) for q in range(n)]
    return wall + _mcphase(math.pi, tuple(range(n))) + undo


def make_grover(spec: GroverSpec) -> Circuit:
    """Uniform superposition followed by k oracle+diffusion rounds."""
    if spec.n > MAX_GROVER_QUBITS:
        raise WidthExceeded(
            f"make_grover supports at most {MAX_GROVER_QUBITS} qubits, got {spec.n}")
    gates = [h(q) for q in range(spec.n)]
    body = _oracle(spec.n, spec.marked) + _diffusion(spec.n)
    for _ in range(spec.k):
        gates += body
    return Circuit(spec.n, tuple(gates))


def grover_scan(n: int, marked: str, dev: DeviceModel, shots: int,
                seed: int) -> list[BenchmarkResult]:
    """Measured success probability at the optimal k and its neighbours.

    Each iteration count samples from an independent substream so adding or
    removing a scan point never disturbs the others.
    """
    k_opt = grover_optimal_k(n)
    rows = []
    for k, label in ((k_opt - 1, "k-1"), (k_opt, "k"), (k_opt + 1, "k+1")):
        circ = make_grover(GroverSpec(n=n, marked=marked, k=k))
        table = run_device_counts(circ, dev, shots, stable_seed(seed, f"k={k}"))
        p = table.frequency(marked)
        err = math.sqrt(p * (1.0 - p) / shots)
        rows.append(BenchmarkResult(
            algorithm="grover", device=dev.name, n=n,
            metric="success_prob", value=p, err=err, shots=shots, seed=seed,
            extras={"k": k, "k_label": label, "marked": marked}))
    return rows
