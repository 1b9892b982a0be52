"""Shared device-execution pipeline: route, decompose, run, un-permute."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit
from .devices import DeviceModel, noisy_run
from .routing import decompose_native, route
from .sim import CountsTable, run


@dataclass(frozen=True)
class PreparedCircuit:
    """A circuit rewritten for a device, with routing bookkeeping."""

    circuit: Circuit
    final_permutation: tuple[int, ...]
    depth_before: int
    depth_after: int
    two_qubit_count: int
    added_swaps: int


def prepare(c: Circuit, dev: DeviceModel) -> PreparedCircuit:
    routed = route(c, dev)
    final = decompose_native(routed.circuit, dev.native_two_qubit)
    return PreparedCircuit(
        circuit=final,
        final_permutation=routed.final_permutation,
        depth_before=routed.overhead.depth_before,
        depth_after=final.depth(),
        two_qubit_count=final.gate_counts().two_qubit,
        added_swaps=routed.overhead.added_swaps,
    )


def permute_probs(probs: np.ndarray, perm: tuple[int, ...]) -> np.ndarray:
    """Probabilities re-indexed from physical wires back to logical qubits."""
    n = len(perm)
    if perm == tuple(range(n)):
        return probs
    logical = np.arange(probs.size)
    physical = np.zeros_like(logical)
    for l_bit, p_bit in enumerate(perm):
        physical |= ((logical >> l_bit) & 1) << p_bit
    return probs[physical]


def remap_counts(counts: CountsTable, perm: tuple[int, ...]) -> CountsTable:
    """Counts keys re-ordered from physical wires back to logical qubits."""
    n = len(perm)
    if perm == tuple(range(n)):
        return counts
    remapped: dict[str, int] = {}
    for key, v in counts.counts.items():
        logical_key = "".join(key[perm[l_bit]] for l_bit in range(n))
        remapped[logical_key] = remapped.get(logical_key, 0) + v
    return CountsTable(counts=remapped, shots=counts.shots)


def run_exact_probs(c: Circuit, dev: DeviceModel) -> np.ndarray:
    """Noise-free probability vector over logical basis states."""
    prep = prepare(c, dev)
    probs = run(prep.circuit).probabilities()
    return permute_probs(probs, prep.final_permutation)


def run_device_counts(c: Circuit, dev: DeviceModel, shots: int, seed: int) -> CountsTable:
    """Sampled counts on the device, keys in logical qubit order."""
    prep = prepare(c, dev)
    counts = noisy_run(prep.circuit, dev, shots, seed)
    return remap_counts(counts, prep.final_permutation)
