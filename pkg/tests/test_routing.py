import math

import numpy as np
import pytest

from qubench.algos import make_ghz, make_qft
from qubench.circuits import Circuit, GateKind, cnot, cphase, h, rx, swap
from qubench.devices import DeviceModel, device_preset
from qubench.errors import DisconnectedGraph
from qubench.rng import substream
from qubench.routing import decompose_native, report_to_csv, route, routing_report


def line_device(n: int, name: str = "line") -> DeviceModel:
    edges = frozenset((i, i + 1) for i in range(n - 1))
    return DeviceModel(name=name, n_qubits=n, coupling=edges,
                       native_two_qubit="CNOT", p1=0.0, p2=0.0, readout_flip=0.0)


def random_circuit(n: int, n_gates: int, seed: int) -> Circuit:
    rng = substream(seed, 0)
    gates = []
    for _ in range(n_gates):
        roll = rng.random()
        a = int(rng.integers(n))
        b = int((a + 1 + rng.integers(n - 1)) % n)
        if roll < 0.4:
            gates.append(h(a) if rng.random() < 0.5 else rx(a, float(rng.random())))
        elif roll < 0.7:
            gates.append(cnot(a, b))
        else:
            gates.append(cphase(a, b, float(rng.random() * math.pi)))
    return Circuit(n, tuple(gates))


def permuted_unitary(u: np.ndarray, perm: tuple[int, ...]) -> np.ndarray:
    """Rewrite a routed unitary back into logical output order.

    Inputs start on the identity placement, so only rows move: logical
    output L lives at the physical index built from perm.
    """
    n = len(perm)
    dim = 1 << n
    indices = np.zeros(dim, dtype=np.int64)
    for idx in range(dim):
        out = 0
        for logical, physical in enumerate(perm):
            out |= ((idx >> logical) & 1) << physical
        indices[idx] = out
    return u[indices, :]


def test_all_to_all_routing_is_identity():
    dev = device_preset("IDEAL")
    routed = route(make_ghz(5), dev)
    assert routed.overhead.added_swaps == 0
    assert routed.final_permutation == tuple(range(5))
    assert routed.circuit.gates == make_ghz(5).gates


def test_ghz_on_line_needs_four_swaps():
    # a CNOT fan-out from qubit 0 on a 6-qubit line walks the control across
    routed = route(make_ghz(6), line_device(6))
    assert routed.overhead.added_swaps == 4
    assert routed.overhead.depth_after >= routed.overhead.depth_before


def test_routed_circuits_respect_coupling():
    dev = device_preset("SC_GRID20")
    routed = route(make_qft(6), dev)
    for gate in routed.circuit.gates:
        if len(gate.qubits) == 2:
            a, b = sorted(gate.qubits)
            assert (a, b) in dev.coupling


def test_routed_circuit_equivalent_up_to_permutation():
    dev = device_preset("SC_GRID20")
    for seed in range(8):
        circ = random_circuit(5, 12, seed)
        routed = route(circ, dev)
        u_routed = permuted_unitary(routed.circuit.to_unitary(),
                                    routed.final_permutation)
        assert np.max(np.abs(u_routed - circ.to_unitary())) < 1e-9


def test_route_rejects_disconnected_device():
    dev = DeviceModel(name="split", n_qubits=4,
                      coupling=frozenset({(0, 1), (2, 3)}),
                      native_two_qubit="CNOT", p1=0.0, p2=0.0, readout_flip=0.0)
    with pytest.raises(DisconnectedGraph):
        route(Circuit(4, (cnot(0, 3),)), dev)


def test_decompose_to_cnot_preserves_unitary():
    circ = Circuit(3, (h(0), cphase(0, 1, 0.7), swap(1, 2), cphase(0, 2, -1.3)))
    native = decompose_native(circ, "CNOT")
    kinds = {g.kind for g in native.gates if len(g.qubits) == 2}
    assert kinds <= {GateKind.CNOT}
    u_a = circ.to_unitary()
    u_b = native.to_unitary()
    # compare up to global phase
    k = int(np.argmax(np.abs(u_a)))
    phase = u_b.flat[k] / u_a.flat[k]
    assert abs(abs(phase) - 1.0) < 1e-9
    assert np.max(np.abs(u_a * phase - u_b)) < 1e-9


def test_decompose_to_cz_preserves_unitary():
    # CZ-native hardware keeps CPHASE: both are diagonal two-qubit phases
    circ = Circuit(3, (h(1), cnot(0, 1), cphase(1, 2, 2.2), swap(0, 2)))
    native = decompose_native(circ, "CZ")
    kinds = {g.kind for g in native.gates if len(g.qubits) == 2}
    assert kinds <= {GateKind.CZ, GateKind.CPHASE}
    assert GateKind.CNOT not in kinds and GateKind.SWAP not in kinds
    u_a = circ.to_unitary()
    u_b = native.to_unitary()
    k = int(np.argmax(np.abs(u_a)))
    phase = u_b.flat[k] / u_a.flat[k]
    assert np.max(np.abs(u_a * phase - u_b)) < 1e-9


def test_qft6_cnot_native_two_qubit_count():
    native = decompose_native(make_qft(6), "CNOT")
    assert native.gate_counts().two_qubit == 39


def test_routing_report_rows_and_csv():
    devs = [device_preset("ION_FC"), device_preset("SC_GRID20")]
    rows = routing_report(make_qft(6), devs)
    assert [row.device for row in rows] == ["ION_FC", "SC_GRID20"]
    ion, grid = rows
    assert ion.added_swaps == 0
    assert grid.added_swaps > 0
    assert grid.depth_after > ion.depth_after
    csv_text = report_to_csv(rows)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "device,n,depth_before,depth_after,two_qubit_count,added_swaps"
    assert len(lines) == 3
    assert lines[1].startswith("ION_FC,6,")


def test_qft_roundtrip_depth_gap_grows_with_n():
    ion = device_preset("ION_FC")
    grid = device_preset("SC_GRID20")
    from qubench.algos import make_qft_roundtrip
    from qubench.execute import prepare

    gaps = {}
    for n in (6, 10):
        circ = make_qft_roundtrip(n)
        d_ion = prepare(circ, ion).depth_after
        d_grid = prepare(circ, grid).depth_after
        assert d_grid > d_ion
        gaps[n] = d_grid / d_ion
    assert gaps[10] > gaps[6]
