import dataclasses
import statistics

import numpy as np
import pytest
from scipy import stats

from qubench.algos import make_bell
from qubench.circuits import Circuit, cnot, h, x
from qubench.devices import (
    DeviceModel,
    device_preset,
    grid_coupling,
    load_device,
    noisy_run,
    preset_names,
    save_device,
)
from qubench.errors import UnknownPreset, UnroutedCircuit


def test_preset_catalog():
    assert preset_names() == ("IDEAL", "ION_FC", "SC_GRID20", "SC_GRID84")
    with pytest.raises(UnknownPreset):
        device_preset("QUANTUM_SUPREME_9000")


def test_ideal_preset_is_noiseless_all_to_all():
    dev = device_preset("IDEAL")
    assert dev.p1 == 0.0 and dev.p2 == 0.0 and dev.readout_flip == 0.0
    assert dev.coupling == frozenset()  # empty coupling means all-to-all


def test_grid_presets_have_lattice_couplings():
    # rows*cols grid has rows*(cols-1) + cols*(rows-1) nearest-neighbor edges
    sc20 = device_preset("SC_GRID20")
    assert sc20.n_qubits == 20
    assert len(sc20.coupling) == 31
    sc84 = device_preset("SC_GRID84")
    assert sc84.n_qubits == 84
    assert len(sc84.coupling) == 149
    assert sc20.native_two_qubit == "CZ"


def test_grid_coupling_small_case():
    assert grid_coupling(2, 2) == frozenset({(0, 1), (0, 2), (1, 3), (2, 3)})
    assert grid_coupling(4, 5) == device_preset("SC_GRID20").coupling


def test_save_load_round_trip(tmp_path):
    dev = DeviceModel(name="toy", n_qubits=3, coupling=frozenset({(0, 1), (1, 2)}),
                      native_two_qubit="CZ", p1=0.001, p2=0.01, readout_flip=0.02)
    path = tmp_path / "toy.json"
    save_device(dev, path)
    assert load_device(path) == dev


def test_noisy_run_deterministic_per_seed():
    dev = device_preset("SC_GRID20")
    circ = make_bell()
    a = noisy_run(circ, dev, shots=200, seed=5)
    b = noisy_run(circ, dev, shots=200, seed=5)
    c = noisy_run(circ, dev, shots=200, seed=6)
    assert a.counts == b.counts
    assert a.counts != c.counts
    assert sum(a.counts.values()) == 200


def test_zero_noise_matches_ideal_distribution():
    dev = device_preset("IDEAL")
    circ = make_bell()
    table = noisy_run(circ, dev, shots=10_000, seed=3)
    observed = [table.counts.get("00", 0), table.counts.get("11", 0)]
    assert sum(observed) == 10_000
    _, p_value = stats.chisquare(observed, [5000, 5000])
    assert p_value > 0.01


def test_readout_flips_follow_binomial():
    # empty circuit: only readout errors act, so P(no flip) = (1-f)^n
    dev = DeviceModel(name="ro", n_qubits=2, coupling=frozenset(),
                      native_two_qubit="CNOT", p1=0.0, p2=0.0, readout_flip=0.1)
    circ = Circuit(2, ())
    table = noisy_run(circ, dev, shots=40_000, seed=9)
    frac_clean = table.counts.get("00", 0) / table.shots
    expected = 0.9 * 0.9
    sigma = (expected * (1 - expected) / table.shots) ** 0.5
    assert abs(frac_clean - expected) < 4 * sigma


def test_two_qubit_depolarizing_damages_bell_population():
    # one rated 2q gate at p2=0.05: 8 of the 15 non-identity Pauli pairs
    # move mass off {00, 11}, so the surviving population is 1 - (8/15) p2
    dev = DeviceModel(name="p2only", n_qubits=2, coupling=frozenset(),
                      native_two_qubit="CNOT", p1=0.0, p2=0.05, readout_flip=0.0)
    pops = []
    for seed in range(10):
        table = noisy_run(make_bell(), dev, shots=2000, seed=seed)
        pops.append((table.counts.get("00", 0) + table.counts.get("11", 0)) / table.shots)
    mean_pop = statistics.mean(pops)
    assert 0.93 < mean_pop < 0.99
    assert abs(mean_pop - (1.0 - 8.0 / 15.0 * 0.05)) < 0.01


def test_noise_rates_shift_the_outcome_stream():
    quiet = device_preset("IDEAL")
    loud = dataclasses.replace(quiet, name="loud", p1=0.05, p2=0.05, readout_flip=0.05)
    circ = make_bell()
    clean = noisy_run(circ, quiet, shots=4000, seed=1)
    noisy = noisy_run(circ, loud, shots=4000, seed=1)
    clean_pop = clean.counts.get("00", 0) + clean.counts.get("11", 0)
    noisy_pop = noisy.counts.get("00", 0) + noisy.counts.get("11", 0)
    assert noisy_pop < clean_pop


def test_noisy_run_rejects_unrouted_two_qubit_gates():
    dev = device_preset("SC_GRID20")
    # qubits 0 and 19 are not adjacent on the 4x5 lattice
    circ = Circuit(20, (h(0), cnot(0, 19)))
    with pytest.raises(UnroutedCircuit):
        noisy_run(circ, dev, shots=10, seed=0)


def test_noisy_run_width_guard():
    from qubench.errors import WidthExceeded

    dev = device_preset("SC_GRID84")
    circ = Circuit(21, (x(0),))
    with pytest.raises(WidthExceeded):
        noisy_run(circ, dev, shots=10, seed=0)
