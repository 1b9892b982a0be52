import math

import numpy as np
import pytest

from qubench.algos import (
    ghz_fidelity,
    ghz_fidelity_exact,
    make_ghz,
    parity_circuit,
    parity_phases,
)
from qubench.errors import MissingScanSettings
from qubench.sim import CountsTable, run, sample


def exact_scans(n: int, mix=None):
    """Exact parity-scan probability vectors, optionally for a mixture."""
    scans = []
    for phase in parity_phases(n):
        probs = run(parity_circuit(n, phase)).probabilities()
        scans.append((phase, probs if mix is None else mix(phase)))
    return scans


def test_ghz3_state():
    sv = run(make_ghz(3))
    expected = np.zeros(8, dtype=complex)
    expected[0] = expected[7] = 1 / math.sqrt(2)
    assert np.allclose(sv.amplitudes, expected, atol=1e-12)


def test_ghz_gate_budget():
    counts = make_ghz(6).gate_counts()
    assert counts.one_qubit == 1
    assert counts.two_qubit == 5
    assert counts.total == 6


def test_ghz_rejects_single_qubit():
    with pytest.raises(ValueError):
        make_ghz(1)


def test_parity_phase_grid():
    phases = parity_phases(6)
    assert len(phases) == 7
    assert phases[0] == 0.0
    assert phases[1] == pytest.approx(math.pi / 7)
    assert phases[-1] == pytest.approx(6 * math.pi / 7)


def test_exact_fidelity_is_one_for_all_widths():
    for n in range(2, 11):
        pop = run(make_ghz(n)).probabilities()
        fid, err = ghz_fidelity_exact(pop, exact_scans(n))
        assert abs(fid - 1.0) < 1e-9
        assert err == 0.0


def test_fully_dephased_state_scores_half():
    # equal classical mixture of |00..0> and |11..1>: population survives,
    # the parity fringe vanishes, so F = (1 + 0)/2
    from qubench.circuits import Circuit, x

    n = 5
    dim = 1 << n
    pop = np.zeros(dim)
    pop[0] = pop[dim - 1] = 0.5

    prep_len = len(make_ghz(n).gates)
    scans = []
    for phase in parity_phases(n):
        tail = parity_circuit(n, phase).gates[prep_len:]
        comp0 = Circuit(n, tail)
        comp1 = Circuit(n, tuple(x(q) for q in range(n)) + tail)
        probs = 0.5 * (run(comp0).probabilities() + run(comp1).probabilities())
        scans.append((phase, probs))
    fid, _ = ghz_fidelity_exact(pop, scans)
    assert fid == pytest.approx(0.5, abs=1e-9)


def test_uniform_noise_scores_inverse_dimension():
    n = 4
    dim = 1 << n
    pop = np.full(dim, 1.0 / dim)
    scans = [(phase, np.full(dim, 1.0 / dim)) for phase in parity_phases(n)]
    fid, _ = ghz_fidelity_exact(pop, scans)
    assert fid == pytest.approx(1.0 / dim, abs=1e-12)


def test_sampled_fidelity_near_one_without_noise():
    n = 4
    pop = sample(run(make_ghz(n)), shots=4000, seed=0)
    scans = []
    for j, phase in enumerate(parity_phases(n)):
        table = sample(run(parity_circuit(n, phase)), shots=4000, seed=100 + j)
        scans.append((phase, table))
    fid, err = ghz_fidelity(pop, scans)
    assert fid == pytest.approx(1.0, abs=5 * err + 0.02)
    assert 0.0 < err < 0.02


def test_fidelity_requires_full_phase_grid():
    n = 3
    pop = sample(run(make_ghz(n)), shots=100, seed=0)
    scans = []
    for phase in parity_phases(n)[:-1]:
        scans.append((phase, sample(run(parity_circuit(n, phase)), shots=100, seed=1)))
    with pytest.raises(MissingScanSettings):
        ghz_fidelity(pop, scans)


def test_fidelity_rejects_wrong_phases():
    n = 3
    pop = sample(run(make_ghz(n)), shots=100, seed=0)
    bad = [(0.1 * (j + 1), sample(run(make_ghz(n)), shots=100, seed=j))
           for j in range(len(parity_phases(n)))]
    with pytest.raises(MissingScanSettings):
        ghz_fidelity(pop, bad)
