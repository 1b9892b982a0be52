import math

import numpy as np
import pytest
from scipy import stats

from qubench.algos import make_bell, make_ghz
from qubench.circuits import Circuit, h, rx, x
from qubench.errors import WidthExceeded
from qubench.sim import (
    MAX_RUN_QUBITS,
    CountsTable,
    counts_from_indices,
    expectation_values,
    probability,
    run,
    sample,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)


def test_run_bell_amplitudes():
    sv = run(make_bell())
    assert np.allclose(sv.amplitudes, [SQRT_HALF, 0.0, 0.0, SQRT_HALF], atol=1e-12)


def test_run_starts_from_all_zeros():
    sv = run(Circuit(3, ()))
    expected = np.zeros(8, dtype=complex)
    expected[0] = 1.0
    assert np.array_equal(sv.amplitudes, expected)


def test_probability_little_endian():
    sv = run(Circuit(2, (x(0),)))
    assert probability(sv, "10") == pytest.approx(1.0)
    assert probability(sv, "01") == pytest.approx(0.0)


def test_probabilities_sum_to_one():
    sv = run(Circuit(4, tuple(rx(q, 0.3 * (q + 1)) for q in range(4)) + (h(2),)))
    assert np.sum(sv.probabilities()) == pytest.approx(1.0, abs=1e-12)


def test_expectation_values_diagonal_observable():
    sv = run(make_bell())
    values = np.array([1.0, -1.0, -1.0, 1.0])
    # Bell state has perfect ZZ correlation
    assert expectation_values(sv, values) == pytest.approx(1.0)


def test_sample_deterministic_per_seed():
    sv = run(make_ghz(3))
    a = sample(sv, shots=500, seed=42)
    b = sample(sv, shots=500, seed=42)
    c = sample(sv, shots=500, seed=43)
    assert a.counts == b.counts
    assert a.counts != c.counts


def test_sample_counts_sum_to_shots():
    sv = run(make_ghz(4))
    table = sample(sv, shots=1000, seed=7)
    assert sum(table.counts.values()) == 1000
    assert table.shots == 1000
    assert set(table.counts) <= {"0000", "1111"}


def test_sample_matches_distribution_chi_square():
    sv = run(make_bell())
    table = sample(sv, shots=10_000, seed=11)
    observed = [table.counts.get("00", 0), table.counts.get("11", 0)]
    assert sum(observed) == 10_000
    _, p_value = stats.chisquare(observed, [5000, 5000])
    assert p_value > 0.01


def test_counts_from_indices_builds_bitstrings():
    table = counts_from_indices(np.array([0, 3, 3, 1]), n_qubits=2, shots=4)
    assert table.counts == {"00": 1, "11": 2, "10": 1}
    assert table.shots == 4


def test_counts_table_frequency_and_json():
    table = CountsTable(counts={"00": 3, "11": 1}, shots=4)
    assert table.frequency("00") == pytest.approx(0.75)
    assert table.frequency("01") == 0.0
    assert CountsTable.from_json(table.to_json()) == table
    assert table.n_qubits == 2


def test_run_width_guard():
    wide = Circuit(MAX_RUN_QUBITS + 1, (h(0),))
    with pytest.raises(WidthExceeded):
        run(wide)


def test_sample_requires_positive_shots():
    sv = run(make_bell())
    with pytest.raises(ValueError):
        sample(sv, shots=0, seed=0)
