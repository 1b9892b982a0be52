"""Shared fixtures.

The compiled kernels JIT on first use.  The session warmup below runs a
small circuit through every hot path once so individual tests (and the
timed acceptance checks) never pay compilation cost.
"""

import pytest

from qubench.algos import make_bell
from qubench.devices import device_preset
from qubench.execute import run_device_counts
from qubench.sim import run, sample


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    circ = make_bell()
    run(circ)
    sample(run(circ), shots=10, seed=0)
    run_device_counts(circ, device_preset("SC_GRID20"), shots=10, seed=0)
    yield
