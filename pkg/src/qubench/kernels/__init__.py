"""Hot state-vector update kernels with a selectable backend.

Two implementations are provided: numba-jitted loops (default when numba is
importable) and a pure-numpy fallback. Selection happens at import time from
the QUBENCH_KERNELS environment variable ("numba", "numpy", or "auto") and
can be changed at runtime with use().
"""

from __future__ import annotations

import os

from . import _numpy

_ENV_VAR = "QUBENCH_KERNELS"
_active = _numpy
_active_name = "numpy"


def use(name: str) -> None:
    """Select the kernel backend: "numba", "numpy", or "auto"."""
    global _active, _active_name
    name = name.strip().lower() or "auto"
    if name == "numpy":
        _active, _active_name = _numpy, "numpy"
        return
    if name in ("numba", "auto"):
        try:
            from . import _numba
        except ImportError:
            if name == "numba":
                raise ImportError(
                    "numba backend requested via QUBENCH_KERNELS but numba is not installed"
                )
            _active, _active_name = _numpy, "numpy"
            return
        _active, _active_name = _numba, "numba"
        return
    raise ValueError(f"unknown kernel backend {name!r}")


def backend_name() -> str:
    return _active_name


def apply_1q(amps, m00, m01, m10, m11, q):
    _active.apply_1q(amps, m00, m01, m10, m11, q)


def apply_cnot(amps, control, target):
    _active.apply_cnot(amps, control, target)


def apply_cphase(amps, a, b, phase):
    _active.apply_cphase(amps, a, b, phase)


def apply_swap(amps, a, b):
    _active.apply_swap(amps, a, b)


use(os.environ.get(_ENV_VAR, "auto"))
