"""Timing comparison between the kernel backends on a fixed gate workload."""

from __future__ import annotations

import time

from .. import kernels
from ..circuits import Circuit, cnot, cphase, h
from ..sim import run

DEFAULT_WIDTHS = (8, 12, 16)
DEFAULT_REPS = 3


def _workload(n: int) -> Circuit:
    gates = []
    for _ in range(3):
        gates += [h(q) for q in range(n)]
        gates += [cnot(q, q + 1) for q in range(n - 1)]
        gates += [cphase(q, q + 1, 0.37) for q in range(n - 1)]
    return Circuit(n, tuple(gates))


def benchmark_kernels(widths: tuple[int, ...] = DEFAULT_WIDTHS,
                      reps: int = DEFAULT_REPS) -> list[dict]:
    """Best-of-reps wall time per backend and width.

    The numba backend is skipped when numba is not importable. The active
    backend is restored afterwards, so timing never leaks into later runs.
    """
    previous = kernels.backend_name()
    rows: list[dict] = []
    try:
        for backend in ("numpy", "numba"):
            try:
                kernels.use(backend)
            except ImportError:
                continue
            for n in widths:
                circ = _workload(n)
                run(circ)  # warm caches and the JIT before timing
                best = min(_time_once(circ) for _ in range(reps))
                rows.append({
                    "backend": backend,
                    "n": n,
                    "gates": len(circ.gates),
                    "seconds": best,
                    "gates_per_second": len(circ.gates) / best,
                })
    finally:
        kernels.use(previous)
    return rows


def _time_once(circ: Circuit) -> float:
    start = time.perf_counter()
    run(circ)
    return time.perf_counter() - start
