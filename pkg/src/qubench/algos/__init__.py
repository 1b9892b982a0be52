"""Benchmark circuit generators and their analyzers."""

from .bell import ChshSettings, chsh_circuits, chsh_exact, estimate_chsh, make_bell
from .ghz import ghz_fidelity, ghz_fidelity_exact, make_ghz, parity_circuit, parity_phases
from .qft import aqft_error, make_qft, make_qft_roundtrip
from .grover import (
    GroverSpec,
    grover_optimal_k,
    grover_scan,
    grover_success_prob,
    make_grover,
)
from .qaoa import (
    Graph,
    QaoaParams,
    make_graph,
    make_qaoa_circuit,
    mvc_cost,
    optimize_qaoa,
    qaoa_metrics,
    qaoa_metrics_exact,
)

__all__ = [
    "ChshSettings",
    "chsh_circuits",
    "chsh_exact",
    "estimate_chsh",
    "make_bell",
    "ghz_fidelity",
    "ghz_fidelity_exact",
    "make_ghz",
    "parity_circuit",
    "parity_phases",
    "aqft_error",
    "make_qft",
    "make_qft_roundtrip",
    "GroverSpec",
    "grover_optimal_k",
    "grover_scan",
    "grover_success_prob",
    "make_grover",
    "Graph",
    "QaoaParams",
    "make_graph",
    "make_qaoa_circuit",
    "mvc_cost",
    "optimize_qaoa",
    "qaoa_metrics",
    "qaoa_metrics_exact",
]
