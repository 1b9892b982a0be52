"""Gate-level state-vector simulator with a cross-device benchmark harness."""

from . import algos, kernels
from .circuits import (
    Circuit,
    GateCounts,
    GateInstance,
    GateKind,
    bitstring_for_index,
    circuit_from_text,
    circuit_to_text,
    cnot,
    cphase,
    cz,
    gate_matrix_1q,
    h,
    index_for_bitstring,
    rx,
    ry,
    rz,
    swap,
    x,
    y,
    z,
)
from .devices import (
    DeviceModel,
    device_preset,
    grid_coupling,
    load_device,
    noisy_run,
    preset_names,
    save_device,
)
from .errors import (
    ConfigError,
    DisconnectedGraph,
    EmptyCounts,
    LengthMismatch,
    MissingScanSettings,
    NoMatchingRows,
    QubenchError,
    UnknownPreset,
    UnroutedCircuit,
    WidthExceeded,
)
from .execute import (
    PreparedCircuit,
    permute_probs,
    prepare,
    remap_counts,
    run_device_counts,
    run_exact_probs,
)
from .results import BenchmarkResult, ResultsArchive
from .rng import stable_seed, substream
from .routing import (
    RoutedCircuit,
    RouteReportRow,
    RoutingOverhead,
    decompose_native,
    report_to_csv,
    route,
    routing_report,
)
from .sim import (
    CountsTable,
    StateVector,
    counts_from_indices,
    expectation_diagonal,
    expectation_values,
    probability,
    run,
    sample,
)

__version__ = "0.1.0"

__all__ = [
    "algos",
    "kernels",
    "Circuit",
    "GateCounts",
    "GateInstance",
    "GateKind",
    "bitstring_for_index",
    "circuit_from_text",
    "circuit_to_text",
    "cnot",
    "cphase",
    "cz",
    "gate_matrix_1q",
    "h",
    "index_for_bitstring",
    "rx",
    "ry",
    "rz",
    "swap",
    "x",
    "y",
    "z",
    "DeviceModel",
    "device_preset",
    "grid_coupling",
    "load_device",
    "noisy_run",
    "preset_names",
    "save_device",
    "ConfigError",
    "DisconnectedGraph",
    "EmptyCounts",
    "LengthMismatch",
    "MissingScanSettings",
    "NoMatchingRows",
    "QubenchError",
    "UnknownPreset",
    "UnroutedCircuit",
    "WidthExceeded",
    "PreparedCircuit",
    "permute_probs",
    "prepare",
    "remap_counts",
    "run_device_counts",
    "run_exact_probs",
    "BenchmarkResult",
    "ResultsArchive",
    "stable_seed",
    "substream",
    "RoutedCircuit",
    "RouteReportRow",
    "RoutingOverhead",
    "decompose_native",
    "report_to_csv",
    "route",
    "routing_report",
    "CountsTable",
    "StateVector",
    "counts_from_indices",
    "expectation_diagonal",
    "expectation_values",
    "probability",
    "run",
    "sample",
    "__version__",
]
