"""Exception types shared across the package."""


class QubenchError(Exception):
    """Base class for all package-specific errors."""


class WidthExceeded(QubenchError):
    """Circuit is wider than the operation's qubit-count guard allows."""


class LengthMismatch(QubenchError):
    """A bitstring does not match the expected number of qubits."""


class UnknownPreset(QubenchError):
    """No device preset is registered under the requested name."""


class UnroutedCircuit(QubenchError):
    """A two-qubit gate acts on a pair outside the device coupling map."""


class DisconnectedGraph(QubenchError):
    """Routing found no coupling-graph path between two physical qubits."""


class EmptyCounts(QubenchError):
    """A counts table holds no samples."""


class MissingScanSettings(QubenchError):
    """A parity-scan set does not cover the required phase grid."""


class NoMatchingRows(QubenchError):
    """An archive query selected no result rows."""


class ConfigError(QubenchError):
    """A run configuration file is malformed or inconsistent."""
