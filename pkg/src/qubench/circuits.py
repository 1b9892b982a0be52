"""Gate-level circuit representation and structural analysis.

Qubit indices are little-endian throughout the package: qubit 0 is the least
significant bit of a basis-state index, and bitstrings are rendered with
qubit 0 as the first character.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple

import numpy as np

from .errors import WidthExceeded

MAX_UNITARY_QUBITS = 10

_SQRT1_2 = 1.0 / math.sqrt(2.0)


class GateKind(Enum):
    H = "H"
    X = "X"
    Y = "Y"
    Z = "Z"
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    CPHASE = "CPHASE"
    CNOT = "CNOT"
    CZ = "CZ"
    SWAP = "SWAP"

    @property
    def arity(self) -> int:
        return 2 if self in _TWO_QUBIT else 1

    @property
    def parametric(self) -> bool:
        return self in _PARAMETRIC


_TWO_QUBIT = frozenset({GateKind.CPHASE, GateKind.CNOT, GateKind.CZ, GateKind.SWAP})
_PARAMETRIC = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.CPHASE})


@dataclass(frozen=True)
class GateInstance:
    """One gate application: a kind, an ordered qubit tuple, an optional angle."""

    kind: GateKind
    qubits: tuple[int, ...]
    param: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} takes {self.kind.arity} qubit(s), got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind.value} qubits must be distinct: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if self.kind.parametric:
            if self.param is None:
                raise ValueError(f"{self.kind.value} requires an angle")
            if not math.isfinite(self.param):
                raise ValueError(f"{self.kind.value} angle must be finite")
            object.__setattr__(self, "param", float(self.param))
        elif self.param is not None:
            raise ValueError(f"{self.kind.value} takes no angle")

    def adjoint(self) -> "GateInstance":
        if self.kind.parametric:
            return GateInstance(self.kind, self.qubits, -self.param)
        return self


def h(q: int) -> GateInstance:
    return GateInstance(GateKind.H, (q,))


def x(q: int) -> GateInstance:
    return GateInstance(GateKind.X, (q,))


def y(q: int) -> GateInstance:
    return GateInstance(GateKind.Y, (q,))


def z(q: int) -> GateInstance:
    return GateInstance(GateKind.Z, (q,))


def rx(q: int, theta: float) -> GateInstance:
    return GateInstance(GateKind.RX, (q,), theta)


def ry(q: int, theta: float) -> GateInstance:
    return GateInstance(GateKind.RY, (q,), theta)


def rz(q: int, theta: float) -> GateInstance:
    return GateInstance(GateKind.RZ, (q,), theta)


def cphase(a: int, b: int, theta: float) -> GateInstance:
    return GateInstance(GateKind.CPHASE, (a, b), theta)


def cnot(control: int, target: int) -> GateInstance:
    return GateInstance(GateKind.CNOT, (control, target))


def cz(a: int, b: int) -> GateInstance:
    return GateInstance(GateKind.CZ, (a, b))


def swap(a: int, b: int) -> GateInstance:
    return GateInstance(GateKind.SWAP, (a, b))


class GateCounts(NamedTuple):
    one_qubit: int
    two_qubit: int
    total: int


@dataclass(frozen=True)
class Circuit:
    """Immutable ordered gate list on a fixed-width qubit register."""

    n_qubits: int
    gates: tuple[GateInstance, ...] = ()

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ValueError(f"gate {g} out of range for {self.n_qubits} qubits")

    def depth(self) -> int:
        """Number of layers under greedy as-soon-as-possible scheduling."""
        free = [0] * self.n_qubits
        depth = 0
        for g in self.gates:
            layer = max(free[q] for q in g.qubits)
            for q in g.qubits:
                free[q] = layer + 1
            depth = max(depth, layer + 1)
        return depth

    def gate_counts(self) -> GateCounts:
        one = sum(1 for g in self.gates if g.kind.arity == 1)
        two = len(self.gates) - one
        return GateCounts(one, two, len(self.gates))

    def inverse(self) -> "Circuit":
        """Adjoint circuit: reversed gate order, negated rotation angles."""
        return Circuit(self.n_qubits, tuple(g.adjoint() for g in reversed(self.gates)))

    def compose(self, other: "Circuit") -> "Circuit":
        if self.n_qubits != other.n_qubits:
            raise ValueError("cannot compose circuits of different widths")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def to_unitary(self) -> np.ndarray:
        """Dense unitary of the whole circuit. Guarded to small registers."""
        if self.n_qubits > MAX_UNITARY_QUBITS:
            raise WidthExceeded(
                f"to_unitary supports at most {MAX_UNITARY_QUBITS} qubits, got {self.n_qubits}"
            )
        from .kernels import _numpy as ops

        dim = 1 << self.n_qubits
        mat = np.eye(dim, dtype=np.complex128)
        for g in self.gates:
            _apply_to_array(mat, g, ops)
        return mat


def _apply_to_array(arr: np.ndarray, gate: GateInstance, ops) -> None:
    """Apply one gate in place along axis 0 of a state vector or matrix."""
    k = gate.kind
    if k.arity == 1:
        m = gate_matrix_1q(k, gate.param)
        ops.apply_1q(arr, m[0, 0], m[0, 1], m[1, 0], m[1, 1], gate.qubits[0])
    elif k is GateKind.CNOT:
        ops.apply_cnot(arr, gate.qubits[0], gate.qubits[1])
    elif k is GateKind.CZ:
        ops.apply_cphase(arr, gate.qubits[0], gate.qubits[1], complex(-1.0))
    elif k is GateKind.CPHASE:
        ops.apply_cphase(arr, gate.qubits[0], gate.qubits[1], np.exp(1j * gate.param))
    elif k is GateKind.SWAP:
        ops.apply_swap(arr, gate.qubits[0], gate.qubits[1])
    else:  # pragma: no cover
        raise ValueError(f"unhandled gate kind {k}")


def gate_matrix_1q(kind: GateKind, theta: float | None = None) -> np.ndarray:
    """2x2 matrix of a single-qubit gate."""
    if kind is GateKind.H:
        return np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=np.complex128)
    if kind is GateKind.X:
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)
    if kind is GateKind.Y:
        return np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    if kind is GateKind.Z:
        return np.array([[1, 0], [0, -1]], dtype=np.complex128)
    half = 0.5 * theta
    c, s = math.cos(half), math.sin(half)
    if kind is GateKind.RX:
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if kind is GateKind.RY:
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if kind is GateKind.RZ:
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]], dtype=np.complex128)
    raise ValueError(f"{kind.value} is not a single-qubit gate")


def index_for_bitstring(bits: str) -> int:
    """Basis index of a little-endian bitstring (char i is qubit i)."""
    idx = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            idx |= 1 << i
        elif ch != "0":
            raise ValueError(f"bitstring may contain only 0/1, got {bits!r}")
    return idx


def bitstring_for_index(index: int, n_qubits: int) -> str:
    """Little-endian bitstring of a basis index (char i is qubit i)."""
    return "".join("1" if (index >> i) & 1 else "0" for i in range(n_qubits))


def circuit_to_text(c: Circuit) -> str:
    """Serialize a circuit to the line-oriented text format."""
    lines = [f"qubits={c.n_qubits}"]
    for g in c.gates:
        qs = ",".join(str(q) for q in g.qubits)
        if g.kind.parametric:
            lines.append(f"{g.kind.value} {qs} angle={g.param!r}")
        else:
            lines.append(f"{g.kind.value} {qs}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    """Parse the text format: a qubits=<n> header, then one gate per line."""
    n_qubits = None
    gates: list[GateInstance] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n_qubits is None:
            if not line.startswith("qubits="):
                raise ValueError(f"line {lineno}: expected qubits=<n> header")
            n_qubits = int(line[len("qubits="):])
            continue
        parts = line.split()
        try:
            kind = GateKind(parts[0].upper())
        except ValueError:
            raise ValueError(f"line {lineno}: unknown gate {parts[0]!r}") from None
        if len(parts) < 2:
            raise ValueError(f"line {lineno}: missing qubit operands")
        qubits = tuple(int(tok) for tok in parts[1].split(","))
        param = None
        if len(parts) > 2:
            if not parts[2].startswith("angle="):
                raise ValueError(f"line {lineno}: expected angle=<radians>")
            param = float(parts[2][len("angle="):])
        gates.append(GateInstance(kind, qubits, param))
    if n_qubits is None:
        raise ValueError("empty circuit text: missing qubits=<n> header")
    return Circuit(n_qubits, tuple(gates))
