"""Greedy SWAP routing onto constrained couplings and native-gate rewriting."""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass

from .circuits import Circuit, GateInstance, GateKind, cnot, cz, h, rz, swap
from .devices import DeviceModel
from .errors import DisconnectedGraph, WidthExceeded


@dataclass(frozen=True)
class RoutingOverhead:
    added_swaps: int
    depth_before: int
    depth_after: int


@dataclass(frozen=True)
class RoutedCircuit:
    """Routing result on physical qubits plus the final logical placement.

    final_permutation[logical] is the physical wire holding that logical
    qubit after the circuit; measured bitstrings are mapped back with it.
    """

    circuit: Circuit
    final_permutation: tuple[int, ...]
    overhead: RoutingOverhead


def _adjacency(dev: DeviceModel, n_active: int) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n_active)]
    for a, b in dev.coupling:
        if a < n_active and b < n_active:
            adj[a].append(b)
            adj[b].append(a)
    for neighbors in adj:
        neighbors.sort()
    return adj


def _bfs_path(adj: list[list[int]], start: int, goal: int) -> list[int]:
    """Shortest path with deterministic lowest-index tie-breaking."""
    if start == goal:
        return [start]
    parent = {start: start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in adj[node]:
            if nxt not in parent:
                parent[nxt] = node
                if nxt == goal:
                    path = [goal]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                queue.append(nxt)
    raise DisconnectedGraph(f"no coupling path between physical qubits {start} and {goal}")


def route(c: Circuit, dev: DeviceModel) -> RoutedCircuit:
    """Map a logical circuit onto the device coupling graph.

    Placement starts as the identity onto physical qubits [0, n). For each
    two-qubit gate on non-adjacent wires, SWAPs move the gate's first
    operand along a BFS shortest path until the pair is adjacent, updating
    the placement as they go. No post-routing optimization is attempted.
    """
    if c.n_qubits > dev.n_qubits:
        raise WidthExceeded(
            f"circuit has {c.n_qubits} qubits but device {dev.name} has {dev.n_qubits}"
        )
    depth_before = c.depth()
    if dev.all_to_all:
        return RoutedCircuit(
            circuit=c,
            final_permutation=tuple(range(c.n_qubits)),
            overhead=RoutingOverhead(0, depth_before, depth_before),
        )

    n = c.n_qubits
    adj = _adjacency(dev, n)
    pos = list(range(n))  # logical -> physical
    holder = list(range(n))  # physical -> logical
    out: list[GateInstance] = []
    added = 0

    def do_swap(pa: int, pb: int) -> None:
        out.append(swap(pa, pb))
        la, lb = holder[pa], holder[pb]
        holder[pa], holder[pb] = lb, la
        pos[la], pos[lb] = pb, pa

    for g in c.gates:
        if g.kind.arity == 1:
            out.append(GateInstance(g.kind, (pos[g.qubits[0]],), g.param))
            continue
        pa, pb = pos[g.qubits[0]], pos[g.qubits[1]]
        path = _bfs_path(adj, pa, pb)
        for step in path[1:-1]:
            do_swap(path[0], step)
            path[0] = step
        added += len(path) - 2
        out.append(GateInstance(g.kind, (path[0], path[-1]), g.param))

    routed = Circuit(n, tuple(out))
    return RoutedCircuit(
        circuit=routed,
        final_permutation=tuple(pos),
        overhead=RoutingOverhead(added, depth_before, routed.depth()),
    )


def decompose_native(c: Circuit, native_two_qubit: str) -> Circuit:
    """Rewrite two-qubit gates into the device's native set.

    CZ-native devices keep CPHASE (it is diagonal); CNOT-native devices
    expand CPHASE into two CNOTs and three RZ rotations, exact up to global
    phase. SWAP always becomes three CNOTs first. No cancellation pass runs
    afterwards.
    """
    if native_two_qubit not in ("CNOT", "CZ"):
        raise ValueError(f"native_two_qubit must be CNOT or CZ, got {native_two_qubit!r}")
    out: list[GateInstance] = []

    def emit_cnot(control: int, target: int) -> None:
        if native_two_qubit == "CNOT":
            out.append(cnot(control, target))
        else:
            out.append(h(target))
            out.append(cz(control, target))
            out.append(h(target))

    for g in c.gates:
        if g.kind.arity == 1:
            out.append(g)
        elif g.kind is GateKind.CNOT:
            emit_cnot(*g.qubits)
        elif g.kind is GateKind.CZ:
            if native_two_qubit == "CZ":
                out.append(g)
            else:
                a, b = g.qubits
                out.append(h(b))
                out.append(cnot(a, b))
                out.append(h(b))
        elif g.kind is GateKind.SWAP:
            a, b = g.qubits
            emit_cnot(a, b)
            emit_cnot(b, a)
            emit_cnot(a, b)
        elif g.kind is GateKind.CPHASE:
            if native_two_qubit == "CZ":
                out.append(g)
            else:
                a, b = g.qubits
                half = 0.5 * g.param
                out.append(rz(a, half))
                out.append(rz(b, half))
                out.append(cnot(a, b))
                out.append(rz(b, -half))
                out.append(cnot(a, b))
        else:  # pragma: no cover
            raise ValueError(f"unhandled two-qubit kind {g.kind}")
    return Circuit(c.n_qubits, tuple(out))


@dataclass(frozen=True)
class RouteReportRow:
    device: str
    n: int
    depth_before: int
    depth_after: int
    two_qubit_count: int
    added_swaps: int


def routing_report(c: Circuit, devices: list[DeviceModel]) -> list[RouteReportRow]:
    """Route and natively decompose the circuit for each device."""
    rows = []
    for dev in devices:
        routed = route(c, dev)
        final = decompose_native(routed.circuit, dev.native_two_qubit)
        rows.append(
            RouteReportRow(
                device=dev.name,
                n=c.n_qubits,
                depth_before=routed.overhead.depth_before,
                depth_after=final.depth(),
                two_qubit_count=final.gate_counts().two_qubit,
                added_swaps=routed.overhead.added_swaps,
            )
        )
    return rows


def report_to_csv(rows: list[RouteReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["device", "n", "depth_before", "depth_after", "two_qubit_count", "added_swaps"])
    for r in rows:
        writer.writerow([r.device, r.n, r.depth_before, r.depth_after, r.two_qubit_count, r.added_swaps])
    return buf.getvalue()
