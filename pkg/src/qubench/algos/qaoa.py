"""Depth-1 QAOA for minimum vertex cover: graphs, circuits, optimizer, metrics."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from ..circuits import Circuit, cphase, h, index_for_bitstring, rx, rz
from ..devices import DeviceModel
from ..errors import LengthMismatch, WidthExceeded
from ..execute import run_device_counts, run_exact_probs
from ..results import BenchmarkResult
from ..rng import stable_seed, substream
from ..sim import CountsTable

MAX_QAOA_QUBITS = 20
DEFAULT_PENALTY = 2.0

GRID_POINTS = 16
SIMPLEX_BUDGET = 100
SIMPLEX_TOL = 1e-4


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n_vertices-1."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < v < self.n_vertices):
                raise ValueError(f"bad edge ({u}, {v})")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def density(self) -> float:
        pairs = self.n_vertices * (self.n_vertices - 1) // 2
        return len(self.edges) / pairs if pairs else 0.0


def path_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError("path graph needs at least 2 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def ba_graph(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment starting from a complete graph on m+1 vertices.

    Each new vertex attaches m edges to distinct existing vertices drawn
    with probability proportional to current degree. Degrees update after a
    vertex finishes attaching, so its own edges do not bias its choices.
    """
    if m < 1 or m >= n:
        raise ValueError("need 1 <= m < n")
    rng = substream(seed, 0)
    edges = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v in range(m + 1, n):
        candidates = list(range(v))
        picked = []
        for _ in range(m):
            weights = np.array([deg[c] for c in candidates], dtype=np.float64)
            probs = weights / weights.sum()
            choice = int(rng.choice(len(candidates), p=probs))
            picked.append(candidates.pop(choice))
        for u in picked:
            edges.append((min(u, v), max(u, v)))
        deg[v] += m
        for u in picked:
            deg[u] += 1
    return Graph(n, tuple(sorted(edges)))


_KIND_RE = re.compile(r"^\s*([A-Za-z_]+)\s*\(\s*([^)]*)\s*\)\s*$")


def make_graph(kind: str) -> Graph:
    """Build a graph from a spec string.

    Accepted forms: PATH(n), BA(n,m,seed), COMPLETE_BIPARTITE(a,b) and its
    shorthand K(a,b).
    """
    match = _KIND_RE.match(kind)
    if not match:
        raise ValueError(f"cannot parse graph kind {kind!r}")
    name = match.group(1).upper()
    try:
        args = [int(tok.strip()) for tok in match.group(2).split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"non-integer argument in graph kind {kind!r}") from exc
    if name == "PATH" and len(args) == 1:
        return path_graph(args[0])
    if name == "BA" and len(args) == 3:
        return ba_graph(args[0], args[1], args[2])
    if name in ("COMPLETE_BIPARTITE", "K") and len(args) == 2:
        return complete_bipartite(args[0], args[1])
    raise ValueError(f"unknown graph kind or wrong arity: {kind!r}")


@dataclass(frozen=True)
class QaoaParams:
    """Variational angles plus the cover-penalty weight; depth is fixed at 1."""

    gamma: float
    beta: float
    p: int = 1
    penalty: float = DEFAULT_PENALTY

    def __post_init__(self) -> None:
        if self.p != 1:
            raise ValueError("only depth p=1 is supported")
        if not self.penalty > 1.0:
            raise ValueError("penalty must exceed 1 so uncovered edges dominate")


def mvc_cost(z: str, g: Graph, penalty: float = DEFAULT_PENALTY) -> float:
    """Cover cost: set size plus penalty per uncovered edge."""
    if len(z) != g.n_vertices:
        raise LengthMismatch(f"expected {g.n_vertices} bits, got {len(z)}")
    bits = [1 if ch == "1" else 0 for ch in z]
    uncovered = sum(1 for u, v in g.edges if not bits[u] and not bits[v])
    return float(sum(bits) + penalty * uncovered)


def cost_values(g: Graph, penalty: float = DEFAULT_PENALTY) -> np.ndarray:
    """Cover cost for every basis state, indexed little-endian by vertex."""
    n = g.n_vertices
    if n > MAX_QAOA_QUBITS:
        raise WidthExceeded(f"cost table supports at most {MAX_QAOA_QUBITS} vertices, got {n}")
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)[None, :]) & 1
    cost = bits.sum(axis=1).astype(np.float64)
    for u, v in g.edges:
        cost += penalty * (1 - bits[:, u]) * (1 - bits[:, v])
    return cost


def feasible_mask(g: Graph) -> np.ndarray:
    """Boolean mask over basis states marking valid vertex covers."""
    n = g.n_vertices
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)[None, :]) & 1
    ok = np.ones(1 << n, dtype=bool)
    for u, v in g.edges:
        ok &= (bits[:, u] | bits[:, v]).astype(bool)
    return ok


def brute_force_optimum(g: Graph, penalty: float = DEFAULT_PENALTY) -> tuple[float, np.ndarray]:
    """Exhaustive minimum cost and the indices attaining it."""
    cost = cost_values(g, penalty)
    c_opt = float(cost.min())
    optimal = np.flatnonzero(cost <= c_opt + 1e-9)
    return c_opt, optimal


def make_qaoa_circuit(g: Graph, params: QaoaParams) -> Circuit:
    """Uniform start, diagonal cost layer, transverse mixer.

    The cost layer multiplies each basis state |z> by e^{-i*gamma*C(z)} up
    to a global phase: RZ(gamma*(penalty*deg(i)-1)) per vertex plus
    CPHASE(-gamma*penalty) per edge.
    """
    n = g.n_vertices
    penalty = params.penalty
    deg = g.degrees()
    gates = [h(q) for q in range(n)]
    for q in range(n):
        gates.append(rz(q, params.gamma * (penalty * deg[q] - 1.0)))
    for u, v in g.edges:
        gates.append(cphase(u, v, -params.gamma * penalty))
    for q in range(n):
        gates.append(rx(q, 2.0 * params.beta))
    return Circuit(n, tuple(gates))


def _objective(g: Graph, dev: DeviceModel, shots: int | None, penalty: float,
               cost: np.ndarray, seed: int):
    """Shot-estimated or exact <H_C> as a function of the angles."""
    calls = [0]

    def evaluate(params: QaoaParams) -> float:
        circ = make_qaoa_circuit(g, params)
        if shots is None:
            probs = run_exact_probs(circ, dev)
            return float(probs @ cost)
        calls[0] += 1
        table = run_device_counts(circ, dev, shots,
                                  stable_seed(seed, f"eval={calls[0]}"))
        total = 0.0
        for key, hits in table.counts.items():
            total += hits * cost[index_for_bitstring(key)]
        return total / shots

    return evaluate


def optimize_qaoa(g: Graph, dev: DeviceModel, shots: int | None, seed: int,
                  penalty: float = DEFAULT_PENALTY,
                  ) -> tuple[QaoaParams, list[tuple[QaoaParams, float]]]:
    """Coarse grid over the angle box, then simplex refinement.

    The grid covers (gamma, beta) in [0, pi) x [0, pi/2) at 16x16 points.
    The best grid point seeds a Nelder-Mead loop capped at 100 further
    evaluations, stopping early once the simplex cost spread drops below
    1e-4. shots=None evaluates the exact expectation. Returns the best
    angles and the full (params, cost) evaluation trace.
    """
    cost = cost_values(g, penalty)
    evaluate = _objective(g, dev, shots, penalty, cost, seed)
    trace: list[tuple[QaoaParams, float]] = []

    def record(params: QaoaParams) -> float:
        value = evaluate(params)
        trace.append((params, value))
        return value

    d_gamma = math.pi / GRID_POINTS
    d_beta = (math.pi / 2.0) / GRID_POINTS
    best_params, best_value = None, math.inf
    for i in range(GRID_POINTS):
        for j in range(GRID_POINTS):
            params = QaoaParams(gamma=i * d_gamma, beta=j * d_beta, penalty=penalty)
            value = record(params)
            if value < best_value:
                best_params, best_value = params, value

    # Nelder-Mead on (gamma, beta), simplex seeded at grid resolution.
    points = [
        np.array([best_params.gamma, best_params.beta]),
        np.array([best_params.gamma + d_gamma, best_params.beta]),
        np.array([best_params.gamma, best_params.beta + d_beta]),
    ]
    budget = [SIMPLEX_BUDGET]

    def spend(vec: np.ndarray) -> float:
        budget[0] -= 1
        return record(QaoaParams(gamma=float(vec[0]), beta=float(vec[1]),
                                 penalty=penalty))

    values = [best_value, spend(points[1]), spend(points[2])]
    while budget[0] > 0:
        order = np.argsort(values)
        points = [points[k] for k in order]
        values = [values[k] for k in order]
        if values[-1] - values[0] < SIMPLEX_TOL:
            break
        centroid = (points[0] + points[1]) / 2.0
        reflected = centroid + (centroid - points[2])
        f_r = spend(reflected)
        if f_r < values[0] and budget[0] > 0:
            expanded = centroid + 2.0 * (centroid - points[2])
            f_e = spend(expanded)
            if f_e < f_r:
                points[2], values[2] = expanded, f_e
            else:
                points[2], values[2] = reflected, f_r
        elif f_r < values[1]:
            points[2], values[2] = reflected, f_r
        else:
            if budget[0] <= 0:
                break
            contracted = centroid + 0.5 * (points[2] - centroid)
            f_c = spend(contracted)
            if f_c < values[2]:
                points[2], values[2] = contracted, f_c
            else:
                # Shrink toward the best vertex.
                for k in (1, 2):
                    if budget[0] <= 0:
                        break
                    points[k] = points[0] + 0.5 * (points[k] - points[0])
                    values[k] = spend(points[k])

    for params, value in trace:
        if value < best_value:
            best_params, best_value = params, value
    return best_params, trace


def _hamming_to_nearest(index: int, optimal: np.ndarray) -> int:
    xor = np.bitwise_xor(optimal, index)
    best = None
    for word in xor:
        dist = int(word).bit_count()
        if best is None or dist < best:
            best = dist
    return best


def _metric_rows(weights: dict[int, float], shots: int, g: Graph, penalty: float,
                 sampled: bool, device: str, seed: int,
                 extras: dict | None) -> list[BenchmarkResult]:
    """Shared scoring path; weights map basis index to outcome fraction."""
    cost = cost_values(g, penalty)
    feasible = feasible_mask(g)
    c_opt, optimal = brute_force_optimum(g, penalty)
    optimal_set = set(int(i) for i in optimal)

    mean_cost = mean_sq_cost = 0.0
    p_feasible = p_success = 0.0
    mean_h = mean_h2 = 0.0
    for index, w in weights.items():
        c = cost[index]
        mean_cost += w * c
        mean_sq_cost += w * c * c
        if feasible[index]:
            p_feasible += w
        if index in optimal_set:
            p_success += w
        dist = _hamming_to_nearest(index, optimal)
        mean_h += w * dist
        mean_h2 += w * dist * dist

    var_cost = max(mean_sq_cost - mean_cost**2, 0.0)
    var_h = max(mean_h2 - mean_h**2, 0.0)
    ratio = c_opt / mean_cost

    if sampled:
        err_ratio = c_opt * math.sqrt(var_cost / shots) / mean_cost**2
        err_feas = math.sqrt(p_feasible * (1.0 - p_feasible) / shots)
        err_succ = math.sqrt(p_success * (1.0 - p_success) / shots)
        err_h = math.sqrt(var_h / shots)
        central4 = 0.0
        for index, w in weights.items():
            dist = _hamming_to_nearest(index, optimal)
            central4 += w * (dist - mean_h) ** 4
        err_var_h = math.sqrt(max(central4 - var_h**2, 0.0) / shots)
    else:
        err_ratio = err_feas = err_succ = err_h = err_var_h = 0.0

    def row(metric: str, value: float, err: float) -> BenchmarkResult:
        return BenchmarkResult(
            algorithm="qaoa", device=device, n=g.n_vertices, metric=metric,
            value=float(value), err=float(err), shots=shots, seed=seed,
            extras=dict(extras or {}))

    return [
        row("approx_ratio", ratio, err_ratio),
        row("feasibility", p_feasible, err_feas),
        row("success_prob", p_success, err_succ),
        row("mean_hamming", mean_h, err_h),
        row("hamming_var", var_h, err_var_h),
    ]


def qaoa_metrics(table: CountsTable, g: Graph, penalty: float = DEFAULT_PENALTY,
                 *, device: str = "", seed: int = 0,
                 extras: dict | None = None) -> list[BenchmarkResult]:
    """Score sampled counts against the brute-force optimum.

    Emits approx_ratio (min cost over mean sampled cost), feasibility
    (fraction of samples that are covers), success_prob (fraction hitting
    an optimal cover), mean_hamming and hamming_var (distance to the
    nearest optimal bitstring), each with a shot-noise error bar.
    """
    weights = {index_for_bitstring(key): hits / table.shots
               for key, hits in table.counts.items()}
    return _metric_rows(weights, table.shots, g, penalty, True,
                        device, seed, extras)


def qaoa_metrics_exact(probs: np.ndarray, g: Graph,
                       penalty: float = DEFAULT_PENALTY, *, device: str = "",
                       seed: int = 0, shots: int = 1,
                       extras: dict | None = None) -> list[BenchmarkResult]:
    """Same metrics from an exact probability vector; error bars are zero."""
    if probs.size != (1 << g.n_vertices):
        raise LengthMismatch(
            f"expected {1 << g.n_vertices} probabilities, got {probs.size}")
    weights = {int(i): float(p) for i, p in enumerate(probs) if p > 0.0}
    return _metric_rows(weights, shots, g, penalty, False, device, seed, extras)
