"""Config-driven experiment runner, table renderer, and plot-data emitter."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import statistics
from dataclasses import dataclass, replace
from pathlib import Path

from . import __version__
from .algos import (
    ChshSettings,
    chsh_circuits,
    chsh_exact,
    estimate_chsh,
    ghz_fidelity,
    ghz_fidelity_exact,
    grover_scan,
    make_ghz,
    make_graph,
    make_qaoa_circuit,
    make_qft_roundtrip,
    optimize_qaoa,
    parity_circuit,
    parity_phases,
    qaoa_metrics,
    qaoa_metrics_exact,
)
from .circuits import index_for_bitstring
from .devices import DeviceModel, device_preset, load_device, noisy_run, preset_names
from .errors import ConfigError, NoMatchingRows, QubenchError
from .execute import permute_probs, prepare, remap_counts, run_device_counts
from .results import BenchmarkResult, ResultsArchive
from .rng import stable_seed
from .sim import run

BENCHMARK_IDS = ("bell", "ghz", "qft", "grover", "qaoa")
TABLE_IDS = ("chsh", "ghz", "qft", "grover", "qaoa")
FIGURE_IDS = (
    "chsh_bars",
    "ghz_vs_n",
    "qft_fid_vs_n",
    "qft_depth_bars",
    "grover_vs_k",
    "grover_peak_vs_n",
    "qaoa_ar_bars",
    "qaoa_feas_vs_density",
    "qaoa_hamming_vs_ar",
)

DEFAULT_SHOTS = 100
DEFAULT_REPS = 10


@dataclass(frozen=True)
class BenchmarkTask:
    """One benchmark request from a run config."""

    id: str
    n: int = 0
    threshold: float = 0.0
    marked: str = ""
    graph: str = ""
    penalty: float = 2.0

    @property
    def label(self) -> str:
        if self.id == "bell":
            return "bell"
        if self.id == "ghz":
            return f"ghz(n={self.n})"
        if self.id == "qft":
            return f"qft(n={self.n},threshold={self.threshold})"
        if self.id == "grover":
            return f"grover(n={self.n},marked={self.marked})"
        return f"qaoa(graph={self.graph},penalty={self.penalty})"


@dataclass(frozen=True)
class RunConfig:
    """Full experiment matrix: benchmarks x devices, plus sampling settings."""

    benchmarks: tuple[BenchmarkTask, ...]
    devices: tuple[str, ...]
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    output_dir: str = "results"
    reps: int = DEFAULT_REPS

    def to_dict(self) -> dict:
        return {
            "benchmarks": [task.__dict__ for task in self.benchmarks],
            "devices": list(self.devices),
            "shots": self.shots,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "reps": self.reps,
        }


def _parse_task(entry) -> BenchmarkTask:
    if isinstance(entry, str):
        entry = {"id": entry}
    if not isinstance(entry, dict) or "id" not in entry:
        raise ConfigError(f"benchmark entry needs an 'id': {entry!r}")
    bench_id = str(entry["id"])
    if bench_id not in BENCHMARK_IDS:
        raise ConfigError(f"unknown benchmark id {bench_id!r}")
    known = {"id", "n", "threshold", "marked", "graph", "penalty"}
    stray = set(entry) - known
    if stray:
        raise ConfigError(f"unknown benchmark fields {sorted(stray)} in {bench_id!r}")
    try:
        task = BenchmarkTask(
            id=bench_id,
            n=int(entry.get("n", 2 if bench_id == "bell" else 0)),
            threshold=float(entry.get("threshold", 0.0)),
            marked=str(entry.get("marked", "")),
            graph=str(entry.get("graph", "")),
            penalty=float(entry.get("penalty", 2.0)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad benchmark entry {entry!r}: {exc}") from exc
    if bench_id in ("ghz", "qft", "grover") and task.n < 1:
        raise ConfigError(f"{bench_id} needs a positive 'n'")
    if bench_id == "grover":
        if len(task.marked) != task.n or set(task.marked) - {"0", "1"}:
            raise ConfigError(f"grover needs 'marked' as a length-{task.n} bitstring")
    if bench_id == "qaoa":
        if not task.graph:
            raise ConfigError("qaoa needs a 'graph' kind string")
        try:
            make_graph(task.graph)
        except ValueError as exc:
            raise ConfigError(f"bad graph kind {task.graph!r}: {exc}") from exc
    if task.threshold < 0:
        raise ConfigError("threshold must be non-negative")
    return task


def parse_config(payload: dict) -> RunConfig:
    if not isinstance(payload, dict):
        raise ConfigError("config must be a JSON object")
    known = {"benchmarks", "devices", "shots", "seed", "output_dir", "reps"}
    stray = set(payload) - known
    if stray:
        raise ConfigError(f"unknown config fields {sorted(stray)}")
    benchmarks = tuple(_parse_task(e) for e in payload.get("benchmarks", []))
    if not benchmarks:
        raise ConfigError("config lists no benchmarks")
    devices = tuple(str(d) for d in payload.get("devices", []))
    if not devices:
        raise ConfigError("config lists no devices")
    try:
        shots = int(payload.get("shots", DEFAULT_SHOTS))
        seed = int(payload.get("seed", 0))
        reps = int(payload.get("reps", DEFAULT_REPS))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad numeric config field: {exc}") from exc
    if shots < 1:
        raise ConfigError("shots must be positive")
    if reps < 1:
        raise ConfigError("reps must be positive")
    return RunConfig(
        benchmarks=benchmarks,
        devices=devices,
        shots=shots,
        seed=seed,
        output_dir=str(payload.get("output_dir", "results")),
        reps=reps,
    )


def load_config(path: str | Path) -> RunConfig:
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(payload)


def config_hash(cfg: RunConfig) -> str:
    """Hash of the experiment-defining fields; output_dir is excluded."""
    payload = cfg.to_dict()
    payload.pop("output_dir")
    canon = json.dumps(payload, sort_keys=True)
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def resolve_device(name: str) -> DeviceModel:
    if name in preset_names():
        return device_preset(name)
    path = Path(name)
    if path.exists():
        try:
            return load_device(path)
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ConfigError(f"bad device file {name}: {exc}") from exc
    raise ConfigError(f"unknown device {name!r}: not a preset or a readable file")


def _is_zero_noise(dev: DeviceModel) -> bool:
    return dev.p1 == 0.0 and dev.p2 == 0.0 and dev.readout_flip == 0.0


def _median_rows(per_rep: list[list[BenchmarkResult]],
                 seed: int) -> list[BenchmarkResult]:
    """Aggregate repeated rows: median value, inter-rep spread as err."""
    agg = []
    for slot in range(len(per_rep[0])):
        group = [rows[slot] for rows in per_rep]
        values = [row.value for row in group]
        spread = statistics.stdev(values) if len(values) > 1 else 0.0
        base = group[0]
        extras = {k: v for k, v in base.extras.items() if k != "rep"}
        extras["agg"] = "median"
        agg.append(replace(base, value=statistics.median(values), err=spread,
                           seed=seed, extras=extras))
    return agg


def _with_rep(rows: list[BenchmarkResult], rep: int) -> list[BenchmarkResult]:
    return [replace(row, extras={**row.extras, "rep": rep}) for row in rows]


def _run_bell(task: BenchmarkTask, dev: DeviceModel, cfg: RunConfig,
              label: str) -> list[BenchmarkResult]:
    settings = ChshSettings()
    circuits = chsh_circuits(settings)
    s_ideal = chsh_exact(settings)[0]
    reps = 1 if _is_zero_noise(dev) else cfg.reps
    per_rep = []
    for r in range(reps):
        rep_seed = stable_seed(cfg.seed, label, f"rep={r}")
        tables = [
            run_device_counts(c, dev, cfg.shots, stable_seed(rep_seed, f"circ={j}"))
            for j, c in enumerate(circuits)
        ]
        value, err = estimate_chsh(tables)
        row = BenchmarkResult(
            algorithm="bell", device=dev.name, n=2, metric="S",
            value=value, err=err, shots=cfg.shots, seed=rep_seed,
            extras={"S_ideal": s_ideal})
        per_rep.append([row])
    if reps == 1:
        return per_rep[0]
    rows = [row for r, group in enumerate(per_rep) for row in _with_rep(group, r)]
    return rows + _median_rows(per_rep, cfg.seed)


def _run_ghz(task: BenchmarkTask, dev: DeviceModel, cfg: RunConfig,
             label: str) -> list[BenchmarkResult]:
    n = task.n
    pop_circuit = make_ghz(n)
    phases = parity_phases(n)
    scan_circuits = [parity_circuit(n, phi) for phi in phases]
    if _is_zero_noise(dev):
        pop_prep = prepare(pop_circuit, dev)
        pop_probs = permute_probs(run(pop_prep.circuit).probabilities(),
                                  pop_prep.final_permutation)
        scans = []
        for phi, circ in zip(phases, scan_circuits):
            prep = prepare(circ, dev)
            probs = permute_probs(run(prep.circuit).probabilities(),
                                  prep.final_permutation)
            scans.append((phi, probs))
        value, err = ghz_fidelity_exact(pop_probs, scans)
        return [BenchmarkResult(
            algorithm="ghz", device=dev.name, n=n, metric="fidelity",
            value=value, err=err, shots=cfg.shots, seed=cfg.seed,
            extras={"F_ideal": 1.0})]
    per_rep = []
    for r in range(cfg.reps):
        rep_seed = stable_seed(cfg.seed, label, f"rep={r}")
        pop_counts = run_device_counts(
            pop_circuit, dev, cfg.shots, stable_seed(rep_seed, "circ=pop"))
        scans = []
        for j, (phi, circ) in enumerate(zip(phases, scan_circuits)):
            table = run_device_counts(
                circ, dev, cfg.shots, stable_seed(rep_seed, f"circ=parity{j}"))
            scans.append((phi, table))
        value, err = ghz_fidelity(pop_counts, scans)
        row = BenchmarkResult(
            algorithm="ghz", device=dev.name, n=n, metric="fidelity",
            value=value, err=err, shots=cfg.shots, seed=rep_seed,
            extras={"F_ideal": 1.0})
        per_rep.append([row])
    rows = [row for r, group in enumerate(per_rep) for row in _with_rep(group, r)]
    return rows + _median_rows(per_rep, cfg.seed)


def _qft_input(n: int) -> str:
    return "".join("01"[i % 2] for i in range(n))


def _run_qft(task: BenchmarkTask, dev: DeviceModel, cfg: RunConfig,
             label: str) -> list[BenchmarkResult]:
    n = task.n
    bits = _qft_input(n)
    circuit = make_qft_roundtrip(n, bits, task.threshold)
    prep = prepare(circuit, dev)
    extras = {
        "threshold": task.threshold,
        "input": bits,
        "depth": prep.depth_after,
        "added_swaps": prep.added_swaps,
        "F_ideal": 1.0,
    }
    if _is_zero_noise(dev):
        probs = permute_probs(run(prep.circuit).probabilities(),
                              prep.final_permutation)
        value = float(probs[index_for_bitstring(bits)])
        return [BenchmarkResult(
            algorithm="qft", device=dev.name, n=n, metric="roundtrip_fidelity",
            value=value, err=0.0, shots=cfg.shots, seed=cfg.seed, extras=extras)]
    per_rep = []
    for r in range(cfg.reps):
        rep_seed = stable_seed(cfg.seed, label, f"rep={r}")
        counts = remap_counts(noisy_run(prep.circuit, dev, cfg.shots, rep_seed),
                              prep.final_permutation)
        p = counts.frequency(bits)
        err = math.sqrt(p * (1.0 - p) / cfg.shots)
        row = BenchmarkResult(
            algorithm="qft", device=dev.name, n=n, metric="roundtrip_fidelity",
            value=p, err=err, shots=cfg.shots, seed=rep_seed, extras=dict(extras))
        per_rep.append([row])
    rows = [row for r, group in enumerate(per_rep) for row in _with_rep(group, r)]
    return rows + _median_rows(per_rep, cfg.seed)


def _run_grover(task: BenchmarkTask, dev: DeviceModel, cfg: RunConfig,
                label: str) -> list[BenchmarkResult]:
    if _is_zero_noise(dev):
        seed = stable_seed(cfg.seed, label, "rep=0")
        return grover_scan(task.n, task.marked, dev, cfg.shots, seed)
    per_rep = []
    for r in range(cfg.reps):
        rep_seed = stable_seed(cfg.seed, label, f"rep={r}")
        per_rep.append(grover_scan(task.n, task.marked, dev, cfg.shots, rep_seed))
    rows = [row for r, group in enumerate(per_rep) for row in _with_rep(group, r)]
    return rows + _median_rows(per_rep, cfg.seed)


def _run_qaoa(task: BenchmarkTask, dev: DeviceModel, cfg: RunConfig,
              label: str) -> list[BenchmarkResult]:
    try:
        graph = make_graph(task.graph)
    except ValueError as exc:
        raise ConfigError(f"bad graph kind {task.graph!r}: {exc}") from exc
    opt_seed = stable_seed(cfg.seed, label, "opt")
    exact = _is_zero_noise(dev)
    opt_shots = None if exact else cfg.shots
    best, trace = optimize_qaoa(graph, dev, opt_shots, opt_seed, task.penalty)
    extras = {
        "graph": task.graph,
        "density": graph.density(),
        "gamma": best.gamma,
        "beta": best.beta,
        "penalty": task.penalty,
        "trace_len": len(trace),
    }
    circuit = make_qaoa_circuit(graph, best)
    if exact:
        prep = prepare(circuit, dev)
        probs = permute_probs(run(prep.circuit).probabilities(),
                              prep.final_permutation)
        return qaoa_metrics_exact(
            probs, graph, task.penalty, device=dev.name, seed=cfg.seed,
            shots=cfg.shots, extras=extras)
    per_rep = []
    for r in range(cfg.reps):
        rep_seed = stable_seed(cfg.seed, label, f"rep={r}")
        counts = run_device_counts(circuit, dev, cfg.shots, rep_seed)
        rows = qaoa_metrics(counts, graph, task.penalty, device=dev.name,
                            seed=rep_seed, extras=extras)
        per_rep.append(rows)
    rows = [row for r, group in enumerate(per_rep) for row in _with_rep(group, r)]
    return rows + _median_rows(per_rep, cfg.seed)


_RUNNERS = {
    "bell": _run_bell,
    "ghz": _run_ghz,
    "qft": _run_qft,
    "grover": _run_grover,
    "qaoa": _run_qaoa,
}


def run_experiments(cfg: RunConfig) -> ResultsArchive:
    """Execute every (benchmark, device) pair; deterministic given cfg.seed."""
    devices = [resolve_device(name) for name in cfg.devices]
    rows: list[BenchmarkResult] = []
    for task in cfg.benchmarks:
        runner = _RUNNERS[task.id]
        for dev in devices:
            label = f"{task.label}|{dev.name}"
            try:
                rows.extend(runner(task, dev, cfg, label))
            except QubenchError as exc:
                raise type(exc)(f"[{task.label} @ {dev.name}] {exc}") from exc
    return ResultsArchive(rows=rows, config_hash=config_hash(cfg),
                          tool_version=__version__)


def _table_rows(archive: ResultsArchive, algorithm: str) -> list[BenchmarkResult]:
    rows = [row for row in archive.sorted_rows()
            if row.algorithm == algorithm and "rep" not in row.extras]
    if not rows:
        raise NoMatchingRows(f"archive holds no {algorithm} summary rows")
    return rows


def render_table(archive: ResultsArchive, table_id: str) -> str:
    """CSV with one line per summary row, ordered by device then n then k/graph."""
    if table_id not in TABLE_IDS:
        raise ValueError(f"unknown table id {table_id!r}")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if table_id == "chsh":
        writer.writerow(["device", "S", "err", "S_ideal", "shots"])
        for row in _table_rows(archive, "bell"):
            writer.writerow([row.device, repr(float(row.value)), repr(float(row.err)),
                             repr(float(row.extras["S_ideal"])), row.shots])
    elif table_id == "ghz":
        writer.writerow(["device", "n", "F_exp", "err", "F_ideal", "shots"])
        for row in _table_rows(archive, "ghz"):
            writer.writerow([row.device, row.n, repr(float(row.value)), repr(float(row.err)),
                             repr(float(row.extras["F_ideal"])), row.shots])
    elif table_id == "qft":
        writer.writerow(["device", "n", "F_exp", "err", "depth", "F_ideal"])
        for row in _table_rows(archive, "qft"):
            writer.writerow([row.device, row.n, repr(float(row.value)), repr(float(row.err)),
                             int(row.extras["depth"]),
                             repr(float(row.extras["F_ideal"]))])
    elif table_id == "grover":
        writer.writerow(["device", "n", "k", "k_label", "P_success", "err"])
        for row in _table_rows(archive, "grover"):
            writer.writerow([row.device, row.n, int(row.extras["k"]),
                             row.extras["k_label"], repr(float(row.value)),
                             repr(float(row.err))])
    else:
        writer.writerow(["device", "graph", "approx_ratio", "err",
                         "feasibility_pct", "success", "mean_hamming"])
        rows = _table_rows(archive, "qaoa")
        grouped: dict[tuple[str, str], dict[str, BenchmarkResult]] = {}
        order = []
        for row in rows:
            key = (row.device, str(row.extras.get("graph", "")))
            if key not in grouped:
                grouped[key] = {}
                order.append(key)
            grouped[key][row.metric] = row
        for key in order:
            metrics = grouped[key]
            if "approx_ratio" not in metrics:
                continue
            ar = metrics["approx_ratio"]
            feas = metrics.get("feasibility")
            succ = metrics.get("success_prob")
            ham = metrics.get("mean_hamming")
            writer.writerow([
                key[0], key[1], repr(float(ar.value)), repr(float(ar.err)),
                repr(100.0 * float(feas.value)) if feas else "",
                repr(float(succ.value)) if succ else "",
                repr(float(ham.value)) if ham else "",
            ])
    return out.getvalue()


def _series_path(out_dir: Path, figure_id: str, device: str,
                 suffix: str = "") -> Path:
    safe = device.replace("/", "_").replace(" ", "_")
    name = f"{figure_id}_{safe}{suffix}.dat"
    return out_dir / name


def _write_series(path: Path, header: str,
                  triples: list[tuple[float, float, float]]) -> Path:
    lines = [f"# {header}"]
    for x_val, y_val, err in triples:
        # plain-float repr; numpy scalars would stringify as np.float64(...)
        lines.append(f"{float(x_val)!r} {float(y_val)!r} {float(err)!r}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path


def _by_device(rows: list[BenchmarkResult]) -> dict[str, list[BenchmarkResult]]:
    by_dev: dict[str, list[BenchmarkResult]] = {}
    for row in rows:
        by_dev.setdefault(row.device, []).append(row)
    return by_dev


def emit_plot_data(archive: ResultsArchive, figure_id: str,
                   out_dir: str | Path) -> list[Path]:
    """Write per-device (x, y, err) series files for one figure."""
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {figure_id!r}")
    out = Path(out_dir)
    paths: list[Path] = []

    if figure_id == "chsh_bars":
        rows = _table_rows(archive, "bell")
        for dev, group in _by_device(rows).items():
            triples = [(float(i), row.value, row.err)
                       for i, row in enumerate(group)]
            paths.append(_write_series(
                _series_path(out, figure_id, dev), "index S err", triples))
        paths.append(_write_series(
            out / f"{figure_id}_classical_bound.dat", "index bound err",
            [(0.0, 2.0, 0.0)]))
        return paths

    if figure_id in ("ghz_vs_n", "qft_fid_vs_n", "qft_depth_bars"):
        algorithm = "ghz" if figure_id == "ghz_vs_n" else "qft"
        rows = _table_rows(archive, algorithm)
        for dev, group in _by_device(rows).items():
            group = sorted(group, key=lambda row: row.n)
            if figure_id == "qft_depth_bars":
                triples = [(float(row.n), float(row.extras["depth"]), 0.0)
                           for row in group]
                header = "n depth err"
            else:
                triples = [(float(row.n), row.value, row.err) for row in group]
                header = "n fidelity err"
            paths.append(_write_series(
                _series_path(out, figure_id, dev), header, triples))
        return paths

    if figure_id == "grover_vs_k":
        rows = _table_rows(archive, "grover")
        for dev, group in _by_device(rows).items():
            by_n: dict[int, list[BenchmarkResult]] = {}
            for row in group:
                by_n.setdefault(row.n, []).append(row)
            for n, sub in sorted(by_n.items()):
                sub = sorted(sub, key=lambda row: int(row.extras["k"]))
                triples = [(float(row.extras["k"]), row.value, row.err)
                           for row in sub]
                paths.append(_write_series(
                    _series_path(out, figure_id, dev, f"_n{n}"),
                    "k P_success err", triples))
        return paths

    if figure_id == "grover_peak_vs_n":
        rows = [row for row in _table_rows(archive, "grover")
                if row.extras.get("k_label") == "k"]
        if not rows:
            raise NoMatchingRows("no grover rows at the optimal k")
        for dev, group in _by_device(rows).items():
            group = sorted(group, key=lambda row: row.n)
            triples = [(float(row.n), row.value, row.err) for row in group]
            paths.append(_write_series(
                _series_path(out, figure_id, dev), "n P_success err", triples))
        return paths

    rows = _table_rows(archive, "qaoa")
    for dev, group in _by_device(rows).items():
        by_graph: dict[str, dict[str, BenchmarkResult]] = {}
        for row in group:
            by_graph.setdefault(str(row.extras.get("graph", "")), {})[
                row.metric] = row
        triples = []
        for metrics in by_graph.values():
            if figure_id == "qaoa_ar_bars":
                row = metrics.get("approx_ratio")
                if row:
                    triples.append((float(row.extras["density"]),
                                    row.value, row.err))
                header = "density approx_ratio err"
            elif figure_id == "qaoa_feas_vs_density":
                row = metrics.get("feasibility")
                if row:
                    triples.append((float(row.extras["density"]),
                                    row.value, row.err))
                header = "density feasibility err"
            else:
                ar = metrics.get("approx_ratio")
                ham = metrics.get("mean_hamming")
                if ar and ham:
                    triples.append((ar.value, ham.value, ham.err))
                header = "approx_ratio mean_hamming err"
        triples.sort(key=lambda t: t[0])
        paths.append(_write_series(
            _series_path(out, figure_id, dev), header, triples))
    return paths
