"""Benchmark result rows and the JSON-lines archive format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class BenchmarkResult:
    """One scalar metric from one benchmark execution."""

    algorithm: str
    device: str
    n: int
    metric: str
    value: float
    err: float
    shots: int
    seed: int
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        # normalize to builtin floats so repr- and json-based outputs never
        # pick up numpy scalar wrappers
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "err", float(self.err))
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if self.err < 0:
            raise ValueError("err must be non-negative")

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "device": self.device,
            "n": self.n,
            "metric": self.metric,
            "value": self.value,
            "err": self.err,
            "shots": self.shots,
            "seed": self.seed,
            "extras": self.extras,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "BenchmarkResult":
        return cls(
            algorithm=payload["algorithm"],
            device=payload["device"],
            n=int(payload["n"]),
            metric=payload["metric"],
            value=float(payload["value"]),
            err=float(payload["err"]),
            shots=int(payload["shots"]),
            seed=int(payload["seed"]),
            extras=dict(payload.get("extras", {})),
        )

    def sort_key(self):
        return (
            self.algorithm,
            self.device,
            self.n,
            self.metric,
            str(self.extras.get("graph", "")),
            float(self.extras.get("threshold", -1.0)),
            int(self.extras.get("k", -1)),
            int(self.extras.get("rep", -1)),
            json.dumps(self.extras, sort_keys=True),
        )


@dataclass
class ResultsArchive:
    """Sorted result rows plus provenance (config hash, tool version)."""

    rows: list[BenchmarkResult]
    config_hash: str
    tool_version: str

    def sorted_rows(self) -> list[BenchmarkResult]:
        return sorted(self.rows, key=BenchmarkResult.sort_key)

    def to_jsonl(self) -> str:
        header = {"config_hash": self.config_hash, "tool_version": self.tool_version}
        lines = [json.dumps(header, sort_keys=True)]
        for row in self.sorted_rows():
            lines.append(json.dumps(row.to_dict(), sort_keys=True))
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_jsonl())
        return path

    @classmethod
    def from_jsonl(cls, text: str) -> "ResultsArchive":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty archive")
        header = json.loads(lines[0])
        rows = [BenchmarkResult.from_dict(json.loads(ln)) for ln in lines[1:]]
        return cls(
            rows=rows,
            config_hash=str(header.get("config_hash", "")),
            tool_version=str(header.get("tool_version", "")),
        )

    @classmethod
    def read(cls, path: str | Path) -> "ResultsArchive":
        return cls.from_jsonl(Path(path).read_text())
