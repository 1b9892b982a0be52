import json

from qubench.results import BenchmarkResult, ResultsArchive


def row(algorithm="ghz", device="IDEAL", n=4, metric="fidelity", value=0.5,
        err=0.01, shots=100, seed=7, extras=None):
    return BenchmarkResult(algorithm=algorithm, device=device, n=n,
                           metric=metric, value=value, err=err, shots=shots,
                           seed=seed, extras=extras or {})


def test_result_dict_round_trip():
    r = row(extras={"rep": 3, "F_ideal": 1.0, "note": "x"})
    back = BenchmarkResult.from_dict(r.to_dict())
    assert back == r


def test_result_dict_is_json_safe():
    r = row(extras={"graph": "PATH(10)", "density": 0.2})
    text = json.dumps(r.to_dict())
    assert BenchmarkResult.from_dict(json.loads(text)) == r


def test_archive_jsonl_round_trip(tmp_path):
    rows = [row(value=0.1, seed=1), row(device="ION_FC", value=0.2, seed=2)]
    archive = ResultsArchive(rows=rows, config_hash="abc123", tool_version="0.1.0")
    path = archive.write(tmp_path / "results.jsonl")
    back = ResultsArchive.read(path)
    assert back.rows == archive.rows
    assert back.config_hash == "abc123"
    assert back.tool_version == "0.1.0"


def test_archive_header_has_no_timestamp(tmp_path):
    archive = ResultsArchive(rows=[row()], config_hash="deadbeef", tool_version="0.1.0")
    first_line = archive.to_jsonl().splitlines()[0]
    header = json.loads(first_line)
    # nothing volatile: repeated runs of the same config must be byte-identical
    assert set(header) == {"config_hash", "tool_version"}


def test_archive_serialization_is_stable():
    rows = [row(value=0.25, extras={"k": 2, "k_label": "k-1"})]
    archive = ResultsArchive(rows=rows, config_hash="ff", tool_version="0.1.0")
    assert archive.to_jsonl() == archive.to_jsonl()


def test_sorted_rows_orders_by_key():
    rows = [row(device="SC_GRID20", n=10), row(device="IDEAL", n=6),
            row(device="IDEAL", n=4)]
    archive = ResultsArchive(rows=rows, config_hash="x", tool_version="0.1.0")
    ordered = archive.sorted_rows()
    keys = [(r.device, r.n) for r in ordered]
    assert keys == sorted(keys)
