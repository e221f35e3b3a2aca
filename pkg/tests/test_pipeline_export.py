import importlib
import importlib.util
import json
import pathlib

import polars as pl
import pytest

from clients.pyclient import fetch_entry_checks, fetch_reports
from cremona_lab.settings import Settings

ROOT = pathlib.Path(__file__).resolve().parents[1]


def _exporter():
    spec = importlib.util.spec_from_file_location("export_reports", ROOT / "scripts" / "export_reports.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


@pytest.fixture(scope="module")
def reports(tmp_path_factory):
    root = tmp_path_factory.mktemp("reports")
    pipeline = importlib.import_module("pipelines.01_verify_catalog")
    summaries = pipeline.run(["p2", "nil"], "fast", Settings(), root)
    assert [s["fail"] for s in summaries] == [0, 0]
    return root


def test_pipeline_writes_two_files_per_table(reports):
    assert sorted(p.name for p in reports.iterdir()) == [
        "nil.checks.jsonl",
        "nil.reports.jsonl",
        "p2.checks.jsonl",
        "p2.reports.jsonl",
    ]
    rows = [json.loads(line) for line in (reports / "p2.reports.jsonl").read_text(encoding="utf-8").splitlines()]
    assert [r["id"] for r in rows] == ["C3", "CxCe2", "Ce3"]
    assert all("wall_time" in r for r in rows)


def test_export_writes_every_metric(reports, tmp_path):
    target = _exporter().export(reports, tmp_path)
    names = sorted(p.name for p in target.iterdir())
    for metric in ("check_status", "entry_timing", "table_status"):
        assert f"{metric}.csv" in names
        assert f"{metric}.parquet" in names
    assert "checks.csv" in names and "MANIFEST.txt" in names

    status = pl.read_csv(target / "table_status.csv")
    assert status["table"].to_list() == ["nil", "p2"]
    assert status["entries"].to_list() == [8, 3]
    assert status["failed"].to_list() == [0, 0]


def test_export_filters_and_gzip(reports, tmp_path):
    target = _exporter().export(reports, tmp_path, compress=True, parquet=False, include=["check_status"])
    names = sorted(p.name for p in target.iterdir())
    assert names == ["MANIFEST.txt", "check_status.csv.gz", "checks.csv.gz"]


def test_export_needs_reports(tmp_path):
    with pytest.raises(FileNotFoundError):
        _exporter().export(tmp_path, tmp_path / "out")


def test_bad_metric_definition(tmp_path):
    path = tmp_path / "metrics.yaml"
    path.write_text("broken:\n  source: nowhere\n  grain: [table]\n  columns: {n: 'count(*)'}\n", encoding="utf-8")
    with pytest.raises(ValueError):
        _exporter().load_metrics(path)


def test_client_reads_reports(reports):
    df = fetch_reports("p2", reports_dir=reports)
    assert df["id"].tolist() == ["C3", "Ce3", "CxCe2"]
    assert df["ok"].all()
    assert len(fetch_reports(reports_dir=reports)) == 11

    checks = fetch_entry_checks("C3", reports_dir=reports)
    assert set(checks["check"]) >= {"build", "jordan", "rank", "adjoint", "involution", "radical"}
    assert (checks["status"] == "pass").all()
