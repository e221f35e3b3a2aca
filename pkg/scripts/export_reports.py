#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exporter for catalog verification reports

Features
- Metric tables from conf/metrics.yaml (SQL per grain, evaluated by duckdb over the JSON-lines reports)
- CSV for every metric (optionally gzip) + parquet copies
- Raw per-check rows as one extra CSV
- Include/Exclude metric filters
- Custom output dir; manifest

Env:
  CREMONA_LAB_REPORTS=reports     # where pipelines/01_verify_catalog.py wrote its files
"""

import argparse
import gzip
import pathlib
import sys
import time
from typing import Dict, List, Optional

import polars as pl
import yaml

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from pipelines.utils import get_con, jsonl_glob, log, reports_dir, sql_path  # noqa: E402

METRICS = ROOT / "conf" / "metrics.yaml"
SOURCES = ("reports", "checks")


# ------------ metrics ------------
def load_metrics(path: pathlib.Path = METRICS) -> Dict[str, dict]:
    with pathlib.Path(path).open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    for name, spec in data.items():
        if spec.get("source") not in SOURCES:
            raise ValueError(f"metric {name}: source must be one of {SOURCES}")
        if not spec.get("grain") or not spec.get("columns"):
            raise ValueError(f"metric {name}: needs 'grain' and 'columns'")
    return data


def metric_sql(spec: dict, root: pathlib.Path) -> str:
    grain = ", ".join(f'"{g}"' for g in spec["grain"])
    cols = ", ".join(f'{expr} AS "{name}"' for name, expr in spec["columns"].items())
    src = sql_path(jsonl_glob(spec["source"], root))
    return (
        f"SELECT {grain}, {cols} "
        f"FROM read_json_auto('{src}', format='newline_delimited') "
        f"GROUP BY {grain} ORDER BY {grain}"
    )


def compute_metric(con, spec: dict, root: pathlib.Path) -> pl.DataFrame:
    return con.execute(metric_sql(spec, root)).pl()


# ------------ writers ------------
def write_csv(df: pl.DataFrame, out: pathlib.Path, compress: bool) -> pathlib.Path:
    if not compress:
        df.write_csv(out)
        return out
    gz = out.with_name(out.name + ".gz")
    with gzip.open(gz, "wb") as f:
        df.write_csv(f)
    return gz


def _selected(names: List[str], include: List[str], exclude: List[str]) -> List[str]:
    if include:
        names = [n for n in names if n in include]
    return [n for n in names if n not in exclude]


def export(
    root: pathlib.Path,
    outdir: pathlib.Path,
    compress: bool = False,
    parquet: bool = True,
    include: Optional[List[str]] = None,
    exclude: Optional[List[str]] = None,
    metrics_path: pathlib.Path = METRICS,
) -> pathlib.Path:
    """Write every selected metric under outdir/export_<timestamp>/ and return that directory."""
    root = pathlib.Path(root)
    if not list(root.glob("*.reports.jsonl")):
        raise FileNotFoundError(f"no reports under {root}; run pipelines/01_verify_catalog.py first")
    metrics = load_metrics(metrics_path)
    names = _selected(sorted(metrics), include or [], exclude or [])

    ts = time.strftime("%Y%m%d_%H%M%S")
    target = pathlib.Path(outdir) / f"export_{ts}"
    target.mkdir(parents=True, exist_ok=True)
    log(f"Reports -> {root}")
    log(f"Export  -> {target}")

    con = get_con()
    written = []
    try:
        for name in names:
            df = compute_metric(con, metrics[name], root)
            out = write_csv(df, target / f"{name}.csv", compress)
            written.append(out)
            log(f"[CSV] {name} rows={df.height} -> {out.name}")
            if parquet:
                pq = target / f"{name}.parquet"
                df.write_parquet(pq)
                written.append(pq)
        checks = con.execute(
            f"SELECT * FROM read_json_auto('{sql_path(jsonl_glob('checks', root))}', format='newline_delimited') "
            f"ORDER BY \"table\", entry_id"
        ).pl()
        out = write_csv(checks, target / "checks.csv", compress)
        written.append(out)
        log(f"[CSV] checks rows={checks.height} -> {out.name}")
    finally:
        con.close()

    manifest = target / "MANIFEST.txt"
    with manifest.open("w", encoding="utf-8") as f:
        f.write(f"cremona-lab report export @ {ts}\n")
        f.write(f"Reports={root}\n")
        f.write("Files:\n")
        for p in written:
            f.write(f"  - {p.name}\n")
    log(f"📄 Manifest: {manifest}")
    log("✅ Export complete.")
    return target


def main(argv=None):
    ap = argparse.ArgumentParser(description="Aggregate verification reports into CSV/parquet.")
    ap.add_argument("--reports", type=str, default=None, help="Report directory (default: env CREMONA_LAB_REPORTS)")
    ap.add_argument("--outdir", type=str, default="exports", help="Output base directory (default: exports)")
    ap.add_argument("--gzip", action="store_true", help="Compress CSV files to .csv.gz")
    ap.add_argument("--no-parquet", action="store_true", help="Skip parquet copies")
    ap.add_argument("--include", type=str, nargs="*", default=[], help="Only export these metrics")
    ap.add_argument("--exclude", type=str, nargs="*", default=[], help="Skip these metrics")
    args = ap.parse_args(argv)
    root = pathlib.Path(args.reports) if args.reports else reports_dir()
    return export(root, pathlib.Path(args.outdir), args.gzip, not args.no_parquet, args.include, args.exclude)


if __name__ == "__main__":
    try:
        main()
    except Exception as e:
        print(f"❌ Failed: {e}", file=sys.stderr)
        sys.exit(1)
