import os, duckdb, pandas as pd
from pathlib import Path

def _root(reports_dir=None) -> Path:
    return Path(reports_dir or os.getenv("CREMONA_LAB_REPORTS", "reports"))

def _src(root: Path, kind: str) -> str:
    return str(root / f"*.{kind}.jsonl").replace("'", "''")

def fetch_reports(table: str = None, reports_dir=None) -> pd.DataFrame:
    """One row per verified entry: id, table, depth, ok, wall_time."""
    con = duckdb.connect()
    where, params = ("", []) if table is None else ('WHERE "table" = ?', [table])
    q = f"""
    SELECT id, "table", depth, seed, ok, wall_time
    FROM read_json_auto('{_src(_root(reports_dir), "reports")}', format='newline_delimited')
    {where}
    ORDER BY "table", id;
    """
    return con.execute(q, params).df()

def fetch_entry_checks(entry_id: str, reports_dir=None) -> pd.DataFrame:
    con = duckdb.connect()
    q = f"""
    SELECT entry_id, "table", depth, "check", status, detail
    FROM read_json_auto('{_src(_root(reports_dir), "checks")}', format='newline_delimited')
    WHERE entry_id = ?;
    """
    return con.execute(q, [entry_id]).df()
