import os, sys, duckdb, pathlib
def get_con():
    return duckdb.connect()
def reports_dir() -> pathlib.Path:
    # 与 cremona_lab.settings 使用同一个环境变量
    return pathlib.Path(os.getenv("CREMONA_LAB_REPORTS", "reports"))
def report_path(table: str, kind: str = "reports", root=None) -> pathlib.Path:
    """reports/<table>.<kind>.jsonl; kind is "reports" (one row per entry) or "checks"."""
    return pathlib.Path(root or reports_dir(), f"{table}.{kind}.jsonl")
def jsonl_glob(kind: str, root=None) -> str:
    return str(pathlib.Path(root or reports_dir(), f"*.{kind}.jsonl"))
def sql_path(p) -> str:
    return str(p).replace("'", "''")
def log(msg: str):
    print(msg, file=sys.stderr, flush=True)
