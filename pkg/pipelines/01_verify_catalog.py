# pipelines/01_verify_catalog.py
import argparse, json, logging, sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from cremona_lab.catalog import TABLES, summarize, verify_table  # noqa: E402
from cremona_lab.errors import LabError  # noqa: E402
from cremona_lab.settings import load_settings  # noqa: E402

from pipelines.utils import log, report_path  # noqa: E402

# p5 的 full 深度最慢（6 变量 Gröbner），默认跳过
DEFAULT_TABLES = ["nil", "p2", "p3", "p4", "g4", "control"]

def write_reports(table: str, reports, root: Path) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    path = report_path(table, "reports", root)
    with path.open("w", encoding="utf-8") as f:
        for r in reports:
            f.write(json.dumps(r.to_json(timing=True), sort_keys=True) + "\n")
    with report_path(table, "checks", root).open("w", encoding="utf-8") as f:
        for r in reports:
            for row in r.rows():
                f.write(json.dumps(row, sort_keys=True) + "\n")
    return path

# ---------------- one table ----------------
def verify_one(table: str, depth: str, settings, root: Path) -> dict:
    reports = verify_table(table, depth, settings)
    path = write_reports(table, reports, root)
    s = summarize(table, reports)
    print(f"[verify] table={table} rows={s['entries']} pass={s['pass']}", flush=True)
    if s["fail"]:
        log(f"[verify] table={table} failed: {', '.join(s['failed_ids'])}")
    log(f"[verify] wrote {path}")
    return s

def run(tables, depth: str, settings, root: Path) -> list:
    return [verify_one(t, depth, settings, root) for t in tables]

# ---------------- CLI ----------------
if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="Verify catalog tables and write JSON-lines reports.")
    ap.add_argument("--tables", nargs="*", choices=TABLES, default=None, help="Tables to verify (default: all but p5 and g5)")
    ap.add_argument("--all", action="store_true", help="Verify every table, including p5 and g5")
    ap.add_argument("--fast", action="store_true", help="Skip multidegree and decomposition checks")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--outdir", type=str, default=None, help="Report directory (default: CREMONA_LAB_REPORTS or reports)")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s:%(levelname)s:%(message)s")

    try:
        settings = load_settings().with_overrides(seed=args.seed, workers=args.workers)
        tables = list(TABLES) if args.all else (args.tables or DEFAULT_TABLES)
        root = Path(args.outdir or settings.reports_dir)
        summaries = run(tables, "fast" if args.fast else "full", settings, root)
    except LabError as e:
        print(f"❌ Failed: {e}", file=sys.stderr)
        sys.exit(2)
    sys.exit(1 if any(s["fail"] for s in summaries) else 0)
