from .cremona_data import fetch_entry_checks, fetch_reports
