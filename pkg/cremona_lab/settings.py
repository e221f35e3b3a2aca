"""Runtime knobs: conf/lab.yaml, overridden by CREMONA_LAB_* environment variables.

Env:
  CREMONA_LAB_CONF=conf/lab.yaml   # alternate YAML file
  CREMONA_LAB_SEED=20240917        # default seed for randomised checks
  CREMONA_LAB_TRIALS=3             # independent multidegree trials
  CREMONA_LAB_WORKERS=1            # catalog fan-out (1 = in-process)
  CREMONA_LAB_REPORTS=reports      # where pipeline reports are written
"""

import os
import pathlib
from dataclasses import dataclass, field, replace

import yaml

from .errors import InputError

ROOT = pathlib.Path(__file__).resolve().parents[1]
DEFAULT_CONF = ROOT / "conf" / "lab.yaml"


@dataclass(frozen=True)
class Settings:
    seed: int = 20240917
    trials: int = 3
    coefficient_range: int = 20
    saturation_max_iter: int = 50
    hilbert_oracle_degree: int = 8
    zorn_sample_points: int = 20
    zorn_symbolic_max_dim: int = 3
    workers: int = 1
    reports_dir: str = "reports"
    export: dict = field(default_factory=lambda: {"outdir": "exports", "gzip": False})

    def with_overrides(self, **kw) -> "Settings":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def env(name: str, default=None):
    v = os.getenv(name)
    return default if v is None or v == "" else v


def env_int(name: str, default=None):
    v = env(name)
    if v is None:
        return default
    try:
        return int(v)
    except ValueError:
        raise InputError(f"expected an integer, got {v!r}", field=name)


def _read_yaml(path: pathlib.Path) -> dict:
    if not path.exists():
        return {}
    with path.open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise InputError("top level must be a mapping", field=str(path))
    return data


def load_settings(path=None) -> Settings:
    conf_path = pathlib.Path(path or env("CREMONA_LAB_CONF", str(DEFAULT_CONF)))
    data = _read_yaml(conf_path)
    known = {f for f in Settings.__dataclass_fields__}
    unknown = sorted(set(data) - known)
    if unknown:
        raise InputError(f"unknown keys {unknown}", field=str(conf_path))
    s = Settings(**data)
    return s.with_overrides(
        seed=env_int("CREMONA_LAB_SEED"),
        trials=env_int("CREMONA_LAB_TRIALS"),
        workers=env_int("CREMONA_LAB_WORKERS"),
        reports_dir=env("CREMONA_LAB_REPORTS"),
    )
