"""Shipped classification tables and the driver that re-checks them.

Each table lives in ``data/<table>.json``. Rows carry a definition (how to
build the algebra), the expected values, and a provenance tag per expected
field: "published" for values read off the classification, "derived" for
values this project computed or corrected.
"""

import json
import logging
import pathlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .cremona import RationalMap, base_ideal, check_involution, multidegree, scheme_type
from .errors import CatalogError, InputError, LabError
from .exact_poly import as_fraction, default_vars, parse_polynomial
from .groebner import Ideal, ideal_equal, intersect_all
from .jordan import (
    Algebra,
    adjoint_map,
    check_jordan,
    direct_product,
    from_adjoint,
    is_nil,
    radical,
    rank_profile,
    spin_factor,
    unitalize,
)
from .settings import Settings

log = logging.getLogger(__name__)

DATA_DIR = pathlib.Path(__file__).resolve().parent / "data"
TABLES = ("nil", "p2", "p3", "p4", "p5", "g4", "g5", "control")
PROVENANCE_TAGS = ("published", "derived")
DEFINITION_KINDS = ("table", "adjoint", "unitalize", "product")
DEPTHS = ("fast", "full")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    table: str
    dim: int
    definition: dict
    expected: dict
    provenance: dict
    normalization: Optional[Tuple[Fraction, ...]] = None
    also: Tuple[dict, ...] = ()
    annotations: dict = field(default_factory=dict)

    @property
    def vars(self) -> Tuple[str, ...]:
        return default_vars(self.dim)

    def expected_adjoint(self) -> Optional[RationalMap]:
        """The printed adjoint, with the sign normalisation applied."""
        texts = self.expected.get("adjoint")
        if texts is None:
            return None
        F = RationalMap.parse(texts, self.vars)
        return F.scaled(self.normalization) if self.normalization else F

    def summary(self) -> dict:
        out = {"id": self.id, "table": self.table, "dim": self.dim, "definition": self.definition["kind"]}
        for key in ("type", "mdeg", "dim_radical"):
            if key in self.expected:
                out[key] = self.expected[key]
        return out

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "table": self.table,
            "dim": self.dim,
            "definition": self.definition,
            "expected": self.expected,
            "provenance": self.provenance,
        }
        if self.normalization:
            out["normalization"] = [str(a) for a in self.normalization]
        if self.also:
            out["also"] = list(self.also)
        if self.annotations:
            out["annotations"] = self.annotations
        return out


# ------------ building algebras from definitions ------------
def _linear_coords(text, basis: Sequence[str], where: str) -> List[Fraction]:
    if isinstance(text, list):
        if len(text) != len(basis):
            raise CatalogError(f"{where}: expected {len(basis)} coordinates")
        return [as_fraction(a) for a in text]
    try:
        p = parse_polynomial(text, basis)
    except InputError as e:
        raise CatalogError(f"{where}: {e}")
    if any(sum(exp) != 1 for exp in p.terms):
        raise CatalogError(f"{where}: {text!r} is not a linear combination of the basis")
    n = len(basis)
    return [p.coefficient(tuple(int(k == i) for k in range(n))) for i in range(n)]


def algebra_from_table(defn: dict, name: str = "", where: str = "table") -> Algebra:
    """{"basis": [...], "unit": "e1 + e2", "products": {"e1*a": "1/2*a"}}."""
    try:
        basis = tuple(defn["basis"])
    except (KeyError, TypeError):
        raise CatalogError(f"{where}: missing 'basis'")
    table = {}
    for key, value in defn.get("products", {}).items():
        left, sep, right = key.partition("*")
        if not sep or left not in basis or right not in basis:
            raise CatalogError(f"{where}: bad product key {key!r}")
        table[(basis.index(left), basis.index(right))] = _linear_coords(value, basis, f"{where}.{key}")
    unit = defn.get("unit")
    if unit is not None:
        unit = _linear_coords(unit, basis, f"{where}.unit")
    try:
        return Algebra(len(basis), table, unit, basis, name)
    except LabError as e:
        raise CatalogError(f"{where}: {e}")


def _field() -> Algebra:
    return Algebra(1, {(0, 0): [1]}, [1], ["c"], "C")


class Catalog:
    """Immutable after load; algebras are built on first use and cached."""

    def __init__(self, entries: Sequence[CatalogEntry]):
        self.entries = tuple(entries)
        self._by_id: Dict[str, CatalogEntry] = {}
        for e in self.entries:
            if e.id in self._by_id:
                raise CatalogError(f"duplicate id {e.id!r}")
            self._by_id[e.id] = e
        self._algebras: Dict[str, Algebra] = {}

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, entry_id) -> bool:
        return entry_id in self._by_id

    def get(self, entry_id: str) -> CatalogEntry:
        try:
            return self._by_id[entry_id]
        except KeyError:
            raise InputError(f"unknown catalog entry {entry_id!r}", field="id")

    def table(self, name: str) -> List[CatalogEntry]:
        if name not in TABLES:
            raise InputError(f"unknown table {name!r}; expected one of {', '.join(TABLES)}", field="table")
        return [e for e in self.entries if e.table == name]

    def algebra(self, entry_id: str) -> Algebra:
        if entry_id not in self._algebras:
            entry = self.get(entry_id)
            self._algebras[entry_id] = self.build(entry, entry.definition)
        return self._algebras[entry_id]

    def build(self, entry: CatalogEntry, defn: dict) -> Algebra:
        kind = defn["kind"]
        where = f"{entry.id}.{kind}"
        if kind == "table":
            return algebra_from_table(defn, entry.id, where)
        if kind == "adjoint":
            if "components" in defn:
                F = RationalMap.parse(defn["components"], entry.vars)
            else:
                F = entry.expected_adjoint()
            return from_adjoint(F, defn["unit"], entry.id)
        if kind == "unitalize":
            R = self.algebra(defn["of"]) if "of" in defn else algebra_from_table(defn["table"], "", where)
            return unitalize(R, entry.id)
        if kind == "product":
            factors = [self._factor(f, where) for f in defn["factors"]]
            A = factors[0]
            for B in factors[1:]:
                A = direct_product(A, B)
            A.name = entry.id
            return A
        raise CatalogError(f"{where}: unknown definition kind")

    def _factor(self, ref, where: str) -> Algebra:
        if ref == "C":
            return _field()
        if isinstance(ref, dict) and "spin" in ref:
            return spin_factor(ref["spin"])
        if isinstance(ref, str):
            return self.algebra(ref)
        raise CatalogError(f"{where}: bad factor {ref!r}")


def _validate(raw: dict, table: str, where: str) -> CatalogEntry:
    for key in ("id", "dim", "definition", "expected", "provenance"):
        if key not in raw:
            raise CatalogError(f"{where}: missing {key!r}")
    expected, prov = raw["expected"], raw["provenance"]
    for key in expected:
        if prov.get(key) not in PROVENANCE_TAGS:
            raise CatalogError(f"{where}: expected field {key!r} has no provenance tag")
    for defn in [raw["definition"], *raw.get("also", [])]:
        if defn.get("kind") not in DEFINITION_KINDS:
            raise CatalogError(f"{where}: unknown definition kind {defn.get('kind')!r}")
    dim = int(raw["dim"])
    adj = expected.get("adjoint")
    if adj is not None and len(adj) != dim:
        raise CatalogError(f"{where}: {len(adj)} adjoint components for dimension {dim}")
    norm = raw.get("normalization")
    if norm is not None:
        if "normalization" not in prov:
            raise CatalogError(f"{where}: normalization has no provenance tag")
        if len(norm) != dim:
            raise CatalogError(f"{where}: normalization has the wrong length")
        norm = tuple(as_fraction(a) for a in norm)
    return CatalogEntry(
        id=raw["id"],
        table=table,
        dim=dim,
        definition=raw["definition"],
        expected=expected,
        provenance=prov,
        normalization=norm,
        also=tuple(raw.get("also", [])),
        annotations=raw.get("annotations", {}),
    )


@lru_cache(maxsize=None)
def load_catalog(data_dir: Optional[str] = None) -> Catalog:
    root = pathlib.Path(data_dir) if data_dir else DATA_DIR
    entries = []
    for name in TABLES:
        path = root / f"{name}.json"
        try:
            with path.open("r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise CatalogError(f"cannot read {path}: {e}")
        if data.get("table") != name:
            raise CatalogError(f"{path}: table field {data.get('table')!r} != {name!r}")
        for k, raw in enumerate(data.get("entries", [])):
            entries.append(_validate(raw, name, f"{name}[{k}]"))
    catalog = Catalog(entries)
    for e in catalog:
        for defn in [e.definition, *e.also]:
            ref = defn.get("of")
            if ref is not None and ref not in catalog:
                raise CatalogError(f"{e.id}: reference to unknown entry {ref!r}")
    log.debug(f"[catalog] loaded {len(catalog)} entries from {root}")
    return catalog


# ------------ verification ------------
@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class VerificationReport:
    entry_id: str
    table: str
    depth: str
    seed: int
    checks: Tuple[Check, ...]
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failed(self) -> List[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "id": self.entry_id,
            "table": self.table,
            "depth": self.depth,
            "seed": self.seed,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def rows(self) -> List[dict]:
        """One flat row per check, for tabular export."""
        return [
            {
                "entry_id": self.entry_id,
                "table": self.table,
                "depth": self.depth,
                "check": c.name,
                "status": c.status,
                "detail": c.detail,
                "wall_time": self.wall_time,
            }
            for c in self.checks
        ]


def _mismatch(got: RationalMap, want: RationalMap) -> str:
    if got.vars != want.vars or len(got) != len(want):
        return f"shapes differ: {got.render()} vs {want.render()}"
    for i, (a, b) in enumerate(zip(got.components, want.components)):
        if a != b:
            return f"component {i}: computed {a}, expected {b}"
    return ""


class _Run:
    """Collects checks; a LabError inside a check is recorded as a failure."""

    def __init__(self):
        self.checks: List[Check] = []

    def add(self, name: str, fn) -> bool:
        try:
            ok, detail = fn()
        except LabError as e:
            self.checks.append(Check(name, "fail", f"{type(e).__name__}: {e}"))
            return False
        self.checks.append(Check(name, "pass" if ok else "fail", detail))
        return ok

    def skip(self, name: str, why: str):
        self.checks.append(Check(name, "skipped", why))


def verify_entry(
    entry: CatalogEntry,
    depth: str = "fast",
    settings: Optional[Settings] = None,
    catalog: Optional[Catalog] = None,
) -> VerificationReport:
    if depth not in DEPTHS:
        raise InputError(f"depth must be one of {DEPTHS}", field="depth")
    settings = settings or Settings()
    catalog = catalog or load_catalog()
    exp = entry.expected
    run = _Run()
    t0 = time.perf_counter()
    state = {}

    def report():
        dt = time.perf_counter() - t0
        rep = VerificationReport(entry.id, entry.table, depth, settings.seed, tuple(run.checks), dt)
        log.info(f"[catalog] {entry.id} {'pass' if rep.ok else 'FAIL'} ({dt:.2f}s)")
        return rep

    def build():
        state["A"] = catalog.algebra(entry.id)
        return True, f"dim={state['A'].dim}"

    if not run.add("build", build):
        return report()
    A = state["A"]

    def jordan():
        res = check_jordan(A)
        want = exp.get("jordan", True)
        detail = "" if res.ok else f"component {res.component}: {res.witness}"
        return res.ok == want, detail

    if not run.add("jordan", jordan) or exp.get("jordan", True) is False:
        return report()

    if "nil_index" in exp:
        k = int(exp["nil_index"])
        run.add("nil_index", lambda: (is_nil(A, k), f"x^{k} = 0"))
        return report()

    def rank():
        prof = rank_profile(A)
        state["profile"] = prof
        return prof.rank == exp.get("rank", 3), f"rank={prof.rank}"

    if not run.add("rank", rank):
        return report()

    def adjoint():
        F = adjoint_map(A, check=False)
        state["F"] = F
        want = entry.expected_adjoint()
        if want is None:
            return True, "no printed adjoint"
        return F == want, _mismatch(F, want)

    if not run.add("adjoint", adjoint):
        return report()
    F = state["F"]

    def involution():
        res = check_involution(F)
        N = state["profile"].norm
        if not res.ok:
            return False, res.detail
        if res.scaling != N:
            return False, f"scaling {res.scaling} differs from the norm {N}"
        return res.scaling.degree() == 3, f"N={N}"

    run.add("involution", involution)

    if "dim_radical" in exp:
        def rad():
            R = radical(A)
            detail = f"dim={R.dim} method={R.method}" + ("" if R.forms_agree else " (trace forms differ)")
            return R.dim == int(exp["dim_radical"]), detail

        run.add("radical", rad)

    for k, defn in enumerate(entry.also):
        def alt(defn=defn):
            G = adjoint_map(catalog.build(entry, defn), check=False)
            return G == F, _mismatch(G, F)

        run.add(f"also[{k}]:{defn['kind']}", alt)

    if "type" in exp:
        def typ():
            st = scheme_type(F)
            return st.label == exp["type"], f"label={st.label} hp={st.hilbert_polynomial}"

        run.add("type", typ)

    if "mdeg" in exp:
        if depth == "fast":
            run.skip("mdeg", "fast")
        else:
            def mdeg():
                md = multidegree(F, settings.seed, settings.trials, inverse_degree=F.degree,
                                 coefficient_range=settings.coefficient_range)
                return list(md.entries) == list(exp["mdeg"]), f"mdeg={list(md.entries)}"

            run.add("mdeg", mdeg)

    if "components" in exp:
        if depth == "fast":
            run.skip("components", "fast")
        else:
            def components():
                parts = [Ideal([parse_polynomial(g, entry.vars) for g in gens], entry.vars) for gens in exp["components"]]
                ok = ideal_equal(intersect_all(parts), base_ideal(F, saturate=True))
                return ok, f"{len(parts)} components"

            run.add("components", components)

    return report()


def _verify_job(args) -> VerificationReport:
    entry_id, depth, settings = args
    catalog = load_catalog()
    return verify_entry(catalog.get(entry_id), depth, settings, catalog)


def verify_table(
    name: str,
    depth: str = "fast",
    settings: Optional[Settings] = None,
    workers: Optional[int] = None,
) -> List[VerificationReport]:
    """verify_entry over a whole table, in catalog order."""
    settings = settings or Settings()
    workers = settings.workers if workers is None else workers
    catalog = load_catalog()
    entries = catalog.table(name)
    jobs = [(e.id, depth, settings) for e in entries]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            reports = list(pool.map(_verify_job, jobs))
    else:
        reports = [verify_entry(e, depth, settings, catalog) for e in entries]
    s = summarize(name, reports)
    log.info(f"[catalog] table={name} rows={s['entries']} pass={s['pass']} fail={s['fail']}")
    return reports


def summarize(name: str, reports: Sequence[VerificationReport]) -> dict:
    passed = sum(1 for r in reports if r.ok)
    return {
        "table": name,
        "entries": len(reports),
        "pass": passed,
        "fail": len(reports) - passed,
        "failed_ids": [r.entry_id for r in reports if not r.ok],
    }
