import json
import shutil

import pytest

from cremona_lab.catalog import (
    DATA_DIR,
    PROVENANCE_TAGS,
    TABLES,
    load_catalog,
    summarize,
    verify_entry,
    verify_table,
)
from cremona_lab.errors import CatalogError, InputError
from cremona_lab.jordan import adjoint_map

COUNTS = {"nil": 8, "p2": 3, "p3": 7, "p4": 16, "p5": 39, "g4": 3, "g5": 4, "control": 1}


def test_table_sizes(catalog):
    for name, n in COUNTS.items():
        assert len(catalog.table(name)) == n
    assert len(catalog) == sum(COUNTS.values())


def test_every_expected_field_is_tagged(catalog):
    for e in catalog:
        assert set(e.expected) <= set(e.provenance)
        assert all(tag in PROVENANCE_TAGS for tag in e.provenance.values())


def test_lookup_errors(catalog):
    with pytest.raises(InputError) as err:
        catalog.get("J9_9")
    assert err.value.field == "id"
    with pytest.raises(InputError) as err:
        catalog.table("p9")
    assert err.value.field == "table"


def test_normalized_adjoint_differs_from_the_printed_one(catalog):
    e = catalog.get("J4_2")
    assert e.expected_adjoint().render() == ["y*z", "x*z", "x*y", "-x*t"]
    assert e.summary() == {"id": "J4_2", "table": "p3", "dim": 4, "definition": "adjoint", "dim_radical": 1}


@pytest.mark.parametrize("table", ["nil", "p2", "p3"])
def test_small_tables_verify(table, lab_settings):
    reports = verify_table(table, "fast", lab_settings, workers=1)
    s = summarize(table, reports)
    assert s["fail"] == 0, s["failed_ids"]
    assert s["entries"] == COUNTS[table]


def test_p4_verifies_in_fast_mode(catalog, lab_settings):
    for e in catalog.table("p4"):
        rep = verify_entry(e, "fast", lab_settings, catalog)
        assert rep.ok, (e.id, [c.to_json() for c in rep.failed()])
        names = [c.name for c in rep.checks]
        assert "type" in names
        assert ("mdeg", "skipped") in [(c.name, c.status) for c in rep.checks]


def test_alternative_definitions_are_checked(catalog, lab_settings):
    rep = verify_entry(catalog.get("J4_7"), "full", lab_settings, catalog)
    assert rep.ok
    assert "also[0]:unitalize" in [c.name for c in rep.checks]
    assert rep.to_json()["depth"] == "full"
    assert "wall_time" not in rep.to_json()
    assert "wall_time" in rep.to_json(timing=True)


P5_IDS = [e.id for e in load_catalog().table("p5")]


@pytest.mark.parametrize("entry_id", P5_IDS)
def test_p5_alternative_definitions_give_the_printed_adjoint(catalog, entry_id):
    e = catalog.get(entry_id)
    assert e.also, entry_id
    for defn in e.also:
        assert adjoint_map(catalog.build(e, defn), check=False) == e.expected_adjoint(), defn["kind"]


def test_table_alternative_is_a_named_check(catalog, lab_settings):
    rep = verify_entry(catalog.get("J122_b"), "fast", lab_settings, catalog)
    assert rep.ok, [c.to_json() for c in rep.failed()]
    assert ("also[0]:table", "pass") in [(c.name, c.status) for c in rep.checks]


def test_control_table_stops_at_the_jordan_identity(catalog, lab_settings):
    rep = verify_entry(catalog.get("NJ5"), "fast", lab_settings, catalog)
    assert [c.name for c in rep.checks] == ["build", "jordan"]
    assert rep.ok


def test_nilalgebra_rows_check_the_index(catalog, lab_settings):
    rep = verify_entry(catalog.get("R4_5"), "fast", lab_settings, catalog)
    assert [(c.name, c.status) for c in rep.checks] == [("build", "pass"), ("jordan", "pass"), ("nil_index", "pass")]
    assert {r["check"] for r in rep.rows()} == {"build", "jordan", "nil_index"}


def test_bad_depth_is_rejected(catalog):
    with pytest.raises(InputError):
        verify_entry(catalog.get("C3"), "deep")


def _statuses(rep):
    return {c.name: c.status for c in rep.checks}


def test_p4_verifies_in_full_mode(catalog, lab_settings):
    reports = verify_table("p4", "full", lab_settings, workers=1)
    s = summarize("p4", reports)
    assert s["fail"] == 0, s["failed_ids"]
    assert s["entries"] == COUNTS["p4"]
    for rep in reports:
        expected = catalog.get(rep.entry_id).expected
        statuses = _statuses(rep)
        for key in ("type", "mdeg", "components"):
            if key in expected:
                assert statuses[key] == "pass", (rep.entry_id, key)
    assert _statuses(next(r for r in reports if r.entry_id == "J5_12"))["components"] == "pass"


@pytest.mark.slow
@pytest.mark.parametrize("table", ["g4", "g5", "p5"])
def test_large_tables_verify_in_full_mode(table, catalog, lab_settings):
    reports = verify_table(table, "full", lab_settings, workers=2)
    s = summarize(table, reports)
    assert s["fail"] == 0, s["failed_ids"]
    for rep in reports:
        if "mdeg" in catalog.get(rep.entry_id).expected:
            assert _statuses(rep)["mdeg"] == "pass", rep.entry_id


def _copy_data(tmp_path):
    root = tmp_path / "data"
    shutil.copytree(DATA_DIR, root)
    return root


def _edit(root, table, fn):
    path = root / f"{table}.json"
    data = json.loads(path.read_text(encoding="utf-8"))
    fn(data)
    path.write_text(json.dumps(data), encoding="utf-8")


def test_missing_provenance_tag_is_a_catalog_error(tmp_path):
    root = _copy_data(tmp_path)
    _edit(root, "p2", lambda d: d["entries"][0]["provenance"].pop("rank"))
    with pytest.raises(CatalogError):
        load_catalog(str(root))


def test_dangling_reference_is_a_catalog_error(tmp_path):
    root = _copy_data(tmp_path)
    _edit(root, "p3", lambda d: d["entries"][-1]["also"][0].update({"of": "R3_9"}))
    with pytest.raises(CatalogError):
        load_catalog(str(root))


def test_every_table_file_is_shipped():
    assert sorted(p.stem for p in DATA_DIR.glob("*.json")) == sorted(TABLES)
