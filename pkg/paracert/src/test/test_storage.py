import json
from fractions import Fraction

import pytest

from exceptions import StorageError, UsageError, ValidationError
from storage import (
    FORMATS,
    TOOL_VERSION,
    CatalogRow,
    Report,
    ReportStorage,
    emit_report,
    fraction_text,
    load_report,
)


@pytest.fixture
def catalog_report():
    rows = [
        CatalogRow(0, ("0", "0"), "0", "trivial", "0", 0),
        CatalogRow(4, ("1", "-1"), "1/2", "root_found", "1/2", 1),
        CatalogRow(5, ("1", "0"), "3/4", "excluded_modz", None, 2),
    ]
    return Report(
        command="catalog",
        meta={"type": "B2", "rank": 2, "k": 2, "t": 1},
        rows=[r.to_dict() for r in rows],
        tallies={"trivial": 1, "root_found": 1, "excluded_modz": 1},
        checks={"weight_classes": {Fraction(1, 2): 1}},
    )


def test_fraction_text():
    assert fraction_text(Fraction(2, 3)) == "2/3"
    assert fraction_text(Fraction(4, 2)) == "2"
    assert fraction_text(None) is None


def test_report_dict_has_meta(catalog_report):
    data = catalog_report.to_dict()
    assert data["meta"]["tool_version"] == TOOL_VERSION
    assert data["meta"]["command"] == "catalog"
    assert data["checks"] == {"weight_classes": {"1/2": 1}}
    assert data["rows"][1]["rep"] == ["1", "-1"]


def test_missing_meta_defaults_to_null():
    data = Report(command="verify hamming").to_dict()
    assert data["meta"]["type"] is None
    assert data["meta"]["k"] is None


def test_json_round_trip(catalog_report, tmp_path):
    """JSON output is validated, written and read back unchanged."""
    storage = ReportStorage(tmp_path)
    path = storage.store(emit_report(catalog_report, "json"), "out/catalog.json")
    assert path == tmp_path / "out" / "catalog.json"

    loaded = load_report(path)
    assert loaded.command == "catalog"
    assert loaded.rows == catalog_report.to_dict()["rows"]
    assert loaded.tallies == catalog_report.tallies


def test_json_is_deterministic(catalog_report):
    first = emit_report(catalog_report, "json")
    assert first == emit_report(catalog_report, "json")
    assert json.loads(first)["meta"]["k"] == 2


def test_table_rendering(catalog_report):
    catalog_report.banners = ["simple-current list incomplete for (E8,2)"]
    text = emit_report(catalog_report, "table").decode("utf-8")
    lines = text.splitlines()
    assert lines[0] == "simple-current list incomplete for (E8,2)"
    assert lines[1] == "command=catalog type=B2 k=2 t=1"
    assert "1 -1" in text
    assert "tallies: excluded_modz=1, root_found=1, trivial=1" in text


def test_csv_rendering(catalog_report):
    text = emit_report(catalog_report, "csv").decode("utf-8")
    lines = text.splitlines()
    assert lines[0] == "coset_id,rep,weight_class,tag,rho,orbit_id"
    assert lines[2] == "4,1 -1,1/2,root_found,1/2,1"
    assert len(lines) == 4


def test_columns_override():
    report = Report(command="roots", rows=[{"b": 2, "a": 1}], columns=["a", "b"])
    assert list(report.frame().columns) == ["a", "b"]


def test_unknown_format(catalog_report):
    assert "xml" not in FORMATS
    with pytest.raises(UsageError, match="unknown report format"):
        emit_report(catalog_report, "xml")


def test_invalid_json_report_rejected():
    report = Report(command="catalog", rows=[{"coset_id": 0}])
    with pytest.raises(ValidationError):
        emit_report(report, "json")


def test_load_errors(tmp_path):
    with pytest.raises(StorageError):
        load_report(tmp_path / "missing.json")

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(StorageError):
        load_report(broken)

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"meta": {}, "rows": [], "tallies": {}}), encoding="utf-8")
    with pytest.raises(ValidationError):
        load_report(wrong)


def test_store_failure(tmp_path, mocker):
    storage = ReportStorage(tmp_path)
    mocker.patch("pathlib.Path.write_bytes", side_effect=OSError("disk full"))
    with pytest.raises(StorageError, match="Failed to write report"):
        storage.store(b"data", "report.txt")


def test_absolute_paths_are_kept(tmp_path):
    storage = ReportStorage(tmp_path / "base")
    target = tmp_path / "elsewhere.txt"
    assert storage.resolve(target) == target
