import json
import shutil

import pytest

from quadthurston.fixtures import DATA_DIR, FixtureError, UnknownRow, load_fixtures, load_recursions


def copy_data(tmp_path):
    target = tmp_path / "data"
    shutil.copytree(DATA_DIR, target)
    return target


def test_counts(bundle):
    assert len(bundle.recursions) == 14
    assert len(bundle.obstructed) == 8
    assert len(bundle.gmaps) == 7


def test_obstructed_families_are_row_family_pairs(bundle):
    first = bundle.obstructed[0]
    assert (first.gmap, first.slot, first.family) == ("1m2z-sq", "0", "a b^n")
    assert bundle.row(first.row).id == "q4-1m2z-sq"


def test_row_lookup(bundle):
    assert bundle.row(7).id == "q4-z-sq"
    assert bundle.row("q4-z-sq").row == 7
    assert bundle.row("z-sq@formal").row == 7
    with pytest.raises(UnknownRow):
        bundle.row("nope")


def test_formal_row(bundle):
    assert bundle.row("q4-z-sq").formal
    assert not bundle.row(1).formal


def test_empty_file_is_schema_error(tmp_path):
    path = tmp_path / "recursions.json"
    path.write_text("")
    with pytest.raises(FixtureError, match="empty file"):
        load_recursions(path)


def test_json_error_reports_line(tmp_path):
    path = tmp_path / "recursions.json"
    path.write_text('{\n  "records": [\n  oops\n]}')
    with pytest.raises(FixtureError, match="line 3"):
        load_recursions(path)


def test_missing_field_reports_record(tmp_path):
    root = copy_data(tmp_path)
    data = json.loads((root / "recursions.json").read_text())
    del data["records"][2]["beta"]
    (root / "recursions.json").write_text(json.dumps(data))
    with pytest.raises(FixtureError, match="record 3: missing field"):
        load_fixtures(root)


def test_bad_word_reported(tmp_path):
    root = copy_data(tmp_path)
    data = json.loads((root / "obstructed.json").read_text())
    data["records"][0]["family"] = "a c^n"
    (root / "obstructed.json").write_text(json.dumps(data))
    with pytest.raises(FixtureError, match="record 1"):
        load_fixtures(root)


def test_dangling_row_reference(tmp_path):
    root = copy_data(tmp_path)
    data = json.loads((root / "obstructed.json").read_text())
    data["records"][0]["row"] = 99
    (root / "obstructed.json").write_text(json.dumps(data))
    with pytest.raises(FixtureError, match="row 99"):
        load_fixtures(root)


def test_deviation_file_is_optional(tmp_path):
    root = copy_data(tmp_path)
    (root / "deviations.json").unlink()
    assert load_fixtures(root).deviations == {}
