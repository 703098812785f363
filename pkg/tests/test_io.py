import json

import pytest

from filtered_cones.campaign import run_campaign
from filtered_cones.complex import validate_complex, validate_map
from filtered_cones.config import CampaignConfig
from filtered_cones.exceptions import ParseError
from filtered_cones.fixtures import interval
from filtered_cones.invariants import profile
from filtered_cones.io import (
    campaign_to_dict,
    dumps,
    parse_complex,
    parse_map,
    parse_reassoc,
    serialize_barcode,
    serialize_complex,
    to_jsonable,
    write_json,
)
from filtered_cones.models import FilteredComplex
from filtered_cones.persistence import barcode


def test_parse_fixture_files(fixtures_dir):
    C = parse_complex(fixtures_dir / "interval_1_4.json")
    assert C.name == "I(1,4)"
    assert C.same_structure(interval(1, 4))
    assert serialize_barcode(barcode(C)) == [[1, 4]]


def test_invalid_complex_still_loads(fixtures_dir):
    C = parse_complex(fixtures_dir / "bad_d2.json")
    assert not validate_complex(C).ok


def test_canonical_form_is_stable(fixtures_dir):
    C = parse_complex(fixtures_dir / "interval_1_4.json")
    assert serialize_complex(C) == {
        "name": "I(1,4)",
        "generators": [{"id": "x", "filtration": 1}, {"id": "y", "filtration": 4}],
        "boundary": {"y": ["x"]},
    }
    again = parse_complex(json.loads(dumps(C)))
    assert dumps(again) == dumps(C)


def test_unknown_boundary_id_is_named():
    doc = {"name": "bad", "generators": [{"id": "x", "filtration": 0}], "boundary": {"x": ["z"]}}
    with pytest.raises(ParseError, match="'z'"):
        parse_complex(doc)


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "oops",\n  "generators": [\n}', encoding="utf-8")
    with pytest.raises(ParseError, match="line"):
        parse_complex(path)


def test_top_level_must_be_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ParseError, match="JSON object"):
        parse_complex(path)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        parse_complex(tmp_path / "nope.json")


def test_map_target_resolved_next_to_map_file(fixtures_dir):
    f = parse_map(fixtures_dir / "p1_to_p0.json")
    assert f.source.name == "P(1)"
    assert f.target.name == "P(0)"
    assert f.array.tolist() == [[1]]
    assert validate_map(f).ok


def test_map_with_unknown_image_id():
    doc = {
        "source": {"name": "A", "generators": [{"id": "a", "filtration": 0}]},
        "target": {"name": "B", "generators": [{"id": "b", "filtration": 0}]},
        "matrix": {"a": ["c"]},
    }
    with pytest.raises(ParseError, match="'c'"):
        parse_map(doc)


def test_reassoc_document():
    doc = {
        "E": {"name": "E", "generators": [{"id": "e", "filtration": 1}]},
        "F": {"name": "F", "generators": [{"id": "u", "filtration": 0}]},
        "G": {"name": "G", "generators": [{"id": "v", "filtration": 0}]},
        "f": {"shift": 0, "matrix": {"u": ["v"]}},
        "g": {"shift": 0, "matrix": {"e": ["v"]}},
    }
    E, inner, g, s_g = parse_reassoc(doc)
    assert E.ids == ("e",)
    assert inner.shift == 0.0
    assert g.target.ids == ("a/u", "v")
    assert validate_map(g).ok
    assert s_g == 0.0


def test_infinities_render_as_strings():
    assert to_jsonable(profile(interval(1, 4))) == {
        "sigma_plus": "-inf",
        "sigma_minus": "inf",
        "rho": "-inf",
        "beta": 3,
    }


def test_campaign_document():
    report = run_campaign(CampaignConfig(suite="oracle", count=3, seed=0))
    doc = campaign_to_dict(report)
    assert doc["suite"] == "oracle"
    assert doc["summary"]["instances"] == report.total_instances
    assert doc["status"] == report.status.value
    json.dumps(doc)


def test_write_json_to_stdout_and_file(tmp_path, capsys):
    write_json({"x": float("inf")}, "-")
    assert json.loads(capsys.readouterr().out) == {"x": "inf"}
    target = tmp_path / "out.json"
    write_json([1.5], target)
    assert target.read_text(encoding="utf-8") == "[\n  1.5\n]\n"


def test_small_and_fractional_filtrations_survive_a_round_trip():
    C = FilteredComplex.build("tiny", [("x", 1e-10), ("y", 2.5), ("z", 1 / 3)], {"y": ["x"]})
    text = dumps(C)
    assert '"filtration": 2.5' in text
    again = parse_complex(json.loads(text))
    assert again.same_structure(C)
    assert again.filtration_of("x") == 1e-10
    assert again.filtration_of("z") == 1 / 3
