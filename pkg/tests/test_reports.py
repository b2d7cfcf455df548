import json
import os

import pytest

from classification.classify import enumerate_types
from errors import ArgumentError
from lattice.picard import Surface
from moduli.walls import first_wall_events
from numtheory.contfrac import convergents
from reports.generator import (
    ReportGenerator,
    classify_report,
    component_text,
    convergents_report,
    orbit_summary,
    walls_report,
)


def test_component_text():
    assert component_text(5, 1) == "P^5"
    assert component_text(8, 25) == "25 copies of P^8"


def test_orbit_summary():
    assert [orbit_summary(o) for o in enumerate_types(Surface(16), 1, 2)] == ["O", "E_i (16 copies)"]
    assert [orbit_summary(o) for o in enumerate_types(Surface(25), 2, 2)] == ["H-E_i (25 copies)"]


def test_walls_markdown_omits_emptiness_boundary():
    s = Surface(10, assume_shgh=True)
    report = walls_report(s, 2, first_wall_events(s, 2, 1))
    text = ReportGenerator().to_markdown(report)
    assert text.splitlines()[:3] == [
        "| D | t_D | New component |",
        "|---|---|---|",
        "| 57H-18E | 370/117 | P^8 |",
    ]
    assert "10/3" not in text
    assert json.loads(ReportGenerator().to_json(report))["events"][0]["kind"] == "emptiness_boundary"


def test_thirteen_point_table_has_type_column():
    s = Surface(13)
    text = ReportGenerator().to_markdown(walls_report(s, 2, first_wall_events(s, 2, 3)))
    assert "| D | t_D | New component | Type |" in text
    assert "| E_1 | 11/3 | none; previous P^2 blown up 13 times | IV |" in text
    assert "| 15H-5E_1-4E_{2,...,13} | 119/33 | 13 copies of P^10 | V |" in text


def test_square_classification_has_pairing_column():
    s = Surface(25)
    text = ReportGenerator().to_markdown(classify_report(s, 2, enumerate_types(s, 2, 2)))
    assert "| D | copies | chi | t_D | 2B.D |" in text
    assert "| H-E_1 | 25 | 2 | 27/5 | 8 |" in text


def test_csv_rendering():
    report = convergents_report(10, convergents(10, 3))
    lines = ReportGenerator().to_csv(report).splitlines()
    assert lines == ["k,p_k,q_k,p_k/q_k", "1,3,1,3/1", "2,19,6,19/6", "3,117,37,117/37"]


def test_unknown_format():
    with pytest.raises(ArgumentError):
        ReportGenerator().render(convergents_report(10, convergents(10, 1)), "xml")


def test_export_writes_timestamped_file(output_dir):
    report = convergents_report(10, convergents(10, 7))
    path = ReportGenerator().export(report, "json")
    assert os.path.dirname(path) == str(output_dir)
    assert os.path.basename(path).startswith("convergents_report_")
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    assert data["convergents"][-1] == {"k": 7, "p": "168717", "q": "53353"}
