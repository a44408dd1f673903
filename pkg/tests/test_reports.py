import json
import math

from reports import CSV_COLUMNS, Report, ReportRow, render_csv, render_json


def sample_report():
    report = Report(command="gamma", inputs={"points": [0.5 + 0j], "terms": 10})
    report.rows.append(ReportRow.check("gamma(0.5)", 1.7724538509055159, 3.1e-7, 1e-5, 1.772453850905516))
    report.rows.append(ReportRow.value("info", 2 + 1j))
    return report


def test_pass_only_counts_checked_rows():
    report = sample_report()
    assert report.passed
    report.rows.append(ReportRow.check("bad", 1.0, 0.5, 0.1))
    assert not report.passed
    assert ReportRow.flag("holds", True).passed
    assert not ReportRow.flag("fails", False).passed


def test_json_is_canonical():
    text = render_json(sample_report())
    payload = json.loads(text)
    assert json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == text
    assert payload["pass"] is True
    assert payload["rows"][0]["pass"] is True
    assert payload["rows"][0]["re"] == float("%.15g" % 1.7724538509055159)
    assert payload["inputs"]["points"] == [{"re": 0.5, "im": 0.0}]


def test_non_finite_values_become_strings():
    report = Report(command="regdet")
    report.rows.append(ReportRow.value("tail", math.inf))
    payload = json.loads(render_json(report))
    assert payload["rows"][0]["re"] == "inf"


def test_extend_prefixes_labels():
    outer = Report(command="verify-all")
    outer.extend(sample_report())
    assert [row.label for row in outer.rows] == ["gamma/gamma(0.5)", "gamma/info"]


def test_csv_columns():
    lines = render_csv(sample_report()).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 3
    assert lines[1].startswith("gamma(0.5),1.77245385090552,0,")
