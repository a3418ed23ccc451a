import json

import pytest

from rdqm.api.schemas import CheckRecord, RecordStatus, ReportDocument, RunConfig
from rdqm.core.exceptions import InvalidInput
from rdqm.services.report_writer import report_digest, save_report
from run import main, parse_indices, parse_pairs


def _load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def test_parse_helpers():
    assert parse_pairs("q=1/2, a=3") == {"q": "1/2", "a": "3"}
    assert parse_pairs(None) == {}
    assert parse_indices("0,2,3") == [0, 2, 3]
    with pytest.raises(InvalidInput):
        parse_pairs("q")
    with pytest.raises(InvalidInput):
        parse_indices("1,x")


def test_verify_krawtchouk_trivial_identity(tmp_path):
    out = tmp_path / "reports" / "k.json"
    code = main([
        "verify", "--family", "k", "--params", "p=1/2", "--n", "4",
        "--dset", "0", "--caln", "0", "--out", str(out),
    ])
    assert code == 0
    report = _load(out)
    assert report["schema"] == 1
    assert report["summary"]["failed"] == 0
    (record,) = report["records"]
    assert record["id"] == "identity/k/i/M1/D=0/N=0"
    assert record["status"] == "Proportional"
    assert record["ratio"] == "1"
    assert record["params"]["p"] == "1/2"


def test_bare_filename_goes_to_output_dir(isolated_settings):
    code = main(["verify", "--family", "k", "--dset", "0", "--caln", "0", "--out", "k.json"])
    assert code == 0
    assert _load(f"{isolated_settings.output_dir}/k.json")["records"]


def test_q_racah_verify_reports_constant(tmp_path):
    out = tmp_path / "qr.json"
    code = main([
        "verify", "--family", "qr", "--params", "q=1/2,a=1/5000,b=1/3,d=1/10", "--n", "5",
        "--dset", "1,2", "--caln", "3", "--out", str(out),
    ])
    assert code == 0
    (record,) = _load(out)["records"]
    assert record["details"]["constant_A_matches"] is True
    assert record["details"]["constant_A"] == record["ratio"]


@pytest.mark.parametrize("argv", [
    ["verify", "--family", "k", "--params", "p=1/0", "--n", "4", "--dset", "0", "--caln", "0"],
    ["verify", "--family", "wilson", "--dset", "0", "--caln", "0"],
    ["verify", "--family", "k", "--dset", "0"],
    ["verify", "--family", "k", "--dset", "2", "--caln", "1"],
    ["verify", "--family", "k", "--twist", "iii", "--dset", "0", "--caln", "0"],
    ["families", "--family", "k", "--n", "3"],
    ["suite", "--only", "color=red"],
    ["darboux", "--family", "c"],
    ["verify", "--precision", "8", "--family", "k", "--dset", "0", "--caln", "0"],
    ["explode"],
])
def test_usage_errors_exit_two(argv):
    assert main(argv) == 2


def test_families_command_filters_by_twist(tmp_path):
    out = tmp_path / "k.json"
    assert main(["families", "--family", "k", "--twist", "ii", "--out", str(out)]) == 0
    ids = [record["id"] for record in _load(out)["records"]]
    assert "twist/k/ii" in ids
    assert "twist/k/i" not in ids
    assert "family/k/safe" in ids


def test_darboux_command(tmp_path):
    out = tmp_path / "darboux.json"
    assert main(["darboux", "--dset", "1", "--out", str(out)]) == 0
    ids = {record["id"] for record in _load(out)["records"]}
    assert "darboux/qr/i/spectrum/d1=1" in ids
    assert "darboux/qr/i/deletion/l=1" in ids


def test_suite_filtered_by_family(tmp_path):
    out = tmp_path / "suite.json"
    assert main(["suite", "--only", "family=c", "--out", str(out)]) == 0
    report = _load(out)
    ids = [record["id"] for record in report["records"]]
    assert ids == sorted(ids)
    assert "limit/m->c" in ids
    assert all(record["family"] == "c" for record in report["records"])
    assert report["summary"]["passed"] > 0


def _record(duration):
    return CheckRecord(
        id="identity/k/i/M1/D=0/N=0",
        kind="identity",
        family="k",
        status=RecordStatus.PROPORTIONAL,
        ratio="1",
        duration_ms=duration,
    )


def test_digest_ignores_durations():
    config = RunConfig(command="verify", family="k", dset=[0], caln=0)
    first = ReportDocument.assemble("rdqm", "1.0.0", config, [_record(1.5)])
    second = ReportDocument.assemble("rdqm", "1.0.0", config, [_record(42.0)])
    assert report_digest(first) == report_digest(second)
    assert first.exit_code == 0


def test_failing_record_sets_exit_code(capsys):
    config = RunConfig(command="verify", family="k", dset=[0], caln=0)
    failing = _record(1.0).model_copy(update={"status": RecordStatus.MISMATCH})
    doc = ReportDocument.assemble("rdqm", "1.0.0", config, [failing])
    assert doc.exit_code == 1
    assert doc.failing_records() == [failing]
    assert save_report(doc, "-") is None
    assert json.loads(capsys.readouterr().out)["summary"]["failed"] == 1


def test_default_suite_passes(tmp_path):
    out = tmp_path / "suite.json"
    assert main(["suite", "--out", str(out)]) == 0
    report = _load(out)
    assert report["summary"]["failed"] == 0
    ids = {record["id"] for record in report["records"]}
    assert "identity/ha/i/M2/D=1,2/N=3" in ids
    assert "identity/ha/i/alt2/M2/D=1,2/N=3" in ids
    assert "identity/qr/i/alt1/M3/D=1,2,3/N=4" in ids
