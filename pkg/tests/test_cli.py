import csv
import io
import json

import pytest

from zdc.cli import json_text, main
from zdc.compare import TABLE1_POINTS
from zdc.pipeline import assemble_row, default_schedule


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constants_json_round_trip(capsys):
    code, out, _ = run(capsys, "constants", "--row", "0", "--format", "json")
    assert code == 0
    row = default_schedule()[0]
    assert json.loads(out) == [assemble_row(row.spec, row.params).record()]


def test_json_text_keeps_17_digits():
    assert json_text(0.1) == "0.10000000000000001"
    assert json.loads(json_text([1.0, 1e300, 2])) == [1.0, 1e300, 2]


def test_constants_explicit_flags_match_row(capsys):
    code, out, _ = run(capsys, "constants", "--t0", "3e12", "--t1", "exp(29)", "--alpha0", "0.9927",
                       "--u", "2.1781287", "--v", "4.4744028", "--w", "0.4808273", "--x", "7.0798370",
                       "--format", "json")
    assert code == 0
    _, ref, _ = run(capsys, "constants", "--row", "0", "--format", "json")
    assert json.loads(out)[0]["C"] == json.loads(ref)[0]["C"]


def test_constants_below_riemann_height(capsys):
    code, _, err = run(capsys, "constants", "--t0", "1e12", "--t1", "exp(29)", "--alpha0", "0.9927",
                       "--u", "2.1", "--v", "4.4", "--w", "0.4", "--x", "7.0")
    assert code == 2
    assert "T0>=3e12" in err


def test_constants_infeasible_params(capsys):
    code, _, err = run(capsys, "constants", "--t0", "3e12", "--t1", "exp(29)", "--alpha0", "0.9927",
                       "--u", "2.1", "--v", "4.4", "--w", "0.4", "--x", "6.0")
    assert code == 2 and "u+v<x" in err


def test_constants_missing_flags(capsys):
    code, _, err = run(capsys, "constants", "--t0", "3e12")
    assert code == 2 and "--row" in err


def test_uniform_row_record(capsys):
    code, out, _ = run(capsys, "constants", "--row", "38", "--format", "csv")
    assert code == 0
    rec = next(csv.DictReader(io.StringIO(out)))
    assert rec["B"] == "1.448" and rec["mode"] == "literal"


def test_table_cb_csv(capsys):
    code, out, _ = run(capsys, "table", "--which", "CB", "--format", "csv")
    assert code == 0
    assert out.endswith("\n")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:4] == ["row", "t0_log", "t1_log", "alpha0"]
    assert len(rows) == 1 + 39
    for cell in (c for r in rows[1:] for c in r):
        assert "," not in cell  # no thousands grouping
    assert rows[1][0] == "0" and rows[1][1] == "3e12"


def test_table_c_within_policy(capsys):
    code, out, _ = run(capsys, "table", "--which", "c", "--format", "json")
    assert code == 0
    for rec in json.loads(out):
        if rec["c1_pub"] is None:
            continue
        assert abs(rec["c1_diff"]) <= 0.005
        for key in ("c2", "c3", "c4"):
            assert abs(rec[f"{key}_diff"]) <= 0.02
        assert abs(rec["c5_diff"]) <= 0.10


def test_table_all_markdown_order(capsys):
    code, out, _ = run(capsys, "table", "--which", "all", "--format", "markdown")
    assert code == 0
    headings = [line for line in out.splitlines() if line.startswith("### ")]
    assert [h.split()[-1] for h in headings] == ["B", "b2", "w", "d5", "c5"]


def test_verify_weights_only(capsys):
    code, out, _ = run(capsys, "verify", "--only", "weights", "--weight-cases", "2", "--format", "csv")
    assert code == 0
    items = [r["item"] for r in csv.DictReader(io.StringIO(out))]
    assert items and not any(i.startswith("J") for i in items)


def test_verify_integrals_reports_failing_caps(capsys):
    code, out, _ = run(capsys, "verify", "--only", "integrals", "--alpha0", "0.985", "--format", "json")
    status = {r["item"]: r["status"] for r in json.loads(out)}
    assert status["J2"] == "PASS" and status["J32 (coefficient of a^{27/164})"] == "PASS"
    assert status["J1 = J4"] == "FAIL"  # certified value 0.550 exceeds the printed 0.24113
    assert code == 1


def test_optimize_zero_iterations(capsys):
    code, out, _ = run(capsys, "optimize", "--row", "0", "--seed", "42", "--iters", "0", "--format", "json")
    assert code == 0
    rec = json.loads(out)[0]
    p = default_schedule()[0].params
    assert (rec["u"], rec["v"], rec["w"], rec["x"]) == (p.u, p.v, p.w, p.x)


def test_compare_without_constants(capsys, monkeypatch):
    monkeypatch.delenv("ZDC_KLN_FILE", raising=False)
    code, _, err = run(capsys, "compare")
    assert code == 2 and "external data" in err


def test_compare_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "compare", "--kln-file", str(tmp_path / "absent.csv"))
    assert code == 3


def test_compare_with_synthetic_constants(capsys, tmp_path):
    path = tmp_path / "kln.csv"
    path.write_text("sigma,C1,C2\n0.985,1e6,5e3\n")
    code, out, _ = run(capsys, "compare", "--kln-file", str(path), "--format", "json")
    report = json.loads(out)
    assert len(report["dominance"]) == 38 and len(report["improvement"]) == len(TABLE1_POINTS)
    assert code in (0, 1)


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "csv"}))
    _, out, _ = run(capsys, "constants", "--row", "0", "--config", str(cfg))
    assert out.startswith("t0_log,")
    _, out, _ = run(capsys, "constants", "--row", "0", "--config", str(cfg), "--format", "json")
    assert out.startswith("[{")


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    assert run(capsys, "constants", "--row", "0", "--config", str(cfg))[0] == 2
    assert run(capsys, "constants", "--row", "0", "--config", str(tmp_path / "none.json"))[0] == 3


def test_out_file(capsys, tmp_path):
    target = tmp_path / "cb.csv"
    code, out, _ = run(capsys, "table", "--which", "CB", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 40
    assert run(capsys, "table", "--which", "CB", "--out", str(tmp_path / "no" / "x.csv"))[0] == 3


def test_row_out_of_range(capsys):
    assert run(capsys, "constants", "--row", "39")[0] == 2
