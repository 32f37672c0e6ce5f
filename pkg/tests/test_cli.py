import json
import subprocess
import sys

import pytest

from su3bethe import cli, report


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_spectrum_fundamental_all_routes(capsys):
    assert run("spectrum", 1, 0, "--bethe", "--oracle") == 0
    out = capsys.readouterr().out
    assert "L=1" in out and "y: 5/64" in out
    assert "oracle pass, bethe pass" in out


def test_spectrum_empty_sector(capsys):
    assert run("spectrum", 2, 2, 1) == 0
    assert "sector is empty" in capsys.readouterr().out


def test_spectrum_trivial(capsys):
    assert run("spectrum", 0, 0, "--json") == 0
    doc = json.loads(capsys.readouterr().out)
    (sec,) = doc["sectors"]
    assert (sec["lambda"], sec["mu"], sec["L"], sec["M"], sec["multiplicity"]) == (0, 0, 0, 0, 1)


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        run("spectrum", -1, 0)
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("frobnicate")
    assert exc.value.code == 2


def test_table1(capsys):
    assert run("table1") == 0
    assert "9/9 rows match" in capsys.readouterr().out


def test_verify_small(capsys):
    assert run("verify", 0, 0) == 0
    assert run("verify", 1, 0) == 0
    capsys.readouterr()
    # multi-L irreps: Omega takes a different value on each L block
    assert run("verify", 2, 2) == 3
    assert "scalar per L only" in capsys.readouterr().out
    assert run("verify", 2, 2, "--omega-blockwise") == 0


def test_export_json_roundtrip(tmp_path):
    path = tmp_path / "r.json"
    assert run("export", 1, 0, "--bethe", "-o", path) == 0
    text = path.read_text(encoding="utf-8")
    doc = json.loads(text)
    assert doc["schema_version"] == 1
    (sec,) = doc["sectors"]
    assert sec["y_eigenvalues"] == [{"exact": "5/64", "approx": "0.078125"}]
    back = report.from_json(text)
    assert report.to_json(back) == text
    assert back[0].bethe_solutions[0].y_exact == "5/64"


def test_export_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("export", 2, 2, "--bethe", "--oracle", "-o", a) == 0
    assert run("export", 2, 2, "--bethe", "--oracle", "--jobs", 2, "-o", b) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert [s["L"] for s in doc["sectors"]] == [0, 2, 3, 4]
    ys = [e["exact"] for e in doc["sectors"][1]["y_eigenvalues"]]
    assert ys == ["-99/64", "29/64"]


def test_export_csv_trivial(tmp_path):
    path = tmp_path / "t.csv"
    assert run("export", 0, 0, "--format", "csv", "-o", path) == 0
    text = path.read_bytes().decode("utf-8")
    assert "\r" not in text
    lines = text.splitlines()
    assert lines[0] == "lambda,mu,L,M,alpha_count,route,value_exact,value_decimal"
    rows = report.read_csv(text)
    assert [r["route"] for r in rows] == ["bm_x", "bm_y"]
    assert rows[1]["value_exact"] == "-3/64"


def test_export_io_error(tmp_path):
    assert run("export", 1, 0, "-o", tmp_path / "missing" / "x.json") == 4


def test_bethe_command(capsys):
    assert run("bethe", 2, 1, 1) == 0
    out = capsys.readouterr().out
    assert "y = 31/192" in out


def test_report_rejects_wrong_length():
    with pytest.raises(ValueError):
        report.SectorReport(1, 0, 1, 0, 1, [], [])


def test_unknown_schema_version():
    with pytest.raises(ValueError):
        report.from_json('{"schema_version": 2, "sectors": []}')


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "su3bethe", "spectrum", "2", "1", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "y: -35/64" in proc.stdout
