import io
import json
import subprocess
import sys

import pytest

from kron22.chambers import WALL_RULES, ChamberCatalog
from kron22.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (("g", "2,2", "2,2", "2,2"), "1"),
    (("g", "2", "1,1", "1,1"), "1"),
    (("g", "1,1", "1,1", "1,1"), "0"),
    (("g", "1,1,1,1", "3,1", "3,1"), "0"),
    (("gbar", "13", "8", "10", "6"), "6"),
    (("gbar", "0", "0", "0", "0"), "1"),
    (("gbar", "1", "0", "0", "0"), "0"),
])
def test_point_queries(argv, expected):
    for engine in ("count", "chamber", "oracle"):
        code, text = run(*argv, "--engine", engine)
        assert code == 0 and text.splitlines()[0] == expected


def test_explain_and_json():
    code, text = run("g", "2,2", "2,2", "2,2", "--explain")
    assert code == 0 and "gbar(2, 2, 2, 0) = 2" in text and "chambers:" in text
    code, text = run("g", "2,2", "2,2", "2,2", "--format", "json", "--explain")
    doc = json.loads(text)
    assert doc["schema_version"] == 1 and doc["value"] == 1 and [t["value"] for t in doc["terms"]] == [2, 1, 0]


def test_user_errors(capsys):
    assert run("g", "3", "2", "2")[0] == 1
    assert "|mu|=2 != |lambda|=3" in capsys.readouterr().err
    assert run("g", "1,2", "3", "3")[0] == 1
    assert run("gbar", "1", "1", "0", "1")[0] == 1
    assert run("verify", "--box", "5:2")[0] == 1
    assert run("verify", "--box", "25")[0] == 1
    assert run("g", "8,7,6", "7,7,7", "9,6,6", "--engine", "oracle")[0] == 1
    assert run("stretch", "4", "3", "0", "0", "0")[0] == 1


def test_verify_clean():
    code, text = run("verify", "--box", "6")
    lines = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and len(lines) == 1
    assert lines[0]["mismatches"] == 0 and lines[0]["schema_version"] == 1


def test_verify_is_deterministic():
    assert run("verify", "--box", "3:9", "--workers", "2") == run("verify", "--box", "3:9")


def test_verify_detects_corrupted_catalog(tmp_path):
    path = tmp_path / "fan.json"
    path.write_text(ChamberCatalog(table={**WALL_RULES, "345": "half"}).dumps())
    code, text = run("verify", "--box", "10", "--engines", "count,chamber", "--catalog", str(path))
    lines = [json.loads(line) for line in text.splitlines()]
    assert code == 2
    assert lines[-1]["mismatches"] == len(lines) - 1 > 0


def test_export_fan(tmp_path):
    path = tmp_path / "fan.json"
    assert run("export-fan", "-o", str(path))[0] == 0
    doc = json.loads(path.read_text())
    assert len(doc["chambers"]) == 26
    assert ChamberCatalog.from_json(doc).dumps() == path.read_text()
    assert run("export-fan")[1] == path.read_text()


def test_counterexamples(tmp_path):
    path = tmp_path / "certs.json"
    code, text = run("counterexamples", "--box", "12", "-o", str(path))
    assert code == 0 and "(12, 5, 6, 4, 2)" in text
    doc = json.loads(path.read_text())
    assert doc["kind"] == "sh-counterexamples" and len(doc["certificates"]) == 2
    assert all(c["systems"] == ["S5"] for c in doc["certificates"])
    code, text = run("counterexamples", "--box", "8", "--format", "json")
    assert json.loads(text)["certificates"] == []


def test_stretch():
    code, text = run("stretch", "12", "5", "6", "4", "2", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and [v for _, v in doc["samples"]][:4] == [0, 2, 1, 3]
    assert "fit" in doc


def test_cache_dir_flag(tmp_path):
    code, _ = run("g", "3,2,1", "3,3", "4,2", "--engine", "oracle", "--cache-dir", str(tmp_path))
    assert code == 0 and (tmp_path / "chartable-v1-n6.json").exists()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kron22", "gbar", "2", "2", "2", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
