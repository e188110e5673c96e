import json
import subprocess
import sys

import pytest

from cwquot.classify import default_constellation
from cwquot.cli import EXIT_USAGE, SCHEMA, main, run
from cwquot.cwgeom import CWParams
from cwquot.numberfields import f6_example
from cwquot.report import report

from helpers import acceptance_specs


def _doc(argv):
    text, result = run(argv)
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA and doc["command"] == argv[0] and doc["status"] == result.status
    return doc, result


def test_classify_imaginary_yes_with_witness():
    doc, res = _doc(["classify", "--type", "imaginary", "--mu", "1,2,3"])
    assert res.status == "ok" and res.exit_code == 0
    assert doc["payload"]["result"]["verdict"] == "yes" and "witness" in doc["payload"]["result"]


def test_classify_real_no():
    doc, res = _doc(["classify", "--type", "real", "--lambda", "1,2"])
    assert res.exit_code == 2
    assert any("trace condition" in r for r in doc["payload"]["result"]["reasons"])


def test_classify_mixed_unknown():
    _, res = _doc(["classify", "--lambda", "1,1", "--mu", "1,1"])
    assert res.exit_code == 3


def test_build_then_verify(tmp_path):
    out = tmp_path / "cert.json"
    doc, res = _doc(["build", "--poly", "x^2-3x+1", "--out", str(out)])
    assert res.exit_code == 0 and out.exists()
    doc, res = _doc(["verify", "--cert", str(out)])
    assert res.exit_code == 0 and doc["payload"]["ok"]


def test_verify_bad_cert(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"V": []}))
    doc, res = _doc(["verify", "--cert", str(bad)])
    assert res.status == "no" and doc["payload"]["reasons"]
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    _, res = _doc(["verify", "--cert", str(garbage)])
    assert res.exit_code == 1


def test_verify_cwfalsch_reports_reason(tmp_path):
    from cwquot.classify import cwfalsch_certificate

    _, cert = cwfalsch_certificate((1, 2, 3))
    path = tmp_path / "falsch.json"
    path.write_text(json.dumps(cert.to_json()))
    doc, res = _doc(["verify", "--cert", str(path)])
    assert res.exit_code == 2 and doc["payload"]["reasons"]


def test_pell_salem_admissible_special():
    doc, _ = _doc(["pell", "--d", "5"])
    assert doc["status"] == "ok"
    doc, _ = _doc(["salem", "--degree", "4", "--bound", "3"])
    assert doc["status"] == "ok"
    _, res = _doc(["admissible", "--k", "1,2,3"])
    assert res.status == "ok"
    _, res = _doc(["admissible", "--k", "1,2"])
    assert res.status == "no"
    _, res = _doc(["special", "--constellation", "I|I|I", "--k", "1,2,3"])
    assert res.status == "ok"


def test_compose_and_flags(tmp_path):
    specs = acceptance_specs()
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(specs["real"].to_json()))
    b.write_text(json.dumps(specs["imaginary"].to_json()))
    doc, res = _doc(["compose", str(a), str(b)])
    assert res.status == "ok"
    g = tmp_path / "g.json"
    g.write_text(json.dumps(specs["group_manifold"].to_json()))
    doc, _ = _doc(["flags", "--spec", str(g)])
    assert doc["payload"]["group_manifold"] is True


def test_json_is_deterministic(tmp_path):
    argv = ["classify", "--type", "imaginary", "--mu", "1,3/2,5/2"]
    assert run(argv)[0] == run(argv)[0]
    cmd = [sys.executable, "-m", "cwquot.cli", "build", "--poly", "(x-1)^3", "--constellation", "I|I|I", "--k", "1,2,3"]
    outs = {subprocess.run(cmd, capture_output=True, text=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1


def test_usage_errors(capsys):
    for argv in ([], ["report"], ["classify"], ["frobnicate"], ["admissible", "--k", "1,x"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == EXIT_USAGE
    capsys.readouterr()


def test_f6_report():
    text = report(default_constellation(f6_example()))
    assert "roots on the unit circle: 4" in text
    assert "Salem polynomial: True" in text


def test_group_manifold_report():
    text = report(acceptance_specs()["group_manifold"])
    assert "group_manifold: True" in text
    text = report(CWParams([], [1, 1]))
    assert "group_manifold: True" in text


def test_report_json_flag():
    doc, res = _doc(["report", "--mu", "1,1", "--json"])
    assert res.status == "ok" and doc["payload"]["markdown"].startswith("# Report")
    text, _ = run(["report", "--mu", "1,1"])
    assert text.startswith("# Report")
